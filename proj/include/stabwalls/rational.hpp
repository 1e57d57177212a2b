#pragma once

// Exact rational scalars and the error type shared by every module.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabwalls {

using Rational = mpq_class;
using Integer = mpz_class;

enum class ErrorCode {
    VarietyMismatch,
    UnknownVariety,
    UnsupportedVariety,
    IndexOutOfRange,
    NonIntegral,
    NegativeEntries,
    Singular,
    InvalidShift,
    UnsupportedShape,
    DegenerateWindow,
    Precondition,
    ZeroCentralCharge,
    UnknownRegion,
    DependentVectors,
    ThetaMismatch,
    IdenticallyZero,
    MalformedRational,
    Parse,
    Io,
};

/// Stable machine-readable name, used in CLI error JSON.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Accepts `p/q`, integers and base-10 decimals (`-0.125`, `1e-3`) exactly.
Rational parse_rational(std::string_view text);

/// `p/q`, or `p` when the denominator is one.
std::string to_string(const Rational& q);

/// Decimal rendering with `digits` significant digits (for CSV/SVG only).
std::string to_decimal(const Rational& q, int digits = 12);

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

Rational floor_of(const Rational& q);

/// The rational with the smallest denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace stabwalls
