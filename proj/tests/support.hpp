#pragma once

// Hand-rolled generators and independent closed-form oracles for the tests.

#include "stabwalls/varieties.hpp"
#include "stabwalls/stability.hpp"

#include <random>

namespace testing_support {

using stabwalls::ChernCharacter;
using stabwalls::Rational;
using stabwalls::VarietyPtr;

inline VarietyPtr p3() { return stabwalls::VarietyRegistry::builtin().find("p3"); }
inline VarietyPtr q3() { return stabwalls::VarietyRegistry::builtin().find("q3"); }

inline Rational q(long n, long d = 1) { return stabwalls::make_rational(n, d); }

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) {
        return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    /// num/den with |num| <= n, 1 <= den <= d.
    Rational rational(long n = 12, long d = 8) { return q(integer(-n, n), integer(1, d)); }
    Rational positive(long n = 12, long d = 8) { return q(integer(1, n), integer(1, d)); }
    ChernCharacter character(const VarietyPtr& v) {
        return ChernCharacter(v, rational(), rational(), rational(), rational());
    }
    /// Lattice-valid character.
    ChernCharacter lattice_character(const VarietyPtr& v) {
        Rational d(v->degree);
        return ChernCharacter(v, q(integer(-4, 4)) / d, q(integer(-6, 6)) / d, q(integer(-9, 9), 2),
                              q(integer(-12, 12), 6));
    }
    stabwalls::StabilityPoint point() { return {rational(6, 4), positive(8, 6), positive(4, 6)}; }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// chi(O(a), O(b)) on P^3 as the cubic polynomial in m = b - a.
inline Rational binomial_chi_p3(long a, long b) {
    Rational m(b - a);
    return (m + 1) * (m + 2) * (m + 3) / 6;
}

/// Hilbert polynomial of a quadric threefold in P^4.
inline Rational hilbert_quadric(long n) {
    Rational x(n);
    return (x + 1) * (x + 2) * (2 * x + 3) / 6;
}

/// e^{xH} on a variety of degree d, written out without the ring product.
inline ChernCharacter exp_closed(const VarietyPtr& v, const Rational& x) {
    Rational d(v->degree);
    return ChernCharacter(v, 1, x, d * x * x / 2, d * x * x * x / 6);
}

}  // namespace testing_support
