#include "stabwalls/rational.hpp"

#include <cctype>
#include <cstdio>

namespace stabwalls {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::VarietyMismatch: return "variety_mismatch";
        case ErrorCode::UnknownVariety: return "unknown_variety";
        case ErrorCode::UnsupportedVariety: return "unsupported_variety";
        case ErrorCode::IndexOutOfRange: return "index_out_of_range";
        case ErrorCode::NonIntegral: return "non_integral";
        case ErrorCode::NegativeEntries: return "negative_entries";
        case ErrorCode::Singular: return "singular_system";
        case ErrorCode::InvalidShift: return "invalid_shift";
        case ErrorCode::UnsupportedShape: return "unsupported_shape";
        case ErrorCode::DegenerateWindow: return "degenerate_window";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::ZeroCentralCharge: return "zero_central_charge";
        case ErrorCode::UnknownRegion: return "unknown_region";
        case ErrorCode::DependentVectors: return "dependent_vectors";
        case ErrorCode::ThetaMismatch: return "theta_mismatch";
        case ErrorCode::IdenticallyZero: return "identically_zero";
        case ErrorCode::MalformedRational: return "malformed_rational";
        case ErrorCode::Parse: return "parse_error";
        case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

namespace {

[[noreturn]] void malformed(std::string_view text) {
    throw Error(ErrorCode::MalformedRational, "malformed rational: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) malformed(whole);
    Integer z(std::string(s), 10);
    return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) malformed(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(s.substr(0, slash), text);
        Integer den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) malformed(text);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        Integer ez = parse_integer(exp_part, text);
        if (!ez.fits_slong_p() || abs(ez) > 4096) malformed(text);
        exponent = ez.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) malformed(text);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) malformed(text);
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) malformed(text);
        digits = std::string(s);
    }
    Integer mant(digits, 10);
    long scale = exponent - frac_len;
    Rational q;
    if (scale >= 0) {
        q = Rational(mant * pow10(static_cast<unsigned long>(scale)));
    } else {
        q = Rational(mant, pow10(static_cast<unsigned long>(-scale)));
        q.canonicalize();
    }
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
    // mpf keeps this exact enough for 12 digits and independent of libm.
    mpf_class f(q, 256);
    mp_exp_t exp = 0;
    if (f == 0) return "0";
    std::string mant = f.get_str(exp, 10, static_cast<size_t>(digits));
    bool negative = mant.front() == '-';
    if (negative) mant.erase(mant.begin());
    std::string out;
    long e = exp;
    if (e <= 0) {
        out = "0." + std::string(static_cast<size_t>(-e), '0') + mant;
    } else if (static_cast<size_t>(e) >= mant.size()) {
        out = mant + std::string(static_cast<size_t>(e) - mant.size(), '0');
    } else {
        out = mant.substr(0, static_cast<size_t>(e)) + "." + mant.substr(static_cast<size_t>(e));
    }
    return negative ? "-" + out : out;
}

Rational floor_of(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) return simplest_between(hi, lo);
    if (hi < 0) return Rational(-simplest_between(Rational(-hi), Rational(-lo)));
    if (lo <= 0) return Rational(0);
    Rational fl = floor_of(lo);
    if (fl == lo) return lo;
    if (fl < floor_of(hi)) return Rational(fl + 1);
    Rational inner = simplest_between(Rational(1 / (hi - fl)), Rational(1 / (lo - fl)));
    return Rational(fl + 1 / inner);
}

}  // namespace stabwalls
