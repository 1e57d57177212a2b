#pragma once

// Exact univariate and bivariate polynomials over the rationals.
//
// BiPoly is always read as a polynomial in (beta, t), t = alpha^2.

#include "stabwalls/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace stabwalls {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);  // low degree first
    static UniPoly constant(const Rational& c);
    static UniPoly x();

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int i) const;
    Rational leading() const;

    Rational operator()(const Rational& x) const;
    double eval_double(double x) const;

    UniPoly derivative() const;
    UniPoly monic() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rational& s, const UniPoly& a);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
    static UniPoly gcd(const UniPoly& a, const UniPoly& b);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Every distinct rational root, ascending. Throws IdenticallyZero on the zero polynomial.
std::vector<Rational> rational_roots(const UniPoly& p);

/// Disjoint isolating intervals (lo, hi], one per distinct real root, ascending.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& p);

class BiPoly {
public:
    using Key = std::pair<int, int>;  // (deg beta, deg t)

    BiPoly() = default;
    static BiPoly constant(const Rational& c);
    static BiPoly beta();
    static BiPoly t();
    static BiPoly monomial(int deg_beta, int deg_t, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }
    Rational coeff(int deg_beta, int deg_t) const;
    int degree_beta() const;
    int degree_t() const;
    int min_degree_beta() const;

    Rational operator()(const Rational& beta, const Rational& t) const;
    double eval_double(double beta, double t) const;

    /// Coefficient of t^k as a polynomial in beta.
    UniPoly t_coefficient(int k) const;
    /// Substitute beta, leaving a polynomial in t.
    UniPoly at_beta(const Rational& beta) const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const Rational& s, const BiPoly& a);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    /// Some r with a == r*b, when b != 0 and the two are proportional.
    static std::optional<Rational> ratio(const BiPoly& a, const BiPoly& b);

private:
    void add_term(const Key& k, const Rational& c);
    std::map<Key, Rational> terms_;
};

/// Resultant with respect to t, as a polynomial in beta.
UniPoly resultant_t(const BiPoly& f, const BiPoly& g);

}  // namespace stabwalls
