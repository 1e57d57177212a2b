#pragma once

// Tilt and Bridgeland central charges, slopes and numerical walls.
// Everything is evaluated in t = alpha^2 so it stays polynomial.

#include "stabwalls/polynomial.hpp"
#include "stabwalls/varieties.hpp"

#include <json.hpp>

namespace stabwalls {

struct StabilityPoint {
    Rational beta;
    Rational t;  // alpha^2 > 0
    Rational s;  // > 0

    /// Checks t > 0 and s > 0.
    static StabilityPoint make(Rational beta, Rational t, Rational s = make_rational(1, 3));
    std::string str() const;
};

struct TiltCharge {
    Rational re, im;
};

struct BridgelandCharge {
    Rational tau;  // -Re Z
    Rational rho;  //  Im Z
};

TiltCharge tilt_Z(const ChernCharacter& ch, const StabilityPoint& p);
Slope nu(const ChernCharacter& ch, const StabilityPoint& p);
BridgelandCharge bridgeland_Z(const ChernCharacter& ch, const StabilityPoint& p);
Slope lambda(const ChernCharacter& ch, const StabilityPoint& p);

/// tau and rho as polynomials in (beta, t) for fixed s.
BiPoly tau_poly(const ChernCharacter& ch, const Rational& s);
BiPoly rho_poly(const ChernCharacter& ch);

struct WallPolynomial {
    BiPoly poly;
    std::string label_e, label_f;

    bool identically_zero() const { return poly.is_zero(); }
    Rational operator()(const Rational& beta, const Rational& t) const { return poly(beta, t); }
    Rational at(const StabilityPoint& p) const { return poly(p.beta, p.t); }
};

/// tau(E) rho(F) - tau(F) rho(E).
WallPolynomial wall_poly(const ChernCharacter& e, const ChernCharacter& f, const Rational& s,
                         std::string label_e = "E", std::string label_f = "F");

enum class Side { Inside, On, Outside };
std::string_view side_name(Side s);
Side side_of(const Rational& value);
Side wall_side(const ChernCharacter& e, const ChernCharacter& f, const StabilityPoint& p);

struct CurveValues {
    Rational gamma;  // tau
    Rational theta;  // rho
};
CurveValues curve_values(const ChernCharacter& ch, const StabilityPoint& p);

/// t Delta + 4 (c2^b)^2 - 6 d c1^b c3^b.
Rational bogomolov_Q(const ChernCharacter& ch, const StabilityPoint& p);

nlohmann::json rational_json(const Rational& q);
nlohmann::json to_json(const BiPoly& p);
nlohmann::json to_json(const WallPolynomial& w);
WallPolynomial wall_from_json(const nlohmann::json& j);

}  // namespace stabwalls
