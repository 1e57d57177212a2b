#include "stabwalls/stability.hpp"

namespace stabwalls {

StabilityPoint StabilityPoint::make(Rational beta, Rational t, Rational s) {
    if (t <= 0) throw Error(ErrorCode::Precondition, "t must be positive, got " + to_string(t));
    if (s <= 0) throw Error(ErrorCode::Precondition, "s must be positive, got " + to_string(s));
    return {std::move(beta), std::move(t), std::move(s)};
}

std::string StabilityPoint::str() const {
    return "(" + to_string(beta) + "," + to_string(t) + "," + to_string(s) + ")";
}

TiltCharge tilt_Z(const ChernCharacter& ch, const StabilityPoint& p) {
    ChernCharacter x = twist(ch, p.beta);
    Rational d(ch.degree());
    return {-(x[2] - p.t / 2 * d * x[0]), d * x[1]};
}

Slope nu(const ChernCharacter& ch, const StabilityPoint& p) {
    TiltCharge z = tilt_Z(ch, p);
    if (z.im == 0) return Slope::inf();
    return Slope::of(-z.re / z.im);
}

BridgelandCharge bridgeland_Z(const ChernCharacter& ch, const StabilityPoint& p) {
    ChernCharacter x = twist(ch, p.beta);
    Rational d(ch.degree());
    Rational tau = x[3] - (p.s + make_rational(1, 6)) * p.t * d * x[1];
    Rational rho = x[2] - p.t / 2 * d * x[0];
    return {tau, rho};
}

Slope lambda(const ChernCharacter& ch, const StabilityPoint& p) {
    BridgelandCharge z = bridgeland_Z(ch, p);
    if (z.rho == 0) return Slope::inf();
    return Slope::of(z.tau / z.rho);
}

namespace {

struct TwistPolys {
    BiPoly c0, c1, c2, c3;
};

TwistPolys twist_polys(const ChernCharacter& ch) {
    const BiPoly b = BiPoly::beta();
    const BiPoly b2 = b * b;
    const BiPoly b3 = b2 * b;
    Rational d(ch.degree());
    auto k = [](const Rational& q) { return BiPoly::constant(q); };
    TwistPolys x;
    x.c0 = k(ch[0]);
    x.c1 = k(ch[1]) - ch[0] * b;
    x.c2 = k(ch[2]) - Rational(d * ch[1]) * b + Rational(d * ch[0] / 2) * b2;
    x.c3 = k(ch[3]) - ch[2] * b + Rational(d * ch[1] / 2) * b2 - Rational(d * ch[0] / 6) * b3;
    return x;
}

}  // namespace

BiPoly tau_poly(const ChernCharacter& ch, const Rational& s) {
    TwistPolys x = twist_polys(ch);
    Rational d(ch.degree());
    return x.c3 - Rational((s + make_rational(1, 6)) * d) * (BiPoly::t() * x.c1);
}

BiPoly rho_poly(const ChernCharacter& ch) {
    TwistPolys x = twist_polys(ch);
    Rational d(ch.degree());
    return x.c2 - Rational(d / 2) * (BiPoly::t() * x.c0);
}

WallPolynomial wall_poly(const ChernCharacter& e, const ChernCharacter& f, const Rational& s, std::string label_e,
                         std::string label_f) {
    require_same_variety(e, f);
    BiPoly p = tau_poly(e, s) * rho_poly(f) - tau_poly(f, s) * rho_poly(e);
    return {std::move(p), std::move(label_e), std::move(label_f)};
}

std::string_view side_name(Side s) {
    switch (s) {
        case Side::Inside: return "inside";
        case Side::On: return "on";
        case Side::Outside: return "outside";
    }
    return "?";
}

Side side_of(const Rational& value) {
    int sg = sgn(value);
    return sg < 0 ? Side::Inside : sg == 0 ? Side::On : Side::Outside;
}

Side wall_side(const ChernCharacter& e, const ChernCharacter& f, const StabilityPoint& p) {
    require_same_variety(e, f);
    BridgelandCharge ze = bridgeland_Z(e, p), zf = bridgeland_Z(f, p);
    return side_of(ze.tau * zf.rho - zf.tau * ze.rho);
}

CurveValues curve_values(const ChernCharacter& ch, const StabilityPoint& p) {
    BridgelandCharge z = bridgeland_Z(ch, p);
    return {z.tau, z.rho};
}

Rational bogomolov_Q(const ChernCharacter& ch, const StabilityPoint& p) {
    Rational d(ch.degree());
    Rational delta = d * ch[1] * d * ch[1] - 2 * d * ch[0] * ch[2];
    ChernCharacter x = twist(ch, p.beta);
    return p.t * delta + 4 * x[2] * x[2] - 6 * d * x[1] * x[3];
}

// ---------------------------------------------------------------------------

nlohmann::json rational_json(const Rational& q) { return to_string(q); }

namespace {

nlohmann::json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw Error(ErrorCode::Parse, "expected an integer");
}

}  // namespace

nlohmann::json to_json(const BiPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : p.terms())
        arr.push_back({k.first, k.second, integer_json(c.get_num()), integer_json(c.get_den())});
    return arr;
}

nlohmann::json to_json(const WallPolynomial& w) {
    return {{"labels", {w.label_e, w.label_f}},
            {"coefficients", to_json(w.poly)},
            {"identically_zero", w.identically_zero()}};
}

WallPolynomial wall_from_json(const nlohmann::json& j) {
    try {
        WallPolynomial w;
        w.label_e = j.at("labels").at(0).get<std::string>();
        w.label_f = j.at("labels").at(1).get<std::string>();
        for (const auto& term : j.at("coefficients")) {
            Integer den = integer_from_json(term.at(3));
            if (den == 0) throw Error(ErrorCode::MalformedRational, "zero denominator in wall polynomial");
            Rational c(integer_from_json(term.at(2)), den);
            c.canonicalize();
            w.poly = w.poly + BiPoly::monomial(term.at(0).get<int>(), term.at(1).get<int>(), c);
        }
        return w;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::Parse, std::string("wall polynomial JSON: ") + ex.what());
    }
}

}  // namespace stabwalls
