#include "stabwalls/walls.hpp"

#include <algorithm>
#include <thread>

namespace stabwalls {

std::string_view wall_class_name(WallClass c) {
    switch (c) {
        case WallClass::IdenticallyZero: return "identically_zero";
        case WallClass::Canonical1: return "canonical_1";
        case WallClass::Canonical2: return "canonical_2";
        case WallClass::Canonical3: return "canonical_3";
        case WallClass::Other: return "other";
    }
    return "?";
}

std::vector<DimensionVector> subvectors(const DimensionVector& dim) {
    std::vector<DimensionVector> out;
    DimensionVector v;
    for (v[0] = 0; v[0] <= dim[0]; ++v[0])
        for (v[1] = 0; v[1] <= dim[1]; ++v[1])
            for (v[2] = 0; v[2] <= dim[2]; ++v[2])
                for (v[3] = 0; v[3] <= dim[3]; ++v[3])
                    if (!v.is_zero() && v != dim) out.push_back(v);
    return out;
}

WallPolynomial determinant_wall(const DimensionVector& dim_e, const DimensionVector& dim_f,
                                const ExceptionalCollection& c, const Rational& s) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "determinant walls need four objects");
    size_t j;
    if (dim_e[0] == 0 && dim_f[0] == 0)
        j = 1;
    else if (dim_e[3] == 0 && dim_f[3] == 0)
        j = 0;
    else
        throw Error(ErrorCode::UnsupportedShape,
                    "supports of " + dim_e.str() + " and " + dim_f.str() + " are not three consecutive indices");
    const auto& g0 = c[j].ch;
    const auto& g1 = c[j + 1].ch;
    const auto& g2 = c[j + 2].ch;
    BiPoly f21 = wall_poly(g2, g1, s).poly;
    BiPoly f20 = wall_poly(g2, g0, s).poly;
    BiPoly f10 = wall_poly(g1, g0, s).poly;
    auto a = [&](size_t i) { return Rational(dim_e[j + i]); };
    auto b = [&](size_t i) { return Rational(dim_f[j + i]); };
    BiPoly det = Rational(a(1) * b(2) - a(2) * b(1)) * f21 - Rational(a(0) * b(2) - a(2) * b(0)) * f20 +
                 Rational(a(0) * b(1) - a(1) * b(0)) * f10;
    return {std::move(det), dim_e.str(), dim_f.str()};
}

Rational two_step_determinant_condition(long a, long b, long c, long d) {
    return Rational(a) * Rational(d) - Rational(b) * Rational(c);
}

std::pair<DimensionVector, DimensionVector> truncation_dims(const DimensionVector& dim, int k) {
    if (k < 0 || k > 3) throw Error(ErrorCode::IndexOutOfRange, "truncation index must lie in 0..3");
    DimensionVector upper, lower;
    for (size_t i = 0; i < 4; ++i) (static_cast<int>(i) >= 3 - k ? upper : lower)[i] = dim[i];
    return {upper, lower};
}

namespace {

std::array<ChernCharacter, 4> effective_generators(const ExceptionalCollection& c) {
    ExceptionalCollection shifted = ext_shift(c);
    return {shifted[0].effective(), shifted[1].effective(), shifted[2].effective(), shifted[3].effective()};
}

const char* kGenLabel[] = {"E0[3]", "E1[2]", "E2[1]", "E3"};

}  // namespace

ReductionCheck wall_reduction_check(const ExceptionalCollection& canonical, long c_charge, long k,
                                    const DimensionVector& sub, const Rational& s) {
    if (c_charge < 1 || k < 0) throw Error(ErrorCode::Precondition, "need charge >= 1 and k >= 0");
    DimensionVector dim{{0, c_charge, 2 * c_charge + k, c_charge}};
    for (size_t i = 0; i < 4; ++i)
        if (sub[i] < 0 || sub[i] > dim[i])
            throw Error(ErrorCode::Precondition, sub.str() + " is not below " + dim.str());
    auto e = effective_generators(canonical);
    ChernCharacter ve = ch_from_dim(dim, canonical);
    ChernCharacter vf = ch_from_dim(sub, canonical);
    ReductionCheck r;
    Rational f(sub[1]), g(sub[2]), h(sub[3]);
    r.det_a = h * (2 * c_charge + k) - Rational(c_charge) * g;
    r.f_minus_h = f - h;
    r.kernel = wall_poly(e[2], e[1] + e[3], s).poly;
    BiPoly lhs = wall_poly(ve, vf, s).poly;
    BiPoly rhs = r.det_a * r.kernel + r.f_minus_h * wall_poly(ve, e[1], s).poly;
    r.holds = lhs == rhs;
    return r;
}

std::array<WallRecord, 3> canonical_walls(const DimensionVector& dim, const ExceptionalCollection& c,
                                          const Rational& s) {
    if (dim[0] != 0) throw Error(ErrorCode::UnsupportedShape, "canonical walls need a0 = 0, got " + dim.str());
    auto e = effective_generators(c);
    ChernCharacter v = ch_from_dim(dim, c);
    std::array<WallRecord, 3> out;
    for (size_t i = 1; i <= 3; ++i) {
        WallRecord& r = out[i - 1];
        r.sub = DimensionVector{};
        r.sub[i] = 1;
        r.poly = wall_poly(v, e[i], s, dim.str(), kGenLabel[i]);
        r.classification = r.poly.identically_zero() ? WallClass::IdenticallyZero
                                                     : static_cast<WallClass>(static_cast<int>(WallClass::Canonical1) +
                                                                              static_cast<int>(i) - 1);
    }
    return out;
}

std::vector<TriplePoint> triple_points(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s) {
    auto walls = canonical_walls(dim, c, s);
    std::vector<BiPoly> ps;
    for (const auto& w : walls)
        if (!w.poly.identically_zero()) ps.push_back(w.poly.poly);
    std::vector<TriplePoint> out;
    if (ps.size() < 2) return out;

    UniPoly res;
    for (size_t a = 0; a < ps.size() && res.is_zero(); ++a)
        for (size_t b = a + 1; b < ps.size() && res.is_zero(); ++b) res = resultant_t(ps[a], ps[b]);
    if (res.is_zero()) return out;  // common factor: no isolated point

    for (const Rational& beta : rational_roots(res)) {
        UniPoly in_t;
        for (const auto& p : ps) {
            in_t = p.at_beta(beta);
            if (!in_t.is_zero()) break;
        }
        if (in_t.is_zero()) continue;  // every wall contains the vertical line
        for (const Rational& t : rational_roots(in_t)) {
            if (t <= 0) continue;
            bool all = std::all_of(ps.begin(), ps.end(), [&](const BiPoly& p) { return p(beta, t) == 0; });
            if (all) out.push_back({beta, t});
        }
    }
    return out;
}

std::optional<TriplePoint> triple_point(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s) {
    auto pts = triple_points(dim, c, s);
    if (pts.empty()) return std::nullopt;
    return pts.front();
}

namespace {

bool passes(const ChernCharacter& v, const StabilityPoint& p, const WallFilters& f) {
    if (f.region) {
        try {
            if (f.region(p) == 0) return false;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::UnknownRegion) throw;
            return false;
        }
    }
    if (f.positivity && bridgeland_Z(v, p).rho < 0) return false;
    if (f.bogomolov && bogomolov_Q(v, p) < 0) return false;
    return true;
}

WallClass classify(const BiPoly& p, const std::array<WallRecord, 3>& canon) {
    if (p.is_zero()) return WallClass::IdenticallyZero;
    for (size_t i = 0; i < 3; ++i)
        if (!canon[i].poly.identically_zero() && BiPoly::ratio(p, canon[i].poly.poly))
            return static_cast<WallClass>(static_cast<int>(WallClass::Canonical1) + static_cast<int>(i));
    return WallClass::Other;
}

std::optional<Rational> det_a_of(const DimensionVector& dim, const DimensionVector& sub) {
    long c = dim[1];
    if (dim[0] != 0 || c <= 0 || dim[3] != c || dim[2] < 2 * c) return std::nullopt;
    return Rational(sub[3]) * Rational(dim[2]) - Rational(c) * Rational(sub[2]);
}

}  // namespace

std::vector<WallRecord> candidate_walls(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s,
                                        const RegionWindow& window, const WallFilters& filters, int threads) {
    if (!(window.beta_min < window.beta_max) || !(window.t_min < window.t_max)) return {};
    window.validate();
    auto canon = dim[0] == 0 ? canonical_walls(dim, c, s) : std::array<WallRecord, 3>{};
    ChernCharacter v = ch_from_dim(dim, c);
    auto subs = subvectors(dim);
    StabilityPoint centre{(window.beta_min + window.beta_max) / 2, (window.t_min + window.t_max) / 2, s};

    std::vector<std::optional<WallRecord>> results(subs.size());
    auto process = [&](size_t idx) {
        const DimensionVector& sub = subs[idx];
        ChernCharacter w = ch_from_dim(sub, c);
        WallPolynomial poly;
        bool consecutive = (dim[0] == 0) || (dim[3] == 0);
        poly = consecutive ? determinant_wall(dim, sub, c, s) : wall_poly(v, w, s, dim.str(), sub.str());
        if (poly.identically_zero()) return;
        CurveSet curves = extract_curves(poly, window);
        bool survived = false;
        for (const auto& x : curves.crossings) {
            Rational lo(0), hi(1);
            auto at = [&](const Rational& u) {
                return StabilityPoint{x.beta0 + u * (x.beta1 - x.beta0), x.t0 + u * (x.t1 - x.t0), s};
            };
            bool neg0 = poly.at(at(lo)) < 0;
            for (int k = 0; k < filters.refine_steps; ++k) {
                Rational mid = (lo + hi) / 2;
                ((poly.at(at(mid)) < 0) == neg0 ? lo : hi) = mid;
            }
            if (passes(w, at(lo), filters) && passes(w, at(hi), filters)) {
                survived = true;
                break;
            }
        }
        if (!survived) return;
        WallRecord r;
        r.sub = sub;
        r.poly = std::move(poly);
        r.classification = classify(r.poly.poly, canon);
        r.det_a = det_a_of(dim, sub);
        r.sample = centre;
        r.sample_side = side_of(r.poly.at(centre));
        results[idx] = std::move(r);
    };

    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::max(1, std::min<int>(n, static_cast<int>(subs.size())));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
    auto work = [&](int id) {
        try {
            for (size_t i = static_cast<size_t>(id); i < subs.size(); i += static_cast<size_t>(n)) process(i);
        } catch (...) {
            errors[static_cast<size_t>(id)] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int id = 1; id < n; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<WallRecord> out;
    for (auto& r : results)
        if (r) out.push_back(std::move(*r));
    return out;
}

nlohmann::json to_json(const WallRecord& r) {
    nlohmann::json j = {{"sub", r.sub.a},
                        {"classification", wall_class_name(r.classification)},
                        {"wall", to_json(r.poly)}};
    j["det_A"] = r.det_a ? rational_json(*r.det_a) : nlohmann::json(nullptr);
    if (r.sample) {
        j["orientation_sample"] = {{"beta", rational_json(r.sample->beta)},
                                   {"t", rational_json(r.sample->t)},
                                   {"side", side_name(*r.sample_side)}};
    }
    return j;
}

namespace {

nlohmann::json polylines_json(const std::vector<Polyline>& pls) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& pl : pls) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [b, t] : pl.pts) pts.push_back({b, t});
        arr.push_back({{"closed", pl.closed}, {"points", pts}});
    }
    return arr;
}

}  // namespace

nlohmann::json instanton_report(long c_charge, const VarietyPtr& variety, const Rational& s,
                                const RegionWindow& curve_window) {
    if (c_charge < 1) throw Error(ErrorCode::Precondition, "instanton charge must be >= 1");
    ExceptionalCollection c = canonical_collection(variety);
    DimensionVector dim{{0, c_charge, 2 * c_charge + 2, c_charge}};
    ChernCharacter v = ch_from_dim(dim, c);

    nlohmann::json rep;
    rep["variety"] = variety->name;
    rep["charge"] = c_charge;
    rep["s"] = rational_json(s);
    rep["dim"] = dim.a;
    rep["ch"] = {rational_json(v[0]), rational_json(v[1]), rational_json(v[2]), rational_json(v[3])};
    rep["collection"] = to_json(ext_shift(c));

    auto walls = canonical_walls(dim, c, s);
    nlohmann::json cw = nlohmann::json::array();
    for (const auto& w : walls) {
        nlohmann::json j = to_json(w);
        if (!w.poly.identically_zero()) j["curves"] = polylines_json(extract_curves(w.poly, curve_window).polylines);
        cw.push_back(j);
    }
    rep["canonical_walls"] = cw;

    auto tp = triple_points(dim, c, s);
    nlohmann::json tps = nlohmann::json::array();
    for (const auto& p : tp) tps.push_back({{"beta", rational_json(p.beta)}, {"t", rational_json(p.t)}});
    rep["triple_points"] = tps;

    nlohmann::json trunc = nlohmann::json::array();
    for (int k = 0; k <= 3; ++k) {
        auto [upper, lower] = truncation_dims(dim, k);
        nlohmann::json j = {{"k", k}, {"upper", upper.a}, {"lower", lower.a}};
        if (!upper.is_zero() && upper != dim) {
            WallPolynomial w = determinant_wall(dim, upper, c, s);
            j["classification"] = wall_class_name(classify(w.poly, walls));
        } else {
            j["classification"] = nullptr;
        }
        trunc.push_back(j);
    }
    rep["truncations"] = trunc;

    nlohmann::json census = nlohmann::json::array();
    auto e = effective_generators(c);
    for (const auto& sub : subvectors(dim)) {
        WallPolynomial w = determinant_wall(dim, sub, c, s);
        Rational det = Rational(sub[3]) * Rational(dim[2]) - Rational(c_charge) * Rational(sub[2]);
        census.push_back({{"sub", sub.a},
                          {"det_A", rational_json(det)},
                          {"det_A_sign", sgn(det)},
                          {"f_minus_h", sub[1] - sub[3]},
                          {"classification", wall_class_name(classify(w.poly, walls))}});
    }
    rep["subvector_census"] = census;
    rep["reduction_kernel"] = to_json(wall_poly(e[2], e[1] + e[3], s, "E2[1]", "E1[2]+E3").poly);
    return rep;
}

}  // namespace stabwalls
