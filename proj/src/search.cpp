#include "stabwalls/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace stabwalls {

bool appendix_conditions(const ExceptionalCollection& c, const StabilityPoint& p) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "the search needs four objects");
    for (size_t j = 0; j < 4; ++j) {
        ExceptionalObject o{c[j].ch, static_cast<int>(3 - j), c[j].name};
        if (!in_double_heart(o, p)) return false;
    }
    return true;
}

std::vector<std::pair<Rational, Rational>> central_charges(const ExceptionalCollection& c, const StabilityPoint& p) {
    std::vector<std::pair<Rational, Rational>> z;
    for (const auto& o : c.objects) {
        BridgelandCharge b = bridgeland_Z(o.effective(), p);
        if (b.tau == 0 && b.rho == 0)
            throw Error(ErrorCode::ZeroCentralCharge, "Z(" + o.name + ") = 0 at " + p.str());
        z.emplace_back(-b.tau, b.rho);
    }
    return z;
}

std::vector<int> halfplane_sweep(const std::vector<std::pair<Rational, Rational>>& z, int steps) {
    if (steps < 1) throw Error(ErrorCode::Precondition, "sweep needs at least one step");
    std::vector<std::pair<double, double>> zd;
    for (const auto& [x, y] : z) zd.emplace_back(x.get_d(), y.get_d());
    std::vector<int> ok;
    for (int k = 0; k <= steps; ++k) {
        double phi = std::numbers::pi * k / steps;
        double ex = std::cos(phi), ey = std::sin(phi);
        // axis directions exactly, so boundary rays are not decided by rounding
        if (k == 0) ex = 1, ey = 0;
        else if (k == steps) ex = -1, ey = 0;
        else if (2 * k == steps) ex = 0, ey = 1;
        bool all = true;
        for (const auto& [x, y] : zd) {
            double cr = ex * y - ey * x;
            double dot = ex * x + ey * y;
            if (!(cr > 0 || (cr == 0 && dot < 0))) {
                all = false;
                break;
            }
        }
        if (all) ok.push_back(k);
    }
    return ok;
}

std::vector<int> halfplane_sweep(const ExceptionalCollection& c, const StabilityPoint& p, int steps) {
    return halfplane_sweep(central_charges(c, p), steps);
}

Rational diamond_angle(const Rational& x, const Rational& y) {
    if (x == 0 && y == 0) throw Error(ErrorCode::ZeroCentralCharge, "angle of the zero vector");
    if (y >= 0) return x >= 0 ? Rational(y / (x + y)) : Rational(1 - x / (-x + y));
    return x < 0 ? Rational(2 - y / (-x - y)) : Rational(3 + x / (x - y));
}

double diamond_to_radians(const Rational& a) {
    double v = a.get_d();
    if (v <= 1) return std::atan2(v, 1 - v);
    return std::atan2(2 - v, 1 - v);
}

HalfplaneResult halfplane_exact(const std::vector<std::pair<Rational, Rational>>& z) {
    HalfplaneResult out;
    std::set<Rational> dirs;
    for (const auto& [x, y] : z) dirs.insert(diamond_angle(x, y));
    if (dirs.empty()) return out;
    std::vector<Rational> d(dirs.begin(), dirs.end());

    // At most one cyclic gap can exceed half a turn.
    for (size_t u = 0; u < d.size(); ++u) {
        Rational next = u + 1 < d.size() ? d[u + 1] : Rational(d[0] + 4);
        Rational gap = next - d[u];
        if (gap <= 2) continue;
        Rational lo = d[u] + 2;
        if (lo >= 4) lo -= 4;
        Rational hi = lo + gap - 2;
        // [lo, hi) against [0, 2], and its copy shifted by one turn.
        for (int shift : {0, -4}) {
            Rational l = lo + shift, h = hi + shift;
            Rational a = std::max(l, Rational(0));
            if (h <= 2) {
                if (a < h) out.intervals.push_back({a, h, false});
            } else if (a <= 2) {
                out.intervals.push_back({a, Rational(2), true});
            }
        }
        break;
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const AngleInterval& a, const AngleInterval& b) { return a.lo < b.lo; });
    out.feasible = !out.intervals.empty();
    return out;
}

HalfplaneResult halfplane_exact(const ExceptionalCollection& c, const StabilityPoint& p) {
    return halfplane_exact(central_charges(c, p));
}

// ---------------------------------------------------------------------------

std::string orbit_key(const ExceptionalCollection& c) {
    std::vector<std::string> parts;
    for (size_t i = 0; i < c.size(); ++i) {
        std::string s;
        for (const auto& x : c[i].ch.lattice_vector()) s += to_string(x) + ",";
        s += "@" + std::to_string(static_cast<long>(c.size()) - 1 - static_cast<long>(i));
        parts.push_back(std::move(s));
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts) key += p + ";";
    return key;
}

std::vector<ExceptionalCollection> mutation_orbit(const ExceptionalCollection& c, int depth) {
    if (depth < 0) throw Error(ErrorCode::Precondition, "depth must be >= 0");
    std::vector<ExceptionalCollection> orbit{c};
    std::set<std::string> seen{orbit_key(c)};
    std::vector<ExceptionalCollection> frontier{c};
    for (int level = 0; level < depth; ++level) {
        std::vector<ExceptionalCollection> next;
        for (const auto& x : frontier) {
            for (char kind : {'L', 'R'}) {
                for (int i = 0; i + 1 < static_cast<int>(x.size()); ++i) {
                    ExceptionalCollection y = kind == 'L' ? left_mutation(x, i) : right_mutation(x, i);
                    if (seen.insert(orbit_key(y)).second) {
                        orbit.push_back(y);
                        next.push_back(std::move(y));
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return orbit;
}

SearchReport run_search(const VarietyPtr& variety, const std::vector<StabilityPoint>& points, int depth,
                        int threads) {
    SearchReport rep;
    rep.variety = variety->name;
    rep.depth = depth;
    rep.points = points;
    rep.numeric_necessary_only = depth > 2;
    auto orbit = mutation_orbit(canonical_collection(variety), depth);
    rep.collections = static_cast<long>(orbit.size());

    struct Partial {
        long explored = 0, failing = 0, unknown = 0;
        std::vector<SearchHit> hits;
    };
    std::vector<Partial> parts(orbit.size());
    auto evaluate = [&](size_t idx) {
        ExceptionalCollection c = ext_shift(orbit[idx]);
        Partial& part = parts[idx];
        for (const auto& p : points) {
            ++part.explored;
            try {
                if (!appendix_conditions(c, p)) {
                    ++part.failing;
                    continue;
                }
                HalfplaneResult h = halfplane_exact(c, p);
                if (h.feasible)
                    part.hits.push_back({c.word, p, std::move(h)});
                else
                    ++part.failing;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::UnknownRegion)
                    ++part.unknown;
                else if (e.code() != ErrorCode::ZeroCentralCharge)
                    throw;
                ++part.failing;
            }
        }
    };

    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::max(1, std::min<int>(n, static_cast<int>(orbit.size())));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
    auto work = [&](int id) {
        try {
            for (size_t i = static_cast<size_t>(id); i < orbit.size(); i += static_cast<size_t>(n)) evaluate(i);
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

    for (auto& part : parts) {
        rep.explored += part.explored;
        rep.failing += part.failing;
        rep.unknown += part.unknown;
        for (auto& h : part.hits) rep.passing.push_back(std::move(h));
    }
    std::stable_sort(rep.passing.begin(), rep.passing.end(),
                     [](const SearchHit& a, const SearchHit& b) { return a.word < b.word; });
    return rep;
}

nlohmann::json to_json(const HalfplaneResult& h) {
    nlohmann::json iv = nlohmann::json::array();
    for (const auto& i : h.intervals) {
        iv.push_back({{"lo", rational_json(i.lo)},
                      {"hi", rational_json(i.hi)},
                      {"hi_closed", i.hi_closed},
                      {"phi_over_pi", {to_decimal(Rational(diamond_to_radians(i.lo) / std::numbers::pi), 8),
                                       to_decimal(Rational(diamond_to_radians(i.hi) / std::numbers::pi), 8)}}});
    }
    return {{"feasible", h.feasible}, {"intervals", iv}};
}

nlohmann::json to_json(const SearchReport& r) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points) pts.push_back({rational_json(p.beta), rational_json(p.t), rational_json(p.s)});
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : r.passing)
        hits.push_back({{"word", h.word},
                        {"point", {rational_json(h.point.beta), rational_json(h.point.t), rational_json(h.point.s)}},
                        {"halfplane", to_json(h.halfplane)}});
    return {{"variety", r.variety},
            {"depth", r.depth},
            {"collections", r.collections},
            {"explored", r.explored},
            {"passing_count", static_cast<long>(r.passing.size())},
            {"failing", r.failing},
            {"unknown", r.unknown},
            {"numeric_necessary_only", r.numeric_necessary_only},
            {"points", pts},
            {"passing", hits}};
}

}  // namespace stabwalls
