// stabwalls command-line front end.

#include "stabwalls/quiver.hpp"
#include "stabwalls/search.hpp"
#include "stabwalls/walls.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef STABWALLS_VERSION
#define STABWALLS_VERSION "unknown"
#endif

using namespace stabwalls;
using nlohmann::json;

namespace {

struct Common {
    std::string registry;
    std::string variety = "p3";
    std::string s = "1/3";
    int threads = 0;

    VarietyPtr load_variety() const {
        if (registry.empty()) return VarietyRegistry::builtin().find(variety);
        return VarietyRegistry::load(registry).find(variety);
    }
};

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

std::vector<SvgLayer> collection_wall_layers(const ExceptionalCollection& c, const Rational& s, const RegionWindow& w) {
    static const char* colors[] = {"#000000", "#d1495b", "#00798c", "#edae49", "#66a182", "#2e4057"};
    std::vector<SvgLayer> layers;
    int k = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        for (size_t j = i + 1; j < c.size(); ++j) {
            WallPolynomial p = wall_poly(c[i].effective(), c[j].effective(), s, c[i].name, c[j].name);
            std::string label = "wall-" + std::to_string(i) + std::to_string(j);
            if (p.identically_zero()) continue;
            layers.push_back({label, colors[k++ % 6], extract_curves(p, w).polylines});
        }
    }
    return layers;
}

// ---------------------------------------------------------------------------

struct RegionArgs {
    std::string window = "-3,1,1/1000,1";
    std::string grid = "400x300";
    std::string predicate = "quiver";
    std::string dim;
    std::string word;
    std::string csv, svg;
    bool walls = true;
};

int cmd_region(const Common& g, const RegionArgs& a) {
    VarietyPtr v = g.load_variety();
    Rational s = parse_rational(g.s);
    RegionWindow w = RegionWindow::parse(a.window, a.grid);
    ExceptionalCollection c = ext_shift(apply_word(canonical_collection(v), parse_word(a.word)));
    RegionPredicate pred;
    if (a.predicate == "quiver") {
        pred = [&](const StabilityPoint& p) { return quiver_region_test(c, p); };
    } else if (a.predicate == "heart") {
        pred = [&](const StabilityPoint& p) {
            for (const auto& o : c.objects)
                if (!in_double_heart(o, p)) return 0;
            return 1;
        };
    } else if (a.predicate == "bar") {
        if (a.dim.empty()) throw Error(ErrorCode::Precondition, "--predicate bar needs --dim");
        DimensionVector d = DimensionVector::parse(a.dim);
        pred = [&c, d](const StabilityPoint& p) { return bar_region_test(d, c, p) ? 1 : 0; };
    } else if (a.predicate == "search") {
        pred = [&](const StabilityPoint& p) {
            return appendix_conditions(c, p) && halfplane_exact(c, p).feasible ? 1 : 0;
        };
    } else {
        throw Error(ErrorCode::Precondition, "unknown predicate '" + a.predicate + "'");
    }
    RegionRaster r = rasterize(pred, w, s, g.threads);
    std::ostringstream csv;
    write_csv(csv, r);
    if (!a.csv.empty() || a.svg.empty()) emit(a.csv, csv.str());
    if (!a.svg.empty()) {
        std::ostringstream svg;
        std::vector<SvgLayer> layers;
        if (a.walls) layers = collection_wall_layers(c, s, w);
        write_svg(svg, w, &r, layers);
        emit(a.svg, svg.str());
    }
    return 0;
}

struct WallsArgs {
    long charge = 0;
    std::string dim;
    std::string window = "-2,2,1/100,2";
    std::string grid = "80x80";
    std::string out;
    bool positivity = true, bogomolov = true;
    bool restrict_region = false;
};

int cmd_walls(const Common& g, const WallsArgs& a) {
    VarietyPtr v = g.load_variety();
    Rational s = parse_rational(g.s);
    ExceptionalCollection c = canonical_collection(v);
    DimensionVector dim;
    if (!a.dim.empty())
        dim = DimensionVector::parse(a.dim);
    else if (a.charge > 0)
        dim = DimensionVector{{0, a.charge, 2 * a.charge + 2, a.charge}};
    else
        throw Error(ErrorCode::Precondition, "walls needs --charge or --dim");
    RegionWindow w = RegionWindow::parse(a.window, a.grid);

    json out;
    if (a.charge > 0 && dim == DimensionVector{{0, a.charge, 2 * a.charge + 2, a.charge}}) {
        out = instanton_report(a.charge, v, s, w);
    } else {
        out["variety"] = v->name;
        out["s"] = rational_json(s);
        out["dim"] = dim.a;
        if (dim[0] == 0) {
            json cw = json::array();
            for (const auto& r : canonical_walls(dim, c, s)) cw.push_back(to_json(r));
            out["canonical_walls"] = cw;
            json tps = json::array();
            for (const auto& p : triple_points(dim, c, s))
                tps.push_back({{"beta", rational_json(p.beta)}, {"t", rational_json(p.t)}});
            out["triple_points"] = tps;
        }
    }
    WallFilters f;
    f.positivity = a.positivity;
    f.bogomolov = a.bogomolov;
    ExceptionalCollection shifted = ext_shift(c);
    if (a.restrict_region)
        f.region = [&](const StabilityPoint& p) {
            return quiver_region_test(shifted, p) != 0 && bar_region_test(dim, shifted, p) ? 1 : 0;
        };
    json cand = json::array();
    for (const auto& r : candidate_walls(dim, c, s, w, f, g.threads)) cand.push_back(to_json(r));
    out["candidate_walls"] = cand;
    out["window"] = {rational_json(w.beta_min), rational_json(w.beta_max), rational_json(w.t_min),
                     rational_json(w.t_max)};
    emit(a.out, dump(out));
    return 0;
}

struct MutateArgs {
    std::string word;
    bool shifted = false;
    std::string out;
};

int cmd_mutate(const Common& g, const MutateArgs& a) {
    VarietyPtr v = g.load_variety();
    ExceptionalCollection c = apply_word(canonical_collection(v), parse_word(a.word));
    if (a.shifted) c = ext_shift(c);
    json j = to_json(c);
    json gram = json::array();
    for (const auto& row : gram_matrix(c)) {
        json r = json::array();
        for (const auto& x : row) r.push_back(rational_json(x));
        gram.push_back(r);
    }
    j["gram"] = gram;
    j["lattice_determinant"] = rational_json(lattice_determinant(c));
    emit(a.out, dump(j));
    return 0;
}

struct SearchArgs {
    std::string points;
    int depth = 2;
    std::string out;
};

std::vector<StabilityPoint> read_points(const std::string& path, const Rational& s) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot read points file '" + path + "'");
    std::vector<StabilityPoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (lineno == 1 && line.find("beta") != std::string::npos) continue;
        auto v = parse_list(line);
        if (v.size() < 2 || v.size() > 3)
            throw Error(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected beta,t[,s]");
        pts.push_back(StabilityPoint::make(v[0], v[1], v.size() == 3 ? v[2] : s));
    }
    return pts;
}

int cmd_search(const Common& g, const SearchArgs& a) {
    VarietyPtr v = g.load_variety();
    Rational s = parse_rational(g.s);
    auto pts = read_points(a.points, s);
    SearchReport r = run_search(v, pts, a.depth, g.threads);
    emit(a.out, dump(to_json(r)));
    return 0;
}

struct QuiverArgs {
    int kronecker = 4;
    std::string dims = "1,4";
    std::string theta = "auto";
    std::string rep;
    std::uint64_t seed = 0;
    int budget = 64;
    std::string out;
};

int cmd_quiver(const Common& g, const QuiverArgs& a) {
    Quiver q = kronecker(a.kronecker);
    auto dq = parse_list(a.dims);
    if (dq.size() != 2) throw Error(ErrorCode::Parse, "--dims needs two entries");
    QDimension d;
    for (const auto& x : dq) {
        if (x.get_den() != 1 || x < 0 || !x.get_num().fits_slong_p())
            throw Error(ErrorCode::NonIntegral, "--dims entries must be non-negative integers");
        d.push_back(x.get_num().get_si());
    }
    std::vector<Rational> theta;
    if (a.theta == "auto")
        theta = {Rational(d[1]), Rational(-d[0])};
    else
        theta = parse_list(a.theta);
    if (theta.size() != 2) throw Error(ErrorCode::ThetaMismatch, "theta needs two entries");

    KroneckerRep rep;
    if (!a.rep.empty()) {
        std::ifstream in(a.rep);
        if (!in) throw Error(ErrorCode::Io, "cannot read representation '" + a.rep + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            throw Error(ErrorCode::Parse, std::string("representation JSON: ") + ex.what());
        }
        rep = KroneckerRep::from_json(j);
        if (rep.n != a.kronecker || rep.p_dim != d[0] || rep.q_dim != d[1])
            throw Error(ErrorCode::Precondition, "representation does not match --kronecker/--dims");
    } else {
        rep = KroneckerRep::random(a.kronecker, static_cast<int>(d[0]), static_cast<int>(d[1]), a.seed);
    }

    json out;
    out["quiver"] = {{"vertices", q.vertices}, {"arrows", q.arrows.size()}, {"relations", q.relation_count}};
    out["dims"] = d;
    out["moduli_dimension"] = moduli_dimension(q, d);
    out["theta"] = {rational_json(theta[0]), rational_json(theta[1])};
    out["coprime"] = coprime_check(theta, d);
    out["seed"] = a.seed;
    out["budget"] = a.budget;
    out["representation"] = rep.to_json();
    auto w = destabilizer_search(rep, theta, a.budget, a.seed, g.threads);
    if (w) {
        auto rows = [](const Matrix& m) {
            json arr = json::array();
            for (const auto& r : m) {
                json row = json::array();
                for (const auto& x : r) row.push_back(rational_json(x));
                arr.push_back(row);
            }
            return arr;
        };
        out["destabilizer"] = {{"I", rows(w->basis_i)},
                               {"J", rows(w->basis_j)},
                               {"value", rational_json(w->value)},
                               {"trial", w->trial}};
    } else {
        out["destabilizer"] = "not_found";
    }
    emit(a.out, dump(out));
    return 0;
}

struct ReportArgs {
    long charge = 1;
    std::string out_dir = ".";
    std::string window = "-2,2,1/100,2";
    std::string grid = "240x160";
};

int cmd_report(const Common& g, const ReportArgs& a) {
    VarietyPtr v = g.load_variety();
    Rational s = parse_rational(g.s);
    RegionWindow w = RegionWindow::parse(a.window, a.grid);
    json rep = instanton_report(a.charge, v, s, w);
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create '" + a.out_dir + "': " + ec.message());
    ExceptionalCollection c = ext_shift(canonical_collection(v));
    RegionRaster r = rasterize([&](const StabilityPoint& p) { return quiver_region_test(c, p); }, w, s, g.threads);

    std::vector<SvgLayer> layers;
    static const char* colors[] = {"#6a0dad", "#d1495b", "#00798c"};
    for (size_t i = 0; i < 3; ++i) {
        const auto& cw = rep["canonical_walls"][i];
        if (!cw.contains("curves")) continue;
        std::vector<Polyline> pls;
        for (const auto& pl : cw["curves"]) {
            Polyline p;
            p.closed = pl["closed"].get<bool>();
            for (const auto& pt : pl["points"]) p.pts.emplace_back(pt[0].get<double>(), pt[1].get<double>());
            pls.push_back(std::move(p));
        }
        layers.push_back({"canonical-" + std::to_string(i + 1), colors[i], std::move(pls)});
    }
    std::ostringstream svg;
    write_svg(svg, w, &r, layers);
    std::ostringstream csv;
    write_csv(csv, r);
    emit(a.out_dir + "/report.json", dump(rep));
    emit(a.out_dir + "/report.svg", svg.str());
    emit(a.out_dir + "/quiver_region.csv", csv.str());
    return 0;
}

int fail(std::string_view code, const std::string& message) {
    json j = {{"error", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability-condition computations on Fano threefolds"};
    app.set_version_flag("--version", std::string("stabwalls ") + STABWALLS_VERSION);
    app.require_subcommand(1);
    Common g;
    app.add_option("--registry", g.registry, "Variety registry file");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--variety", g.variety, "Variety name")->capture_default_str();
        sub->add_option("--s", g.s, "Parameter s (p/q or decimal)")->capture_default_str();
        sub->add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    };

    RegionArgs ra;
    auto* region = app.add_subcommand("region", "Rasterize a region predicate to CSV/SVG");
    common(region);
    region->add_option("--window", ra.window, "beta_min,beta_max,t_min,t_max")->capture_default_str();
    region->add_option("--grid", ra.grid, "NBxNT cells")->capture_default_str();
    region->add_option("--predicate", ra.predicate, "quiver | heart | bar | search")->capture_default_str();
    region->add_option("--dim", ra.dim, "Dimension vector for --predicate bar");
    region->add_option("--mutations", ra.word, "Mutation word applied first, e.g. L2,R0");
    region->add_option("--csv", ra.csv, "CSV output (default stdout)");
    region->add_option("--svg", ra.svg, "SVG output");
    region->add_flag("!--no-walls", ra.walls, "Omit wall curves from the SVG");

    WallsArgs wa;
    auto* walls = app.add_subcommand("walls", "Walls for a dimension vector");
    common(walls);
    walls->add_option("--charge", wa.charge, "Instanton charge c");
    walls->add_option("--dim", wa.dim, "Dimension vector a0,a1,a2,a3");
    walls->add_option("--window", wa.window, "beta_min,beta_max,t_min,t_max")->capture_default_str();
    walls->add_option("--grid", wa.grid, "Sampling grid NBxNT")->capture_default_str();
    walls->add_flag("!--no-positivity", wa.positivity, "Skip the rho >= 0 filter");
    walls->add_flag("!--no-bogomolov", wa.bogomolov, "Skip the Q >= 0 filter");
    walls->add_flag("--restrict", wa.restrict_region, "Only sample inside the quiver region and the bar region of --dim");
    walls->add_option("--out", wa.out, "JSON output (default stdout)");

    MutateArgs ma;
    auto* mutate = app.add_subcommand("mutate", "Mutate the canonical collection");
    common(mutate);
    mutate->add_option("--word", ma.word, "Mutations applied left to right, e.g. L2,R0");
    mutate->add_flag("--shifted", ma.shifted, "Apply the shifts (3,2,1,0)");
    mutate->add_option("--out", ma.out, "JSON output (default stdout)");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "Mutation-orbit search at given points");
    common(search);
    search->add_option("--points", sa.points, "CSV with beta,t[,s] per line")->required();
    search->add_option("--depth", sa.depth, "Orbit depth")->capture_default_str();
    search->add_option("--out", sa.out, "JSON output (default stdout)");

    QuiverArgs qa;
    auto* quiver = app.add_subcommand("quiver", "Kronecker quiver numerics");
    quiver->add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    quiver->add_option("--kronecker", qa.kronecker, "Number of arrows")->capture_default_str();
    quiver->add_option("--dims", qa.dims, "Dimension vector p,q")->capture_default_str();
    quiver->add_option("--theta", qa.theta, "auto or a,b")->capture_default_str();
    quiver->add_option("--rep", qa.rep, "Representation JSON (default: seeded random)");
    quiver->add_option("--seed", qa.seed, "Seed")->capture_default_str();
    quiver->add_option("--budget", qa.budget, "Random subspaces tried")->capture_default_str();
    quiver->add_option("--out", qa.out, "JSON output (default stdout)");

    ReportArgs rpa;
    auto* report = app.add_subcommand("report", "Instanton report with region SVG");
    common(report);
    report->add_option("--charge", rpa.charge, "Instanton charge c")->capture_default_str();
    report->add_option("--out-dir", rpa.out_dir, "Output directory")->capture_default_str();
    report->add_option("--window", rpa.window, "beta_min,beta_max,t_min,t_max")->capture_default_str();
    report->add_option("--grid", rpa.grid, "NBxNT cells")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        if (*region) return cmd_region(g, ra);
        if (*walls) return cmd_walls(g, wa);
        if (*mutate) return cmd_mutate(g, ma);
        if (*search) return cmd_search(g, sa);
        if (*quiver) return cmd_quiver(g, qa);
        if (*report) return cmd_report(g, rpa);
    } catch (const Error& e) {
        return fail(error_code_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
