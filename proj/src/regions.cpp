#include "stabwalls/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace stabwalls {

namespace {

// Twists S(k) of the spinor bundle: rank 2 with odd c1 on the quadric.
bool is_spinor_twist(const ChernCharacter& ch) {
    const auto& v = *ch.variety();
    if (v.degree != 2 || v.index != 3) return false;
    if (abs(ch[0]) != 2 || ch[1].get_den() != 1) return false;
    return mpz_odd_p(ch[1].get_num_mpz_t()) != 0;
}

}  // namespace

int heart_shift(const ChernCharacter& ch, const StabilityPoint& p) {
    if (ch.is_zero()) throw Error(ErrorCode::ZeroCentralCharge, "placement of the zero class");
    Slope mu = mu_slope(ch);
    if (is_spinor_twist(ch) && !mu.infinite && p.beta < mu.value)
        throw Error(ErrorCode::UnknownRegion,
                    "spinor class " + ch.str() + " is only known tilt-stable for beta >= " + to_string(mu.value));
    Slope v = nu(ch, p);
    bool nu_pos = v.greater_than(Rational(0));
    if (mu.greater_than(p.beta)) return nu_pos ? 0 : 1;
    return nu_pos ? 1 : 2;
}

bool placement(const ChernCharacter& ch, int shift, const StabilityPoint& p) {
    if (shift < 0 || shift > 3) throw Error(ErrorCode::InvalidShift, "shift " + std::to_string(shift) + " not in 0..3");
    return heart_shift(ch, p) == shift;
}

bool in_double_heart(const ExceptionalObject& obj, const StabilityPoint& p) {
    if (obj.shift < 0 || obj.shift > 3)
        throw Error(ErrorCode::InvalidShift, "shift " + std::to_string(obj.shift) + " not in 0..3");
    int k = heart_shift(obj.ch, p);
    return k == obj.shift || k == obj.shift - 1;
}

int quiver_region_test(const ExceptionalCollection& c, const StabilityPoint& p) {
    for (const auto& o : c.objects)
        if (!in_double_heart(o, p)) return 0;
    std::vector<BridgelandCharge> z;
    for (const auto& o : c.objects) z.push_back(bridgeland_Z(o.effective(), p));
    for (size_t k = 0; k < z.size(); ++k) {
        bool ok = true;
        for (size_t i = 0; i < z.size() && ok; ++i) {
            if (i == k) continue;
            ok = side_of(z[k].tau * z[i].rho - z[i].tau * z[k].rho) != Side::Outside;
        }
        if (ok) return static_cast<int>(k) + 1;
    }
    return 0;
}

bool bar_region_test(const DimensionVector& dim, const ExceptionalCollection& c, const StabilityPoint& p) {
    if (c.size() != 4) throw Error(ErrorCode::UnsupportedShape, "bar regions need four objects");
    int offset;
    if (dim[0] == 0)
        offset = 3;
    else if (dim[3] == 0)
        offset = 2;
    else
        throw Error(ErrorCode::UnsupportedShape, "bar region needs a0 = 0 or a3 = 0, got " + dim.str());
    for (int i = 0; i < 4; ++i) {
        if (dim[static_cast<size_t>(i)] == 0) continue;
        if (!placement(c[static_cast<size_t>(i)].ch, offset - i, p)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

void RegionWindow::validate() const {
    if (!(beta_min < beta_max)) throw Error(ErrorCode::DegenerateWindow, "need beta_min < beta_max");
    if (!(t_min > 0 && t_min < t_max)) throw Error(ErrorCode::DegenerateWindow, "need 0 < t_min < t_max");
    if (n_beta < 2 || n_t < 2) throw Error(ErrorCode::DegenerateWindow, "grid must be at least 2x2");
}

Rational RegionWindow::beta_center(int j) const {
    return beta_min + (beta_max - beta_min) * make_rational(2 * j + 1, 2 * n_beta);
}

Rational RegionWindow::t_center(int i) const { return t_min + (t_max - t_min) * make_rational(2 * i + 1, 2 * n_t); }

Rational RegionWindow::beta_corner(int j) const { return beta_min + (beta_max - beta_min) * make_rational(j, n_beta); }

Rational RegionWindow::t_corner(int i) const { return t_min + (t_max - t_min) * make_rational(i, n_t); }

RegionWindow RegionWindow::parse(const std::string& bounds, const std::string& grid) {
    std::vector<Rational> b;
    std::stringstream ss(bounds);
    std::string item;
    while (std::getline(ss, item, ',')) b.push_back(parse_rational(item));
    if (b.size() != 4) throw Error(ErrorCode::Parse, "window needs beta_min,beta_max,t_min,t_max");
    RegionWindow w{b[0], b[1], b[2], b[3], 2, 2};
    auto x = grid.find('x');
    if (x == std::string::npos) throw Error(ErrorCode::Parse, "grid must look like 400x300");
    try {
        size_t used = 0;
        w.n_beta = std::stoi(grid.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(grid);
        std::string rest = grid.substr(x + 1);
        w.n_t = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(grid);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::Parse, "grid must look like 400x300, got '" + grid + "'");
    }
    w.validate();
    return w;
}

RegionRaster rasterize(const RegionPredicate& pred, const RegionWindow& w, const Rational& s, int threads) {
    w.validate();
    RegionRaster r{w, std::vector<int>(static_cast<size_t>(w.n_beta) * static_cast<size_t>(w.n_t), 0)};
    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min(n, w.n_t);
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
    auto work = [&](int id) {
        try {
            for (int i = id; i < w.n_t; i += n) {
                Rational t = w.t_center(i);
                for (int j = 0; j < w.n_beta; ++j) {
                    int code;
                    try {
                        code = pred(StabilityPoint{w.beta_center(j), t, s});
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::UnknownRegion) throw;
                        code = -1;
                    }
                    r.codes[static_cast<size_t>(i * w.n_beta + j)] = code;
                }
            }
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
    return r;
}

void write_csv(std::ostream& out, const RegionRaster& r) {
    const auto& w = r.window;
    out << "beta,t,code,beta_exact,t_exact\n";
    std::vector<std::string> beta_dec, beta_ex;
    for (int j = 0; j < w.n_beta; ++j) {
        Rational b = w.beta_center(j);
        beta_dec.push_back(to_decimal(b));
        beta_ex.push_back(to_string(b));
    }
    for (int i = 0; i < w.n_t; ++i) {
        Rational t = w.t_center(i);
        std::string td = to_decimal(t), te = to_string(t);
        for (int j = 0; j < w.n_beta; ++j)
            out << beta_dec[static_cast<size_t>(j)] << ',' << td << ',' << r.at(i, j) << ','
                << beta_ex[static_cast<size_t>(j)] << ',' << te << '\n';
    }
}

// ---------------------------------------------------------------------------
// Marching squares

namespace {

struct Segment {
    long e0, e1;  // edge ids
};

}  // namespace

CurveSet extract_curves(const WallPolynomial& poly, const RegionWindow& w) {
    w.validate();
    if (poly.identically_zero())
        throw Error(ErrorCode::IdenticallyZero, "wall " + poly.label_e + "/" + poly.label_f + " vanishes identically");
    const int nb = w.n_beta, nt = w.n_t;
    std::vector<Rational> bs(static_cast<size_t>(nb + 1)), ts(static_cast<size_t>(nt + 1));
    for (int j = 0; j <= nb; ++j) bs[static_cast<size_t>(j)] = w.beta_corner(j);
    for (int i = 0; i <= nt; ++i) ts[static_cast<size_t>(i)] = w.t_corner(i);

    // Corner values: exact sign, double for interpolation.
    std::vector<int> sg(static_cast<size_t>((nb + 1) * (nt + 1)));
    std::vector<double> val(sg.size());
    auto idx = [&](int i, int j) { return static_cast<size_t>(i * (nb + 1) + j); };
    for (int i = 0; i <= nt; ++i) {
        for (int j = 0; j <= nb; ++j) {
            Rational v = poly.poly(bs[static_cast<size_t>(j)], ts[static_cast<size_t>(i)]);
            sg[idx(i, j)] = sgn(v) < 0 ? -1 : 1;  // zero counts as outside
            val[idx(i, j)] = v.get_d();
        }
    }

    // Edge ids: horizontal (i, j)-(i, j+1) -> i*nb + j; vertical (i, j)-(i+1, j) -> H + i*(nb+1) + j.
    const long H = static_cast<long>(nt + 1) * nb;
    auto h_edge = [&](int i, int j) { return static_cast<long>(i) * nb + j; };
    auto v_edge = [&](int i, int j) { return H + static_cast<long>(i) * (nb + 1) + j; };

    CurveSet out;
    std::map<long, size_t> crossing_of;
    auto crossing = [&](long e) {
        auto it = crossing_of.find(e);
        if (it != crossing_of.end()) return it->second;
        int i0, j0, i1, j1;
        if (e < H) {
            i0 = i1 = static_cast<int>(e / nb);
            j0 = static_cast<int>(e % nb);
            j1 = j0 + 1;
        } else {
            long f = e - H;
            i0 = static_cast<int>(f / (nb + 1));
            j0 = j1 = static_cast<int>(f % (nb + 1));
            i1 = i0 + 1;
        }
        double v0 = val[idx(i0, j0)], v1 = val[idx(i1, j1)];
        double a = (v0 == v1) ? 0.5 : v0 / (v0 - v1);
        a = std::clamp(a, 0.0, 1.0);
        EdgeCrossing c{bs[static_cast<size_t>(j0)], ts[static_cast<size_t>(i0)], bs[static_cast<size_t>(j1)],
                       ts[static_cast<size_t>(i1)], 0, 0};
        c.beta = c.beta0.get_d() + a * (c.beta1.get_d() - c.beta0.get_d());
        c.t = c.t0.get_d() + a * (c.t1.get_d() - c.t0.get_d());
        out.crossings.push_back(c);
        crossing_of[e] = out.crossings.size() - 1;
        return out.crossings.size() - 1;
    };

    std::vector<Segment> segs;
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nb; ++j) {
            int c0 = sg[idx(i, j)], c1 = sg[idx(i, j + 1)], c2 = sg[idx(i + 1, j + 1)], c3 = sg[idx(i + 1, j)];
            long eb = h_edge(i, j), er = v_edge(i, j + 1), et = h_edge(i + 1, j), el = v_edge(i, j);
            std::vector<long> cut;
            if (c0 != c1) cut.push_back(eb);
            if (c1 != c2) cut.push_back(er);
            if (c2 != c3) cut.push_back(et);
            if (c3 != c0) cut.push_back(el);
            if (cut.size() == 2) {
                segs.push_back({cut[0], cut[1]});
            } else if (cut.size() == 4) {
                Rational centre = poly.poly((bs[static_cast<size_t>(j)] + bs[static_cast<size_t>(j + 1)]) / 2,
                                            (ts[static_cast<size_t>(i)] + ts[static_cast<size_t>(i + 1)]) / 2);
                int cs = sgn(centre) < 0 ? -1 : 1;
                if (cs == c0) {
                    segs.push_back({eb, er});
                    segs.push_back({et, el});
                } else {
                    segs.push_back({el, eb});
                    segs.push_back({er, et});
                }
            }
        }
    }

    // Chain segments through shared edges.
    std::map<long, std::vector<size_t>> at_edge;
    for (size_t k = 0; k < segs.size(); ++k) {
        at_edge[segs[k].e0].push_back(k);
        at_edge[segs[k].e1].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    auto walk = [&](size_t start, long from) {
        Polyline pl;
        auto push = [&](long e) {
            const auto& c = out.crossings[crossing(e)];
            pl.pts.emplace_back(c.beta, c.t);
        };
        push(from);
        size_t cur = start;
        long edge = from;
        for (;;) {
            used[cur] = true;
            long next = segs[cur].e0 == edge ? segs[cur].e1 : segs[cur].e0;
            push(next);
            edge = next;
            size_t nxt = segs.size();
            for (size_t k : at_edge[edge])
                if (!used[k]) nxt = k;
            if (nxt == segs.size()) break;
            cur = nxt;
        }
        return pl;
    };
    // Open chains start at edges touched once.
    for (size_t k = 0; k < segs.size(); ++k) {
        if (used[k]) continue;
        for (long e : {segs[k].e0, segs[k].e1}) {
            if (!used[k] && at_edge[e].size() == 1) out.polylines.push_back(walk(k, e));
        }
    }
    for (size_t k = 0; k < segs.size(); ++k) {
        if (used[k]) continue;
        Polyline pl = walk(k, segs[k].e0);
        pl.closed = true;
        out.polylines.push_back(std::move(pl));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

const char* kPalette[] = {"#f2c14e", "#4d9de0", "#7dce82", "#e15554", "#9b5de5"};

}  // namespace

void write_svg(std::ostream& out, const RegionWindow& w, const RegionRaster* raster, const std::vector<SvgLayer>& layers) {
    w.validate();
    double b0 = w.beta_min.get_d(), b1 = w.beta_max.get_d();
    double a0 = std::sqrt(w.t_min.get_d()), a1 = std::sqrt(w.t_max.get_d());
    double width = b1 - b0, height = a1 - a0;
    double stroke = std::max(width, height) / 400.0;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b0) << ' ' << num(-a1) << ' ' << num(width)
        << ' ' << num(height) << "\" width=\"800\" height=\"" << num(800.0 * height / width) << "\""
        << " preserveAspectRatio=\"none\">\n";
    out << "<!-- x = beta, y = -alpha, alpha = sqrt(t) -->\n";
    if (raster) {
        out << "<g id=\"raster\" stroke=\"none\">\n";
        for (int i = 0; i < w.n_t; ++i) {
            double ya = std::sqrt(w.t_corner(i).get_d()), yb = std::sqrt(w.t_corner(i + 1).get_d());
            int j = 0;
            while (j < w.n_beta) {
                int code = raster->at(i, j);
                int k = j;
                while (k < w.n_beta && raster->at(i, k) == code) ++k;
                if (code != 0) {
                    const char* fill = code < 0 ? "#cccccc" : kPalette[(code - 1) % 5];
                    double xa = w.beta_corner(j).get_d(), xb = w.beta_corner(k).get_d();
                    out << "<rect x=\"" << num(xa) << "\" y=\"" << num(-yb) << "\" width=\"" << num(xb - xa)
                        << "\" height=\"" << num(yb - ya) << "\" fill=\"" << fill << "\"/>\n";
                }
                j = k;
            }
        }
        out << "</g>\n";
    }
    for (const auto& layer : layers) {
        out << "<g id=\"" << layer.label << "\" fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\""
            << num(stroke) << "\">\n";
        for (const auto& pl : layer.curves) {
            out << "<path d=\"";
            for (size_t k = 0; k < pl.pts.size(); ++k) {
                double a = std::sqrt(std::max(0.0, pl.pts[k].second));
                out << (k == 0 ? "M" : " L") << num(pl.pts[k].first) << ' ' << num(-a);
            }
            if (pl.closed) out << " Z";
            out << "\"/>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
}

}  // namespace stabwalls
