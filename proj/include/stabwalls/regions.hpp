#pragma once

// Heart membership of shifted sheaf classes, quiver regions, rasters and
// marching-squares extraction of wall curves.

#include "stabwalls/exceptional.hpp"
#include "stabwalls/stability.hpp"

#include <functional>
#include <iosfwd>
#include <optional>

namespace stabwalls {

/// The k in {0,1,2} with G[k] in A at p, for a tilt-stable sheaf class G.
/// Throws UnknownRegion for spinor twists on Q_3 left of their slope.
int heart_shift(const ChernCharacter& ch, const StabilityPoint& p);

/// G[shift] in A at p. shift must lie in 0..3.
bool placement(const ChernCharacter& ch, int shift, const StabilityPoint& p);

/// obj in <A, A[1]>.
bool in_double_heart(const ExceptionalObject& obj, const StabilityPoint& p);

/// 1-based index of the first k with p inside (or on) every wall between the
/// effective classes of E_k and E_i; 0 when none or when a member leaves the
/// double heart.
int quiver_region_test(const ExceptionalCollection& c, const StabilityPoint& p);

/// E_i[3-i] in A on the support (a0 = 0), or E_i[2-i] in A (a3 = 0).
bool bar_region_test(const DimensionVector& dim, const ExceptionalCollection& c, const StabilityPoint& p);

struct RegionWindow {
    Rational beta_min, beta_max, t_min, t_max;
    int n_beta = 2, n_t = 2;

    /// Checks beta_min < beta_max, 0 < t_min < t_max and n >= 2.
    void validate() const;
    Rational beta_center(int j) const;
    Rational t_center(int i) const;
    Rational beta_corner(int j) const;  // j in 0..n_beta
    Rational t_corner(int i) const;
    /// "bmin,bmax,tmin,tmax" and "NBxNT".
    static RegionWindow parse(const std::string& bounds, const std::string& grid);
};

struct RegionRaster {
    RegionWindow window;
    std::vector<int> codes;  // row-major, rows run over t; -1 = unknown

    int at(int i_t, int j_beta) const { return codes[static_cast<size_t>(i_t * window.n_beta + j_beta)]; }
};

using RegionPredicate = std::function<int(const StabilityPoint&)>;

/// Evaluates at cell centres; rows in parallel. UnknownRegion becomes -1.
RegionRaster rasterize(const RegionPredicate& pred, const RegionWindow& w, const Rational& s, int threads = 0);

void write_csv(std::ostream& out, const RegionRaster& r);

struct EdgeCrossing {
    // exact edge endpoints with a strict sign change or a zero at the first
    Rational beta0, t0, beta1, t1;
    double beta, t;  // interpolated
};

struct Polyline {
    std::vector<std::pair<double, double>> pts;  // (beta, t)
    bool closed = false;
};

struct CurveSet {
    std::vector<Polyline> polylines;
    std::vector<EdgeCrossing> crossings;
};

/// Marching squares on the exact sign of the wall on the corner grid.
/// Throws IdenticallyZero for the zero polynomial.
CurveSet extract_curves(const WallPolynomial& poly, const RegionWindow& w);

struct SvgLayer {
    std::string label;
    std::string color;
    std::vector<Polyline> curves;
};

/// (beta, alpha) axes, alpha = sqrt t. Raster cells with code > 0 are filled.
void write_svg(std::ostream& out, const RegionWindow& w, const RegionRaster* raster, const std::vector<SvgLayer>& layers);

}  // namespace stabwalls
