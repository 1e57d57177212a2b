#pragma once

// Walls for complexes with a given dimension vector.

#include "stabwalls/regions.hpp"

#include <optional>

namespace stabwalls {

enum class WallClass { IdenticallyZero, Canonical1, Canonical2, Canonical3, Other };
std::string_view wall_class_name(WallClass c);

struct WallRecord {
    DimensionVector sub;
    WallPolynomial poly;
    WallClass classification = WallClass::Other;
    std::optional<Rational> det_a;  // h(2c+k) - c g for [0,c,2c+k,c]
    std::optional<StabilityPoint> sample;
    std::optional<Side> sample_side;
};

/// 0 <= v <= dim, v != 0, v != dim, lexicographic.
std::vector<DimensionVector> subvectors(const DimensionVector& dim);

/// Three-by-three determinant in the pairwise walls of three consecutive
/// generators; equals wall_poly(ch_from_dim(dim_e), ch_from_dim(dim_f), s).
WallPolynomial determinant_wall(const DimensionVector& dim_e, const DimensionVector& dim_f,
                                const ExceptionalCollection& c, const Rational& s);

/// a d - b c.
Rational two_step_determinant_condition(long a, long b, long c, long d);

/// Upper part keeps the indices >= 3 - k.
std::pair<DimensionVector, DimensionVector> truncation_dims(const DimensionVector& dim, int k);

struct ReductionCheck {
    bool holds = false;
    Rational det_a;
    Rational f_minus_h;
    BiPoly kernel;  // wall of E_2[1] against E_1[2] + E_3
};

/// wall(E, F) = det(A) kernel + (f - h) wall(E, E_1[2]) for E = [0,c,2c+k,c], F = [0,f,g,h].
ReductionCheck wall_reduction_check(const ExceptionalCollection& canonical, long c_charge, long k,
                                    const DimensionVector& sub, const Rational& s);

/// Walls of dim against E_1[2], E_2[1] and E_3.
std::array<WallRecord, 3> canonical_walls(const DimensionVector& dim, const ExceptionalCollection& c,
                                          const Rational& s);

struct TriplePoint {
    Rational beta, t;
};
/// Rational common zeros with t > 0 of the three canonical walls, ascending.
std::vector<TriplePoint> triple_points(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s);
std::optional<TriplePoint> triple_point(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s);

struct WallFilters {
    bool positivity = true;  // rho(sub) >= 0
    bool bogomolov = true;   // Q(sub) >= 0
    int refine_steps = 24;
    /// When set, a sample only counts if the predicate is non-zero there.
    RegionPredicate region;
};

/// Non-zero walls of dim whose curve inside the window has a sample point
/// passing the filters for the subobject class.
std::vector<WallRecord> candidate_walls(const DimensionVector& dim, const ExceptionalCollection& c, const Rational& s,
                                        const RegionWindow& window, const WallFilters& filters = {}, int threads = 0);

nlohmann::json to_json(const WallRecord& r);

/// Canonical walls, triple point, truncations and subvector census for
/// [0,c,2c+2,c].
nlohmann::json instanton_report(long c_charge, const VarietyPtr& variety, const Rational& s,
                                const RegionWindow& curve_window);

}  // namespace stabwalls
