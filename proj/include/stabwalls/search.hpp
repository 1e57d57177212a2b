#pragma once

// Mutation-orbit search for points where a collection generates the heart.

#include "stabwalls/regions.hpp"

#include <optional>

namespace stabwalls {

/// Every E_j[3-j] of the ext-shifted collection lies in <A, A[1]>.
bool appendix_conditions(const ExceptionalCollection& c, const StabilityPoint& p);

/// Z = -tau + i rho of each effective class. Throws ZeroCentralCharge.
std::vector<std::pair<Rational, Rational>> central_charges(const ExceptionalCollection& c, const StabilityPoint& p);

/// Steps k in 0..steps with every Z in the closed half-plane rotated by k pi/steps.
std::vector<int> halfplane_sweep(const ExceptionalCollection& c, const StabilityPoint& p, int steps = 100);

/// Rational, monotone stand-in for the angle, in [0, 4).
Rational diamond_angle(const Rational& x, const Rational& y);

struct AngleInterval {
    Rational lo, hi;  // diamond units, 0..2 covers rotations 0..pi
    bool hi_closed = false;
};

struct HalfplaneResult {
    bool feasible = false;
    std::vector<AngleInterval> intervals;
};

/// Rotation in radians for a diamond angle in [0, 2].
double diamond_to_radians(const Rational& a);
HalfplaneResult halfplane_exact(const ExceptionalCollection& c, const StabilityPoint& p);
/// Same test on raw vectors (x, y).
HalfplaneResult halfplane_exact(const std::vector<std::pair<Rational, Rational>>& z);
std::vector<int> halfplane_sweep(const std::vector<std::pair<Rational, Rational>>& z, int steps);

/// Breadth-first over L0, L1, L2, R0, R1, R2, deduplicated on (v, 3 - position).
std::vector<ExceptionalCollection> mutation_orbit(const ExceptionalCollection& c, int depth);
std::string orbit_key(const ExceptionalCollection& c);

struct SearchHit {
    std::string word;
    StabilityPoint point;
    HalfplaneResult halfplane;
};

struct SearchReport {
    std::string variety;
    int depth = 0;
    long collections = 0;
    long explored = 0;
    long failing = 0;
    long unknown = 0;  // counted in failing too
    std::vector<SearchHit> passing;
    std::vector<StabilityPoint> points;
    bool numeric_necessary_only = false;
};

SearchReport run_search(const VarietyPtr& variety, const std::vector<StabilityPoint>& points, int depth,
                        int threads = 0);

nlohmann::json to_json(const HalfplaneResult& h);
nlohmann::json to_json(const SearchReport& r);

}  // namespace stabwalls
