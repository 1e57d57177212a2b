#pragma once

// Quivers, King weights and Kronecker representations.

#include "stabwalls/exceptional.hpp"
#include "stabwalls/linalg.hpp"
#include "stabwalls/stability.hpp"

#include <cstdint>
#include <optional>

namespace stabwalls {

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> arrows;  // (source, target)
    long relation_count = 0;                  // metadata only

    void validate() const;
};

Quiver kronecker(int n);
/// Three vertices, n+1 arrows a->b and b->c, relations x_i y_j - x_j y_i.
Quiver beilinson(int n);

using QDimension = std::vector<long>;

/// sum over arrows d_s d_t - sum d_i^2 + 1.
long moduli_dimension(const Quiver& q, const QDimension& d);

/// theta_i = tau(e_i) rho(v) - tau(v) rho(e_i), v the total class.
/// theta.total = 0, and theta.sub > 0 iff lambda(sub) > lambda(total) when both rho > 0.
std::vector<Rational> theta_from_point(const ExceptionalCollection& c, const DimensionVector& total,
                                       const StabilityPoint& p);

/// theta.d' != 0 for all 0 < d' < d.
bool coprime_check(const std::vector<Rational>& theta, const QDimension& d);

struct KroneckerRep {
    int n = 0;
    int p_dim = 0, q_dim = 0;
    std::vector<Matrix> maps;  // q_dim x p_dim each

    void validate() const;
    static KroneckerRep random(int n, int p_dim, int q_dim, std::uint64_t seed, long range = 3);
    static KroneckerRep from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Reduced basis of the sum of T_l(span I). Throws DependentVectors.
Matrix closure(const KroneckerRep& rep, const Matrix& basis_i);

/// Every T_l maps span(I) into span(J).
bool is_subrepresentation(const KroneckerRep& rep, const Matrix& basis_i, const Matrix& basis_j);
/// span(a) inside span(b).
bool span_contains(const Matrix& b, const Matrix& a);

struct Destabilizer {
    Matrix basis_i, basis_j;
    Rational value;  // theta . (dim I, dim J)
    long trial;      // -1 for a coordinate subspace
};

/// Coordinate subspaces first, then `budget` seeded random ones.
/// Not finding one proves nothing.
std::optional<Destabilizer> destabilizer_search(const KroneckerRep& rep, const std::vector<Rational>& theta,
                                                int budget, std::uint64_t seed, int threads = 0);

}  // namespace stabwalls
