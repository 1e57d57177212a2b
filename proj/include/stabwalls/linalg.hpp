#pragma once

// Dense exact linear algebra over Q, small sizes only.

#include "stabwalls/rational.hpp"

#include <vector>

namespace stabwalls {

using Matrix = std::vector<std::vector<Rational>>;

struct RowEchelon {
    Matrix rows;              // reduced, zero rows dropped
    std::vector<int> pivots;  // pivot column per row
};

RowEchelon rref(Matrix m);
int rank(const Matrix& m);
Rational determinant(Matrix m);
/// Unique solution of m x = rhs; throws Singular.
std::vector<Rational> solve(Matrix m, std::vector<Rational> rhs);
Matrix transpose(const Matrix& m);
std::vector<Rational> mat_vec(const Matrix& m, const std::vector<Rational>& x);

}  // namespace stabwalls
