#include "stabwalls/linalg.hpp"

#include <utility>

namespace stabwalls {

RowEchelon rref(Matrix m) {
    RowEchelon out;
    if (m.empty()) return out;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Rational determinant(Matrix m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            std::swap(m[c], m[piv]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::vector<Rational> solve(Matrix m, std::vector<Rational> rhs) {
    size_t n = m.size();
    for (size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
    RowEchelon e = rref(std::move(m));
    if (e.pivots.size() != n || e.pivots.back() == static_cast<int>(n))
        throw Error(ErrorCode::Singular, "singular linear system");
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
    return x;
}

Matrix transpose(const Matrix& m) {
    if (m.empty()) return {};
    Matrix t(m[0].size(), std::vector<Rational>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

std::vector<Rational> mat_vec(const Matrix& m, const std::vector<Rational>& x) {
    std::vector<Rational> y(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

}  // namespace stabwalls
