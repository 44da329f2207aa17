#pragma once

// Dense exact linear algebra over a field: row reduction, rank, null space,
// and solving A x = b.

#include "cohiggs/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cohiggs::linalg {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class F>
using Vector = std::vector<F>;

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t m = a.size();
    const std::size_t n = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && is_zero(a[p][col])) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        const F inv = F(1) / a[row][col];
        for (auto& x : a[row]) x = x * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || is_zero(a[i][col])) continue;
            const F c = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] = a[i][j] - c * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> a) {
    return rref(a).size();
}

/// Basis of {x : A x = 0}; `cols` is needed when A has no rows.
template <class F>
std::vector<Vector<F>> null_space(Matrix<F> a, std::size_t cols) {
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector<F>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vector<F> v(cols, F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, or nullopt when inconsistent.
template <class F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b, std::size_t cols) {
    Matrix<F> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vector<F> x(cols, F(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

/// Determinant by elimination (independent of the cofactor routine on forms).
template <class F>
F det(Matrix<F> a) {
    const std::size_t n = a.size();
    F d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) return F(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d = d * a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a[i][c])) continue;
            const F f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return d;
}

}  // namespace cohiggs::linalg
