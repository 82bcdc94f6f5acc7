#ifndef TROPONEG_LINALG_HPP
#define TROPONEG_LINALG_HPP

// Small exact linear algebra over the rationals: row reduction, rank,
// null spaces and orthogonal projection. Matrices are lists of rows.

#include <cstddef>
#include <vector>

#include "troponeg/rational.hpp"

namespace troponeg::linalg {

using Matrix = std::vector<RationalVector>;

struct RowEchelon {
    Matrix rows;                     // reduced, nonzero rows only
    std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form; the nonzero rows form a canonical basis of
/// the row space.
inline RowEchelon rref(Matrix m, std::size_t columns) {
    RowEchelon out;
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < columns && lead_row < m.size(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[lead_row]);
        const Rational inv = 1 / m[lead_row][col];
        for (auto& x : m[lead_row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == lead_row || m[r][col] == 0) continue;
            const Rational factor = m[r][col];
            for (std::size_t c = col; c < columns; ++c) m[r][c] -= factor * m[lead_row][c];
        }
        out.pivots.push_back(col);
        ++lead_row;
    }
    m.resize(lead_row);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m, std::size_t columns) { return rref(m, columns).pivots.size(); }

/// Basis of {x : row . x = 0 for every row}.
inline Matrix nullspace(const Matrix& m, std::size_t columns) {
    RowEchelon e = rref(m, columns);
    std::vector<bool> is_pivot(columns, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(columns, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Pairwise orthogonal (unnormalised) basis of span(m).
inline Matrix orthogonal_basis(const Matrix& m) {
    Matrix q;
    for (const auto& v : m) {
        RationalVector w = v;
        for (const auto& b : q) {
            const Rational c = dot(w, b) / dot(b, b);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
        }
        if (!is_zero_vector(w)) q.push_back(std::move(w));
    }
    return q;
}

/// Orthogonal projection of v onto the complement of span(orthogonal).
inline RationalVector project_out(RationalVector v, const Matrix& orthogonal) {
    for (const auto& b : orthogonal) {
        const Rational c = dot(v, b) / dot(b, b);
        if (c == 0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
    return v;
}

/// Solves x . rows = target for x (target in the row space); nullopt otherwise.
inline std::optional<RationalVector> solve_combination(const Matrix& rows, const RationalVector& target) {
    const std::size_t k = rows.size();
    const std::size_t n = target.size();
    // Columns are the given rows; augmented system A x = target with A n x k.
    Matrix aug(n, RationalVector(k + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = rows[j][i];
        aug[i][k] = target[i];
    }
    RowEchelon e = rref(aug, k + 1);
    RationalVector x(k, Rational(0));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == k) return std::nullopt;
        x[e.pivots[r]] = e.rows[r][k];
    }
    return x;
}

/// Affine rank of a point set (dimension of its affine hull); -1 if empty.
inline long affine_rank(const std::vector<RationalVector>& points) {
    if (points.empty()) return -1;
    Matrix diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RationalVector d(points[i].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[i][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    return static_cast<long>(rank(diffs, points[0].size()));
}

}  // namespace troponeg::linalg

#endif  // TROPONEG_LINALG_HPP
