#pragma once

#include "dhlab/rational.hpp"

#include <vector>

namespace dhlab {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>; // row-major

/// Reduced row echelon form of a row space. Rows are normalized so that each
/// pivot is 1 and every other entry of a pivot column is 0.
class RowSpace {
public:
    explicit RowSpace(std::size_t columns) : cols_(columns) {}
    RowSpace(const Matrix& rows, std::size_t columns) : cols_(columns) {
        for (const auto& r : rows) insert(r);
    }

    std::size_t columns() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const Matrix& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool is_pivot(std::size_t col) const {
        for (auto p : pivots_)
            if (p == col) return true;
        return false;
    }

    /// v minus its projection along pivots: zero iff v lies in the space.
    Vector reduce(Vector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational f = v[pivots_[i]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c)
                if (rows_[i][c] != 0) v[c] -= f * rows_[i][c];
        }
        return v;
    }

    bool contains(const Vector& v) const {
        for (const auto& x : reduce(v))
            if (x != 0) return false;
        return true;
    }

    /// Adds v; returns false when v was already in the span.
    bool insert(const Vector& v) {
        if (v.size() != cols_) throw InputError("RowSpace::insert: dimension mismatch");
        Vector r = reduce(v);
        std::size_t pivot = cols_;
        for (std::size_t c = 0; c < cols_; ++c)
            if (r[c] != 0) {
                pivot = c;
                break;
            }
        if (pivot == cols_) return false;
        const Rational lead = r[pivot];
        for (auto& x : r) x /= lead;
        for (auto& row : rows_) {
            const Rational f = row[pivot];
            if (f == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c) row[c] -= f * r[c];
        }
        // keep rows sorted by pivot column
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < pivot) ++at;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(r));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
        return true;
    }

private:
    std::size_t cols_;
    Matrix rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return RowSpace(m, m.front().size()).rank();
}

/// Basis of {x : m x = 0}; `columns` is the length of x.
inline Matrix nullspace(const Matrix& m, std::size_t columns) {
    RowSpace rs(m, columns);
    Matrix basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (rs.is_pivot(free)) continue;
        Vector x(columns);
        x[free] = 1;
        for (std::size_t i = 0; i < rs.rank(); ++i) x[rs.pivots()[i]] = -rs.rows()[i][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace dhlab
