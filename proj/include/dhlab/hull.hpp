#pragma once

// Exact placing (beneath-beyond) triangulation of the convex hull of a point
// set in dimension <= 6.

#include "dhlab/linalg.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace dhlab {

inline constexpr std::size_t kMaxHullDimension = 6;

using Point = std::vector<Rational>;

inline Rational determinant(Matrix m) {
    const std::size_t n = m.size();
    Rational det{1};
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

/// Sign of det(q1 - q0, ..., q_{l-1} - q0, p - q0) for a facet q0..q_{l-1}.
inline int orientation(const std::vector<const Point*>& facet, const Point& p) {
    const Point& o = *facet.front();
    Matrix m;
    for (std::size_t i = 1; i < facet.size(); ++i) {
        Vector row(o.size());
        for (std::size_t k = 0; k < o.size(); ++k) row[k] = (*facet[i])[k] - o[k];
        m.push_back(std::move(row));
    }
    Vector row(o.size());
    for (std::size_t k = 0; k < o.size(); ++k) row[k] = p[k] - o[k];
    m.push_back(std::move(row));
    return sgn(determinant(std::move(m)));
}

/// Simplices (as index lists into `points`) of a triangulation of conv(points).
inline std::vector<std::vector<std::size_t>> hull_triangulation(const std::vector<Point>& points) {
    if (points.empty()) throw InputError("vertex_hull: no points");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw InputError("vertex_hull: zero-dimensional points");
    if (dim > kMaxHullDimension) throw InputError("vertex_hull: dimension " + std::to_string(dim) + " exceeds 6");
    for (const auto& p : points)
        if (p.size() != dim) throw InputError("vertex_hull: points of mixed dimension");

    // initial simplex: greedily grow an affinely independent set
    std::vector<std::size_t> start{0};
    RowSpace span(dim);
    for (std::size_t i = 1; i < points.size() && start.size() < dim + 1; ++i) {
        Vector d(dim);
        for (std::size_t k = 0; k < dim; ++k) d[k] = points[i][k] - points[0][k];
        if (span.insert(d)) start.push_back(i);
    }
    if (start.size() != dim + 1) throw InputError("vertex_hull: points are not full-dimensional (degenerate polytope)");

    std::vector<std::vector<std::size_t>> simplices{start};
    // boundary facet (sorted indices) -> opposite vertex of its unique simplex
    std::map<std::vector<std::size_t>, std::size_t> boundary;
    auto toggle = [&](std::vector<std::size_t> facet, std::size_t opposite) {
        std::sort(facet.begin(), facet.end());
        auto [it, inserted] = boundary.try_emplace(facet, opposite);
        if (!inserted) boundary.erase(it);
    };
    auto facets_of = [](const std::vector<std::size_t>& s) {
        std::vector<std::pair<std::vector<std::size_t>, std::size_t>> out;
        for (std::size_t skip = 0; skip < s.size(); ++skip) {
            std::vector<std::size_t> f;
            for (std::size_t k = 0; k < s.size(); ++k)
                if (k != skip) f.push_back(s[k]);
            out.emplace_back(std::move(f), s[skip]);
        }
        return out;
    };
    for (auto& [f, opp] : facets_of(start)) toggle(f, opp);

    std::vector<bool> used(points.size(), false);
    for (auto i : start) used[i] = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (used[i]) continue;
        const Point& p = points[i];
        std::vector<std::vector<std::size_t>> visible;
        for (const auto& [facet, opposite] : boundary) {
            std::vector<const Point*> fp;
            for (auto k : facet) fp.push_back(&points[k]);
            const int side_p = orientation(fp, p);
            if (side_p != 0 && side_p == -orientation(fp, points[opposite])) visible.push_back(facet);
        }
        for (const auto& facet : visible) {
            std::vector<std::size_t> s = facet;
            s.push_back(i);
            for (auto& [f, opp] : facets_of(s)) toggle(f, opp);
            simplices.push_back(std::move(s));
        }
    }
    return simplices;
}

} // namespace dhlab
