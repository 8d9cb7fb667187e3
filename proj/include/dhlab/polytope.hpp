#pragma once

// Exact slice volumes of convex polytopes, used as an independent oracle for
// DH functions of toric circle actions.
//
// For a simplex with vertex heights h_0..h_l along a direction xi,
//     vol{x : <x, xi> <= t} / vol = (-1)^l * g_t[h_0, ..., h_l],
// the divided difference over the heights of g_t(s) = (t - s)_+^l. Repeated
// heights are confluent nodes of the divided difference, so no perturbation
// is needed. On each interval between consecutive distinct heights g_t is a
// polynomial in (t, s), so every divided difference is a polynomial in t.

#include "dhlab/fixed_points.hpp"
#include "dhlab/hull.hpp"
#include "dhlab/piecewise.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <variant>
#include <vector>

namespace dhlab {

struct Simplex {
    std::vector<Point> vertices; // l+1 points in R^l

    std::size_t dimension() const { return vertices.empty() ? 0 : vertices.front().size(); }

    Rational signed_scaled_volume() const {
        Matrix m;
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            Vector row(dimension());
            for (std::size_t k = 0; k < dimension(); ++k) row[k] = vertices[i][k] - vertices[0][k];
            m.push_back(std::move(row));
        }
        return determinant(std::move(m));
    }

    Rational volume() const { return abs(signed_scaled_volume()) / factorial(static_cast<unsigned>(dimension())); }

    void check() const {
        const std::size_t l = dimension();
        if (l == 0 || vertices.size() != l + 1) throw InputError("simplex needs l+1 vertices in R^l");
        for (const auto& v : vertices)
            if (v.size() != l) throw InputError("simplex vertices of mixed dimension");
        if (signed_scaled_volume() == 0) throw InputError("degenerate simplex (affinely dependent vertices)");
    }
};

struct PolytopeSpec;

struct BoxSpec {
    std::vector<std::pair<Rational, Rational>> sides; // [lo_i, hi_i]
};
struct StandardSimplexSpec {
    std::size_t dimension = 1;
    Rational scale{1}; // conv{0, scale e_1, ..., scale e_l}
};
struct ProductSpec {
    std::vector<PolytopeSpec> factors;
};
struct SimplicesSpec {
    std::vector<Simplex> simplices;
    bool trusted = false; // skip the pairwise interior-disjointness certificate
};
struct VertexHullSpec {
    std::vector<Point> points;
};

struct PolytopeSpec {
    std::variant<BoxSpec, StandardSimplexSpec, ProductSpec, SimplicesSpec, VertexHullSpec> kind;
};

inline std::size_t dimension(const PolytopeSpec& p) {
    struct Visitor {
        std::size_t operator()(const BoxSpec& b) const { return b.sides.size(); }
        std::size_t operator()(const StandardSimplexSpec& s) const { return s.dimension; }
        std::size_t operator()(const ProductSpec& pr) const {
            std::size_t d = 0;
            for (const auto& f : pr.factors) d += dimension(f);
            return d;
        }
        std::size_t operator()(const SimplicesSpec& s) const { return s.simplices.empty() ? 0 : s.simplices.front().dimension(); }
        std::size_t operator()(const VertexHullSpec& h) const { return h.points.empty() ? 0 : h.points.front().size(); }
    };
    return std::visit(Visitor{}, p.kind);
}

/// Closed-form volume where one exists (box, standard simplex, products of them).
inline std::optional<Rational> closed_form_volume(const PolytopeSpec& p) {
    struct Visitor {
        std::optional<Rational> operator()(const BoxSpec& b) const {
            Rational v{1};
            for (const auto& [lo, hi] : b.sides) v *= hi - lo;
            return v;
        }
        std::optional<Rational> operator()(const StandardSimplexSpec& s) const {
            return power(s.scale, static_cast<unsigned>(s.dimension)) / factorial(static_cast<unsigned>(s.dimension));
        }
        std::optional<Rational> operator()(const ProductSpec& pr) const {
            Rational v{1};
            for (const auto& f : pr.factors) {
                auto fv = closed_form_volume(f);
                if (!fv) return std::nullopt;
                v *= *fv;
            }
            return v;
        }
        std::optional<Rational> operator()(const SimplicesSpec&) const { return std::nullopt; }
        std::optional<Rational> operator()(const VertexHullSpec&) const { return std::nullopt; }
    };
    return std::visit(Visitor{}, p.kind);
}

namespace detail {

inline std::vector<Simplex> triangulate_box(const BoxSpec& b) {
    const std::size_t l = b.sides.size();
    if (l == 0) throw InputError("box of dimension 0");
    for (std::size_t i = 0; i < l; ++i)
        if (!(b.sides[i].first < b.sides[i].second)) throw InputError("box side " + std::to_string(i + 1) + " is degenerate");
    // Kuhn triangulation: one simplex per permutation of the axes
    std::vector<std::size_t> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Simplex> out;
    do {
        Simplex s;
        Point v(l);
        for (std::size_t i = 0; i < l; ++i) v[i] = b.sides[i].first;
        s.vertices.push_back(v);
        for (auto axis : perm) {
            v[axis] = b.sides[axis].second;
            s.vertices.push_back(v);
        }
        out.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Staircase triangulation of the product of two full-dimensional simplices.
inline std::vector<Simplex> simplex_product(const Simplex& a, const Simplex& b) {
    const std::size_t da = a.dimension();
    const std::size_t db = b.dimension();
    std::vector<Simplex> out;
    // monotone lattice paths (0,0) -> (da, db); bit set = step in b
    const std::size_t steps = da + db;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << steps); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != db) continue;
        std::size_t i = 0;
        std::size_t j = 0;
        Simplex s;
        auto push = [&] {
            Point p = a.vertices[i];
            p.insert(p.end(), b.vertices[j].begin(), b.vertices[j].end());
            s.vertices.push_back(std::move(p));
        };
        push();
        for (std::size_t k = 0; k < steps; ++k) {
            if ((mask >> k) & 1U)
                ++j;
            else
                ++i;
            push();
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Certifies that two simplices have disjoint interiors by a separating
/// facet hyperplane of one of them.
inline bool facet_separated(const Simplex& a, const Simplex& b) {
    auto separates = [](const Simplex& s, const Simplex& other) {
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
            std::vector<const Point*> facet;
            for (std::size_t k = 0; k < s.vertices.size(); ++k)
                if (k != skip) facet.push_back(&s.vertices[k]);
            const int inside = orientation(facet, s.vertices[skip]);
            bool all_outside = true;
            for (const auto& v : other.vertices)
                if (orientation(facet, v) == inside) {
                    all_outside = false;
                    break;
                }
            if (all_outside) return true;
        }
        return false;
    };
    return separates(a, b) || separates(b, a);
}

} // namespace detail

/// Interior-disjoint simplices covering the polytope.
inline std::vector<Simplex> triangulate(const PolytopeSpec& p) {
    struct Visitor {
        std::vector<Simplex> operator()(const BoxSpec& b) const { return detail::triangulate_box(b); }
        std::vector<Simplex> operator()(const StandardSimplexSpec& s) const {
            if (s.dimension == 0) throw InputError("standard simplex of dimension 0");
            if (s.scale <= 0) throw InputError("standard simplex scale must be positive");
            Simplex out;
            out.vertices.emplace_back(s.dimension);
            for (std::size_t i = 0; i < s.dimension; ++i) {
                Point v(s.dimension);
                v[i] = s.scale;
                out.vertices.push_back(std::move(v));
            }
            return {out};
        }
        std::vector<Simplex> operator()(const ProductSpec& pr) const {
            if (pr.factors.empty()) throw InputError("product of no factors");
            std::vector<Simplex> acc = triangulate(pr.factors.front());
            for (std::size_t f = 1; f < pr.factors.size(); ++f) {
                const auto next = triangulate(pr.factors[f]);
                std::vector<Simplex> combined;
                for (const auto& a : acc)
                    for (const auto& b : next) {
                        auto cells = detail::simplex_product(a, b);
                        combined.insert(combined.end(), cells.begin(), cells.end());
                    }
                acc = std::move(combined);
            }
            return acc;
        }
        std::vector<Simplex> operator()(const SimplicesSpec& s) const {
            if (s.simplices.empty()) throw InputError("empty simplex list");
            for (const auto& x : s.simplices) {
                x.check();
                if (x.dimension() != s.simplices.front().dimension()) throw InputError("simplices of mixed dimension");
            }
            if (!s.trusted)
                for (std::size_t i = 0; i < s.simplices.size(); ++i)
                    for (std::size_t j = i + 1; j < s.simplices.size(); ++j)
                        if (!detail::facet_separated(s.simplices[i], s.simplices[j]))
                            throw InputError("simplices " + std::to_string(i) + " and " + std::to_string(j) +
                                             " may overlap (no separating facet); mark the list trusted to skip this check");
            return s.simplices;
        }
        std::vector<Simplex> operator()(const VertexHullSpec& h) const {
            std::vector<Simplex> out;
            for (const auto& idx : hull_triangulation(h.points)) {
                Simplex s;
                for (auto i : idx) s.vertices.push_back(h.points[i]);
                out.push_back(std::move(s));
            }
            return out;
        }
    };
    return std::visit(Visitor{}, p.kind);
}

inline Rational total_volume(const std::vector<Simplex>& simplices) {
    Rational v{0};
    for (const auto& s : simplices) v += s.volume();
    return v;
}

namespace detail {

inline Rational height(const Point& x, const RationalVector& xi) {
    Rational h{0};
    for (std::size_t k = 0; k < x.size(); ++k) h += x[k] * xi[k];
    return h;
}

inline void check_direction(const PolytopeSpec& p, const RationalVector& xi) {
    if (xi.size() != dimension(p))
        throw InputError("direction has " + std::to_string(xi.size()) + " components, polytope dimension is " + std::to_string(dimension(p)));
    if (std::all_of(xi.begin(), xi.end(), [](const Rational& x) { return x == 0; })) throw InputError("zero direction");
}

/// g_t^{(r)}(z) / r! for g_t(s) = (t - s)^l, as a polynomial in t.
inline Poly truncated_power_taylor(const Rational& z, std::size_t l, std::size_t r) {
    if (r > l) return {};
    Poly p = power(Poly::linear_root(z), static_cast<unsigned>(l - r)) * Rational(binomial(static_cast<int>(l), static_cast<int>(r)));
    return (r % 2 == 1) ? -p : p;
}

/// (-1)^l * g_t[h_0..h_l] where only the nodes <= `active_max` see the
/// polynomial branch (t - s)^l; the rest see 0.
inline Poly sublevel_fraction(std::vector<Rational> heights, const Rational& active_max) {
    std::sort(heights.begin(), heights.end());
    const std::size_t l = heights.size() - 1;
    // table[i] holds f[h_i .. h_{i+r}] at stage r
    std::vector<Poly> table(heights.size());
    for (std::size_t i = 0; i <= l; ++i)
        table[i] = heights[i] <= active_max ? truncated_power_taylor(heights[i], l, 0) : Poly{};
    for (std::size_t r = 1; r <= l; ++r) {
        for (std::size_t i = 0; i + r <= l; ++i) {
            const Rational& lo = heights[i];
            const Rational& hi = heights[i + r];
            if (lo == hi)
                table[i] = lo <= active_max ? truncated_power_taylor(lo, l, r) : Poly{};
            else
                table[i] = (table[i + 1] - table[i]) / (hi - lo);
        }
    }
    return (l % 2 == 1) ? -table[0] : table[0];
}

} // namespace detail

/// V(t) = vol{x in P : <x, xi> <= t}, exact and piecewise polynomial on
/// [min height, max height] with the distinct vertex heights as breakpoints.
inline PiecewisePoly sublevel_volume(const PolytopeSpec& p, const RationalVector& xi) {
    detail::check_direction(p, xi);
    const auto simplices = triangulate(p);
    std::vector<std::vector<Rational>> heights;
    std::vector<Rational> levels;
    for (const auto& s : simplices) {
        std::vector<Rational> h;
        for (const auto& v : s.vertices) h.push_back(detail::height(v, xi));
        levels.insert(levels.end(), h.begin(), h.end());
        heights.push_back(std::move(h));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) throw InputError("direction is constant on the polytope");

    std::vector<Rational> volumes;
    for (const auto& s : simplices) volumes.push_back(s.volume());
    std::vector<Poly> pieces;
    for (std::size_t a = 0; a + 1 < levels.size(); ++a) {
        Poly v;
        for (std::size_t k = 0; k < simplices.size(); ++k) {
            const auto& h = heights[k];
            if (*std::min_element(h.begin(), h.end()) > levels[a]) continue;
            v += detail::sublevel_fraction(h, levels[a]) * volumes[k];
        }
        pieces.push_back(std::move(v));
    }
    return {levels, std::move(pieces)};
}

/// g(t) = V'(t), the (l-1)-volume density of the slices <x, xi> = t.
inline PiecewisePoly slice_density(const PolytopeSpec& p, const RationalVector& xi) {
    return sublevel_volume(p, xi).map([](const Poly& q) { return derivative(q); });
}

/// Vertex/edge data of the simple polytopes whose combinatorics is known in
/// closed form: boxes, standard simplices and their products.
inline ToricData toric_data(const PolytopeSpec& p) {
    struct Visitor {
        ToricData operator()(const BoxSpec& b) const { return box_toric_data(b.sides); }
        ToricData operator()(const StandardSimplexSpec& s) const {
            const std::size_t l = s.dimension;
            ToricData d;
            for (std::size_t v = 0; v <= l; ++v) {
                RationalVector x(l);
                std::vector<IntVector> edges;
                if (v == 0) {
                    for (std::size_t i = 0; i < l; ++i) {
                        IntVector e(l, 0);
                        e[i] = 1;
                        edges.push_back(std::move(e));
                    }
                } else {
                    x[v - 1] = s.scale;
                    for (std::size_t i = 0; i < l; ++i) {
                        IntVector e(l, 0);
                        e[v - 1] = -1;
                        if (i != v - 1) e[i] = 1;
                        edges.push_back(std::move(e));
                    }
                }
                d.vertices.push_back(std::move(x));
                d.edges.push_back(std::move(edges));
            }
            return d;
        }
        ToricData operator()(const ProductSpec& pr) const {
            ToricData acc;
            acc.vertices.emplace_back();
            acc.edges.emplace_back();
            for (const auto& f : pr.factors) {
                const ToricData next = toric_data(f);
                const std::size_t la = acc.vertices.front().size();
                const std::size_t lb = next.vertices.front().size();
                ToricData combined;
                for (std::size_t i = 0; i < acc.vertices.size(); ++i)
                    for (std::size_t j = 0; j < next.vertices.size(); ++j) {
                        RationalVector x = acc.vertices[i];
                        x.insert(x.end(), next.vertices[j].begin(), next.vertices[j].end());
                        std::vector<IntVector> edges;
                        for (auto e : acc.edges[i]) {
                            e.resize(la + lb, 0);
                            edges.push_back(std::move(e));
                        }
                        for (const auto& e : next.edges[j]) {
                            IntVector padded(la, 0);
                            padded.insert(padded.end(), e.begin(), e.end());
                            edges.push_back(std::move(padded));
                        }
                        combined.vertices.push_back(std::move(x));
                        combined.edges.push_back(std::move(edges));
                    }
                acc = std::move(combined);
            }
            return acc;
        }
        ToricData operator()(const SimplicesSpec&) const {
            throw InputError("toric data needs a box, standard simplex or product; give vertices and edges explicitly");
        }
        ToricData operator()(const VertexHullSpec&) const {
            throw InputError("toric data needs a box, standard simplex or product; give vertices and edges explicitly");
        }
    };
    return std::visit(Visitor{}, p.kind);
}

} // namespace dhlab
