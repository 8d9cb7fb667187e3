#pragma once

#include "dhlab/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace dhlab {

/// Subset of {1, ..., n} as a bit mask; bit i-1 stands for element i.
using Subset = std::uint32_t;

inline constexpr int kMaxHalfDimension = 24;

inline int subset_size(Subset s) { return std::popcount(s); }
inline bool contains(Subset s, int element) { return ((s >> (element - 1)) & 1U) != 0; }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

inline std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    for (int i = 1; s != 0; ++i, s >>= 1U)
        if (s & 1U) out.push_back(i);
    return out;
}

inline Subset make_subset(const std::vector<int>& elements, int n) {
    Subset s = 0;
    for (int e : elements) {
        if (e < 1 || e > n) throw InputError("label element " + std::to_string(e) + " outside 1.." + std::to_string(n));
        if (contains(s, e)) throw InputError("label element " + std::to_string(e) + " repeated");
        s |= Subset{1} << (e - 1);
    }
    return s;
}

/// Lexicographic order on sorted element lists ({1,2} < {1,3} < {2,3}).
inline bool lex_less(Subset a, Subset b) { return subset_elements(a) < subset_elements(b); }

/// All k-subsets of {1..n} in lexicographic order.
inline std::vector<Subset> subsets_of_size(int n, int k) {
    std::vector<Subset> out;
    if (k > n || k < 0) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        out.push_back(make_subset(idx, n));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

inline std::string subset_to_string(Subset s) {
    std::string out = "{";
    for (int e : subset_elements(s)) out += (out.size() > 1 ? "," : "") + std::to_string(e);
    return out + "}";
}

/// One isolated fixed point: moment value, tangent weights, optional
/// Tolman-Weitsman label.
struct FixedPointDatum {
    Rational mu;
    std::vector<int> weights;
    std::optional<Subset> label;

    int negative_weights() const {
        return static_cast<int>(std::count_if(weights.begin(), weights.end(), [](int w) { return w < 0; }));
    }
    /// Morse index: twice the number of negative weights.
    int index() const { return 2 * negative_weights(); }
    /// m_F, the product of all weights.
    Rational weight_product() const {
        Integer m{1};
        for (int w : weights) m *= w;
        return Rational(m);
    }

    friend bool operator==(const FixedPointDatum&, const FixedPointDatum&) = default;
};

/// The fixed-point data of a Hamiltonian circle action on a 2n-manifold.
class FixedPointSet {
public:
    FixedPointSet(int n, std::vector<FixedPointDatum> points) : n_(n), points_(std::move(points)) {
        if (n_ < 1) throw InputError("n must be positive");
        if (n_ > kMaxHalfDimension) throw InputError("n above " + std::to_string(kMaxHalfDimension) + " is not supported");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& p = points_[i];
            const std::string where = "point " + std::to_string(i);
            if (static_cast<int>(p.weights.size()) != n_)
                throw InputError(where + ": expected " + std::to_string(n_) + " weights, got " + std::to_string(p.weights.size()));
            if (std::find(p.weights.begin(), p.weights.end(), 0) != p.weights.end())
                throw InputError(where + ": zero weight (fixed points must be isolated)");
            if (p.label) {
                if (*p.label >> n_ != 0) throw InputError(where + ": label outside {1.." + std::to_string(n_) + "}");
                if (subset_size(*p.label) != p.negative_weights())
                    throw InputError(where + ": label size " + std::to_string(subset_size(*p.label)) +
                                     " does not match index/2 = " + std::to_string(p.negative_weights()));
            }
        }
    }

    int n() const { return n_; }
    const std::vector<FixedPointDatum>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool labeled() const {
        return !points_.empty() && std::all_of(points_.begin(), points_.end(), [](const auto& p) { return p.label.has_value(); });
    }

    /// Sorted distinct moment values (the critical values).
    std::vector<Rational> levels() const {
        std::vector<Rational> v;
        v.reserve(points_.size());
        for (const auto& p : points_) v.push_back(p.mu);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    bool is_critical(const Rational& xi) const {
        return std::any_of(points_.begin(), points_.end(), [&](const auto& p) { return p.mu == xi; });
    }

    friend bool operator==(const FixedPointSet&, const FixedPointSet&) = default;

private:
    int n_;
    std::vector<FixedPointDatum> points_;
};

/// Copy with points sorted by (mu, weights); labels are kept.
inline FixedPointSet canonical_order(const FixedPointSet& s) {
    auto pts = s.points();
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.mu != b.mu) return a.mu < b.mu;
        return a.weights < b.weights;
    });
    return {s.n(), std::move(pts)};
}

/// Same (mu, weights) records as multisets; labels ignored.
inline bool same_records(const FixedPointSet& a, const FixedPointSet& b) {
    if (a.n() != b.n() || a.size() != b.size()) return false;
    auto ca = canonical_order(a).points();
    auto cb = canonical_order(b).points();
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (ca[i].mu != cb[i].mu || ca[i].weights != cb[i].weights) return false;
    return true;
}

struct ValidationReport {
    bool is_semifree = false;
    std::vector<int> index_counts; // N_0 .. N_n
    bool binomial_ok = false;
    std::vector<Rational> distinct_levels;
    std::vector<std::string> messages;
};

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r{1};
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Semifreeness, index counts against C(n,k), critical levels. Does not
/// reject non-semifree data.
inline ValidationReport validate(const FixedPointSet& s) {
    if (s.size() == 0) throw InputError("validate: empty fixed point set");
    ValidationReport r;
    const int n = s.n();
    r.index_counts.assign(static_cast<std::size_t>(n + 1), 0);
    r.is_semifree = true;
    for (const auto& p : s.points()) {
        ++r.index_counts[static_cast<std::size_t>(p.negative_weights())];
        for (int w : p.weights)
            if (w != 1 && w != -1) r.is_semifree = false;
    }
    r.binomial_ok = true;
    for (int k = 0; k <= n; ++k) {
        if (binomial(n, k) != r.index_counts[static_cast<std::size_t>(k)]) {
            r.binomial_ok = false;
            r.messages.push_back("N_" + std::to_string(k) + " = " + std::to_string(r.index_counts[static_cast<std::size_t>(k)]) +
                                 " but C(" + std::to_string(n) + "," + std::to_string(k) + ") = " + binomial(n, k).str());
        }
    }
    if (!r.is_semifree) r.messages.push_back("some weight is not +-1: action is not semifree");
    r.distinct_levels = s.levels();
    const auto& pts = s.points();
    auto lowest = std::min_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    auto highest = std::max_element(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    if (lowest->negative_weights() != 0) r.messages.push_back("lowest point " + to_string(lowest->mu) + " has negative weights");
    if (highest->negative_weights() != n) r.messages.push_back("highest point " + to_string(highest->mu) + " has positive weights");
    return r;
}

/// Diagonal circle action on S^2 x ... x S^2 with factor sizes `sizes`;
/// points are listed by (|S|, lexicographic S).
inline FixedPointSet gen_spheres(const std::vector<Rational>& sizes, const Rational& min_level) {
    const int n = static_cast<int>(sizes.size());
    if (n == 0) throw InputError("gen_spheres: need at least one sphere");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        if (sizes[i] <= 0) throw InputError("gen_spheres: size " + std::to_string(i + 1) + " is not positive: " + to_string(sizes[i]));
    std::vector<FixedPointDatum> pts;
    for (int k = 0; k <= n; ++k) {
        for (Subset s : subsets_of_size(n, k)) {
            FixedPointDatum d;
            d.mu = min_level;
            d.weights.assign(static_cast<std::size_t>(n), 1);
            for (int i : subset_elements(s)) {
                d.mu += sizes[static_cast<std::size_t>(i - 1)];
                d.weights[static_cast<std::size_t>(i - 1)] = -1;
            }
            d.label = s;
            pts.push_back(std::move(d));
        }
    }
    return {n, std::move(pts)};
}

using IntVector = std::vector<long long>;
using RationalVector = std::vector<Rational>;

/// Vertex/edge data of a simple lattice polytope.
struct ToricData {
    std::vector<RationalVector> vertices;
    std::vector<std::vector<IntVector>> edges; // edges[v]: primitive edge directions at vertex v
};

/// Restriction of a toric action to the circle generated by `direction`:
/// one fixed point per vertex, mu = <v, xi>, weights = <e_j, xi>.
inline FixedPointSet gen_toric(const ToricData& data, const IntVector& direction) {
    const std::size_t l = direction.size();
    if (l == 0) throw InputError("gen_toric: empty direction");
    if (data.vertices.size() != data.edges.size()) throw InputError("gen_toric: vertices and edge lists differ in length");
    if (data.vertices.empty()) throw InputError("gen_toric: no vertices");
    std::vector<FixedPointDatum> pts;
    for (std::size_t v = 0; v < data.vertices.size(); ++v) {
        const auto& x = data.vertices[v];
        const std::string where = "vertex " + std::to_string(v);
        if (x.size() != l) throw InputError(where + ": dimension mismatch with direction");
        if (data.edges[v].size() != l)
            throw InputError(where + ": has " + std::to_string(data.edges[v].size()) + " edges, a simple polytope needs " + std::to_string(l));
        FixedPointDatum d;
        for (std::size_t j = 0; j < l; ++j) d.mu += x[j] * direction[j];
        for (const auto& e : data.edges[v]) {
            if (e.size() != l) throw InputError(where + ": edge vector of wrong dimension");
            long long g = 0;
            long long w = 0;
            for (std::size_t j = 0; j < l; ++j) {
                g = std::gcd(g, e[j]);
                w += e[j] * direction[j];
            }
            if (g != 1) throw InputError(where + ": edge direction is not primitive");
            if (w == 0) throw InputError(where + ": direction is not generic (an edge pairs to zero)");
            if (w > std::numeric_limits<int>::max() || w < std::numeric_limits<int>::min())
                throw InputError(where + ": weight out of range");
            d.weights.push_back(static_cast<int>(w));
        }
        pts.push_back(std::move(d));
    }
    return {static_cast<int>(l), std::move(pts)};
}

/// Vertex/edge data of the box prod [lo_i, hi_i].
inline ToricData box_toric_data(const std::vector<std::pair<Rational, Rational>>& sides) {
    const std::size_t l = sides.size();
    if (l == 0 || l > static_cast<std::size_t>(kMaxHalfDimension)) throw InputError("box dimension out of range");
    ToricData d;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << l); ++mask) {
        RationalVector v(l);
        std::vector<IntVector> edges;
        for (std::size_t i = 0; i < l; ++i) {
            const bool upper = ((mask >> i) & 1U) != 0;
            v[i] = upper ? sides[i].second : sides[i].first;
            IntVector e(l, 0);
            e[i] = upper ? -1 : 1;
            edges.push_back(std::move(e));
        }
        d.vertices.push_back(std::move(v));
        d.edges.push_back(std::move(edges));
    }
    return d;
}

/// Fills Tolman-Weitsman labels from moment values alone. Index-2 points get
/// {1}, {2}, ... in input order; m_0 is the minimum and m_i = mu(p_1^i) - m_0.
/// Each index-2k point is then matched to a k-subset S with
/// mu = m_0 + sum_{i in S} m_i. Among points sharing a value, the point with
/// the smallest input position receives the lexicographically smallest subset.
inline FixedPointSet reconstruct_labels(const FixedPointSet& s) {
    const auto report = validate(s);
    if (!report.is_semifree) throw InputError("reconstruct_labels: action is not semifree");
    if (!report.binomial_ok) throw InputError("reconstruct_labels: index counts differ from C(n,k)");
    const int n = s.n();
    auto pts = s.points();
    std::vector<std::vector<std::size_t>> by_index(static_cast<std::size_t>(n + 1));
    for (std::size_t i = 0; i < pts.size(); ++i) by_index[static_cast<std::size_t>(pts[i].negative_weights())].push_back(i);

    const Rational m0 = pts[by_index[0].front()].mu;
    std::vector<Rational> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = pts[by_index[1][static_cast<std::size_t>(i)]].mu - m0;

    for (int k = 0; k <= n; ++k) {
        // value -> lexicographically ordered subsets with that moment value
        std::map<Rational, std::vector<Subset>> by_value;
        for (Subset S : subsets_of_size(n, k)) {
            Rational v = m0;
            for (int i : subset_elements(S)) v += m[static_cast<std::size_t>(i - 1)];
            by_value[v].push_back(S);
        }
        std::map<Rational, std::size_t> used;
        for (std::size_t idx : by_index[static_cast<std::size_t>(k)]) {
            auto& pt = pts[idx];
            auto it = by_value.find(pt.mu);
            std::size_t& u = used[pt.mu];
            if (it == by_value.end() || u >= it->second.size())
                throw InputError("reconstruct_labels: no perfect matching at index " + std::to_string(2 * k) + ": level " +
                                 to_string(pt.mu) + " is not of the form m0 + sum of " + std::to_string(k) + " of the m_i");
            pt.label = it->second[u++];
        }
    }
    return {n, std::move(pts)};
}

/// sum_F (mu(F) - t)^k / m_F over all fixed points. Vanishes for 0 <= k <= n-1
/// on data from a compact manifold.
inline Rational localization_identity(const FixedPointSet& s, int k, const Rational& t) {
    if (k < 0 || k > s.n() - 1) throw InputError("localization_identity: k must lie in [0, n-1]");
    Rational sum{0};
    for (const auto& p : s.points()) sum += power(p.mu - t, static_cast<unsigned>(k)) / p.weight_product();
    return sum;
}

} // namespace dhlab
