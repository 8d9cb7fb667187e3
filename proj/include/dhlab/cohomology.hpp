#pragma once

// Kirwan kernel, reduced Betti numbers and hard Lefschetz checks in the
// Tolman-Weitsman model. The kernel of the Kirwan map at a regular level xi
// is K+ + K-, the classes vanishing at every fixed point above (resp. below)
// xi; the cohomology of the reduced space is the quotient of each degree
// slice by it.

#include "dhlab/linalg.hpp"
#include "dhlab/model_ring.hpp"

#include <optional>
#include <vector>

namespace dhlab {

/// A subspace of one degree slice of the model ring.
struct Subspace {
    int degree = 0;
    std::vector<Monomial> ambient_basis; // slice_basis(n, degree)
    std::vector<GradedRingElement> basis;
};

namespace detail {

inline Vector coordinates(const GradedRingElement& e, const std::vector<Monomial>& basis) {
    Vector v(basis.size());
    for (const auto& [m, c] : e.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), m);
        if (it == basis.end() || !(*it == m)) throw InvariantError("element has a term outside the expected degree slice");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

inline GradedRingElement element(int n, const Vector& v, const std::vector<Monomial>& basis) {
    GradedRingElement e(n);
    for (std::size_t i = 0; i < v.size(); ++i) e.add(basis[i], v[i]);
    return e;
}

/// Kernel of the Kirwan map in degree d as a row space over slice_basis(n, d).
struct KernelSlice {
    std::vector<Monomial> monomials;
    RowSpace kernel;
    std::size_t plus_dim = 0;
    std::size_t minus_dim = 0;

    std::size_t quotient_dim() const { return monomials.size() - kernel.rank(); }

    /// Non-pivot monomials: their classes form a basis of the quotient.
    std::vector<std::size_t> standard_columns() const {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < monomials.size(); ++c)
            if (!kernel.is_pivot(c)) out.push_back(c);
        return out;
    }

    /// Coordinates of a slice element in the standard quotient basis.
    Vector quotient_coordinates(const GradedRingElement& e) const {
        Vector r = kernel.reduce(coordinates(e, monomials));
        Vector out;
        for (auto c : standard_columns()) out.push_back(r[c]);
        return out;
    }
};

inline void require_labeled_regular(const FixedPointSet& s, const Rational& xi, const char* who) {
    if (!s.labeled()) throw InputError(std::string(who) + ": fixed points are not labeled");
    if (s.is_critical(xi)) throw InputError(std::string(who) + ": " + to_string(xi) + " is a critical value");
}

/// Any even degree d >= 0, including degrees above the reduced dimension.
inline KernelSlice kernel_slice(const FixedPointSet& s, const Rational& xi, int degree) {
    const auto monomials = slice_basis(s.n(), degree);
    Matrix above;
    Matrix below;
    for (const auto& p : s.points()) {
        Vector row(monomials.size());
        for (std::size_t i = 0; i < monomials.size(); ++i) row[i] = is_subset(monomials[i].b, *p.label) ? 1 : 0;
        (p.mu > xi ? above : below).push_back(std::move(row));
    }
    const Matrix k_plus = nullspace(above, monomials.size());
    const Matrix k_minus = nullspace(below, monomials.size());
    KernelSlice ks{monomials, RowSpace(monomials.size()), k_plus.size(), k_minus.size()};
    for (const auto& v : k_plus) ks.kernel.insert(v);
    for (const auto& v : k_minus) ks.kernel.insert(v);
    return ks;
}

} // namespace detail

/// Basis of K^d = K+^d + K-^d for even 0 <= d <= 2(n-1).
inline Subspace kirwan_kernel(const FixedPointSet& s, const Rational& xi, int degree) {
    detail::require_labeled_regular(s, xi, "kirwan_kernel");
    if (degree < 0 || degree % 2 != 0 || degree > 2 * (s.n() - 1))
        throw InputError("kirwan_kernel: degree must be even and in [0, " + std::to_string(2 * (s.n() - 1)) + "]");
    const auto ks = detail::kernel_slice(s, xi, degree);
    Subspace out{degree, ks.monomials, {}};
    for (const auto& row : ks.kernel.rows()) out.basis.push_back(detail::element(s.n(), row, ks.monomials));
    return out;
}

/// Dimension of the kernel slice in any even degree (no upper bound).
inline std::size_t kirwan_kernel_dimension(const FixedPointSet& s, const Rational& xi, int degree) {
    detail::require_labeled_regular(s, xi, "kirwan_kernel_dimension");
    return detail::kernel_slice(s, xi, degree).kernel.rank();
}

/// b_0, b_2, ..., b_{2(n-1)} of the reduced space at xi.
inline std::vector<int> reduced_betti(const FixedPointSet& s, const Rational& xi) {
    detail::require_labeled_regular(s, xi, "reduced_betti");
    std::vector<int> betti;
    for (int j = 0; j < s.n(); ++j) betti.push_back(static_cast<int>(detail::kernel_slice(s, xi, 2 * j).quotient_dim()));
    if (betti.front() != 1) throw InvariantError("reduced_betti: b_0 = " + std::to_string(betti.front()) + ", reduced space not connected");
    if (detail::kernel_slice(s, xi, 2 * s.n()).quotient_dim() != 0)
        throw InvariantError("reduced_betti: nonzero cohomology above the reduced dimension");
    return betti;
}

/// Rank data of one Lefschetz map H^i -> H^{2m-i}.
struct LefschetzDegree {
    int degree = 0;
    int source_dim = 0;
    int target_dim = 0;
    int rank = 0;
    int pairing_rank = 0;
};

struct LefschetzReport {
    std::optional<Rational> level; // unset for the ambient manifold
    std::vector<int> betti;        // even degrees 0, 2, ..., top
    bool poincare_symmetric = false;
    bool lefschetz_ok = false;
    bool pairing_nondegenerate = false;
    std::optional<int> failing_degree;
    std::vector<LefschetzDegree> maps;
};

namespace detail {

inline bool palindromic(const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != v[v.size() - 1 - i]) return false;
    return true;
}

} // namespace detail

/// Hard Lefschetz for the reduced space at xi with the class of
/// [omega~] - xi u. Also checks that the Lefschetz pairing
/// (a, b) -> int a L^{m-i} b, computed by residues, is nondegenerate.
inline LefschetzReport hard_lefschetz_check(const FixedPointSet& s, const Rational& xi) {
    detail::require_labeled_regular(s, xi, "hard_lefschetz_check");
    const int n = s.n();
    const int m = n - 1;
    const GradedRingElement L = equivariant_symplectic_class(s) - GradedRingElement::u(n) * xi;

    std::vector<detail::KernelSlice> slices;
    LefschetzReport r;
    r.level = xi;
    for (int j = 0; j <= m; ++j) {
        slices.push_back(detail::kernel_slice(s, xi, 2 * j));
        r.betti.push_back(static_cast<int>(slices.back().quotient_dim()));
    }
    r.poincare_symmetric = detail::palindromic(r.betti);
    r.lefschetz_ok = r.poincare_symmetric;
    r.pairing_nondegenerate = true;

    for (int j = 0; 2 * j <= m; ++j) {
        const auto& src = slices[static_cast<std::size_t>(j)];
        const auto& dst = slices[static_cast<std::size_t>(m - j)];
        const GradedRingElement Lp = power(L, static_cast<unsigned>(m - 2 * j));
        std::vector<GradedRingElement> reps;
        for (auto c : src.standard_columns()) reps.push_back(ring_monomial(n, src.monomials[c]));

        Matrix images;
        for (const auto& a : reps) images.push_back(dst.quotient_coordinates(a * Lp));
        Matrix pairing;
        for (const auto& a : reps) {
            Vector row;
            const GradedRingElement aL = a * Lp;
            for (const auto& b : reps) row.push_back(residue_integrate(aL * b, s, xi));
            pairing.push_back(std::move(row));
        }
        LefschetzDegree d{2 * j, static_cast<int>(src.quotient_dim()), static_cast<int>(dst.quotient_dim()),
                          static_cast<int>(rank(images)), static_cast<int>(rank(pairing))};
        const bool bijective = d.source_dim == d.target_dim && d.rank == d.source_dim;
        if (!bijective && r.lefschetz_ok) {
            r.lefschetz_ok = false;
            r.failing_degree = d.degree;
        }
        if (d.pairing_rank != d.source_dim) r.pairing_nondegenerate = false;
        r.maps.push_back(d);
    }
    if (!r.poincare_symmetric && !r.failing_degree) r.failing_degree = 0;
    return r;
}

/// Hard Lefschetz for the manifold itself: in the model ring modulo u
/// (so b_i^2 = 0) with [omega] = sum m_i b_i, L^{n-i}: H^i -> H^{2n-i} must be
/// bijective for every even i <= n.
inline LefschetzReport ambient_lefschetz_check(const FixedPointSet& s) {
    if (!s.labeled()) throw InputError("ambient_lefschetz_check: fixed points are not labeled");
    const int n = s.n();
    const GradedRingElement w = equivariant_symplectic_class(s);
    GradedRingElement L(n);
    for (int i = 1; i <= n; ++i) {
        const Rational mi = w.coefficient({0, Subset{1} << (i - 1)});
        if (mi <= 0) throw InputError("ambient_lefschetz_check: m_" + std::to_string(i) + " = " + to_string(mi) + " is not positive");
        L += GradedRingElement::b(n, i) * mi;
    }
    auto mod_u = [&](const GradedRingElement& e, int k) {
        // coordinates over the k-subsets, dropping every term divisible by u
        const auto subsets = subsets_of_size(n, k);
        Vector v(subsets.size());
        for (const auto& [mono, c] : e.terms()) {
            if (mono.u_exp != 0) continue;
            auto it = std::find(subsets.begin(), subsets.end(), mono.b);
            v[static_cast<std::size_t>(it - subsets.begin())] = c;
        }
        return v;
    };

    LefschetzReport r;
    for (int k = 0; k <= n; ++k) r.betti.push_back(static_cast<int>(binomial(n, k)));
    r.poincare_symmetric = detail::palindromic(r.betti);
    r.lefschetz_ok = true;
    r.pairing_nondegenerate = true;
    for (int k = 0; 2 * k <= n; ++k) {
        const GradedRingElement Lp = power(L, static_cast<unsigned>(n - 2 * k));
        Matrix images;
        for (Subset S : subsets_of_size(n, k)) images.push_back(mod_u(ring_monomial(n, {0, S}) * Lp, n - k));
        LefschetzDegree d{2 * k, r.betti[static_cast<std::size_t>(k)], r.betti[static_cast<std::size_t>(n - k)],
                          static_cast<int>(rank(images)), 0};
        // Poincare pairing on H^*(M): top coefficient of a L^{n-2k} b
        Matrix pairing;
        for (Subset S : subsets_of_size(n, k)) {
            Vector row;
            const GradedRingElement aL = ring_monomial(n, {0, S}) * Lp;
            for (Subset T : subsets_of_size(n, k)) row.push_back(mod_u(aL * ring_monomial(n, {0, T}), n).front());
            pairing.push_back(std::move(row));
        }
        d.pairing_rank = static_cast<int>(rank(pairing));
        if ((d.rank != d.source_dim || d.source_dim != d.target_dim) && r.lefschetz_ok) {
            r.lefschetz_ok = false;
            r.failing_degree = d.degree;
        }
        if (d.pairing_rank != d.source_dim) r.pairing_nondegenerate = false;
        r.maps.push_back(d);
    }
    return r;
}

} // namespace dhlab
