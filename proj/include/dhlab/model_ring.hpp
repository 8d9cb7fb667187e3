#pragma once

// The ring Q[u, b_1, ..., b_n] / (b_i^2 - u b_i), a model of the equivariant
// cohomology of a semifree circle action with isolated fixed points. Its
// elements are stored in the square-free normal form sum c * u^k * b_S.

#include "dhlab/fixed_points.hpp"
#include "dhlab/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace dhlab {

/// u^k * prod_{i in S} b_i. Ordered by half-degree, then u-exponent
/// descending, then S lexicographically.
struct Monomial {
    int u_exp = 0;
    Subset b = 0;

    int half_degree() const { return u_exp + subset_size(b); }
    int degree() const { return 2 * half_degree(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.half_degree() != b.half_degree()) return a.half_degree() < b.half_degree();
        if (a.u_exp != b.u_exp) return a.u_exp > b.u_exp;
        if (a.b == b.b) return false;
        return lex_less(a.b, b.b);
    }
};

inline Monomial operator*(const Monomial& x, const Monomial& y) {
    // b_i^2 = u b_i for every shared index
    return {x.u_exp + y.u_exp + subset_size(x.b & y.b), x.b | y.b};
}

class GradedRingElement {
public:
    explicit GradedRingElement(int n) : n_(n) {
        if (n < 1 || n > kMaxHalfDimension) throw InputError("model ring: n out of range");
    }

    static GradedRingElement constant(int n, const Rational& c) { return term(n, c, {0, 0}); }
    static GradedRingElement u(int n) { return term(n, 1, {1, 0}); }
    static GradedRingElement b(int n, int i) {
        if (i < 1 || i > n) throw InputError("model ring: generator index out of range");
        return term(n, 1, {0, Subset{1} << (i - 1)});
    }
    static GradedRingElement term(int n, const Rational& c, Monomial m) {
        GradedRingElement e(n);
        e.add(m, c);
        return e;
    }

    int n() const { return n_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Real degree of a homogeneous element; -1 for zero; throws if mixed.
    int degree() const {
        if (terms_.empty()) return -1;
        const int d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d) throw InputError("element is not homogeneous");
        return d;
    }

    GradedRingElement homogeneous_part(int degree) const {
        GradedRingElement e(n_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == degree) e.terms_.emplace(m, c);
        return e;
    }

    void add(const Monomial& m, const Rational& c) {
        if (m.b >> n_ != 0) throw InputError("model ring: monomial uses b_i with i > n");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GradedRingElement& operator+=(const GradedRingElement& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    GradedRingElement& operator-=(const GradedRingElement& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    GradedRingElement& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend GradedRingElement operator+(GradedRingElement a, const GradedRingElement& b) { return a += b; }
    friend GradedRingElement operator-(GradedRingElement a, const GradedRingElement& b) { return a -= b; }
    friend GradedRingElement operator*(GradedRingElement a, const Rational& s) { return a *= s; }
    friend GradedRingElement operator*(const Rational& s, GradedRingElement a) { return a *= s; }
    friend GradedRingElement operator*(const GradedRingElement& a, const GradedRingElement& b) {
        a.check(b);
        GradedRingElement r(a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
        return r;
    }
    friend bool operator==(const GradedRingElement&, const GradedRingElement&) = default;

private:
    void check(const GradedRingElement& o) const {
        if (o.n_ != n_) throw InputError("model ring: mixing elements with different n");
    }

    int n_;
    std::map<Monomial, Rational> terms_;
};

inline GradedRingElement power(const GradedRingElement& e, unsigned exponent) {
    GradedRingElement result = GradedRingElement::constant(e.n(), 1);
    for (unsigned i = 0; i < exponent; ++i) result = result * e;
    return result;
}

/// u^k * b_S as a ring element.
inline GradedRingElement ring_monomial(int n, const Monomial& m) { return GradedRingElement::term(n, 1, m); }

/// A term of an unreduced polynomial in u, b_1..b_n: coefficient, u-exponent
/// and arbitrary exponents of the b_i (b_exponents[i-1] for b_i).
struct RawTerm {
    Rational coefficient;
    int u_exp = 0;
    std::vector<int> b_exponents;
};

/// Applies b_i^e -> u^{e-1} b_i; the normal form is unique.
inline GradedRingElement normalize(int n, const std::vector<RawTerm>& raw) {
    GradedRingElement e(n);
    for (const auto& t : raw) {
        if (static_cast<int>(t.b_exponents.size()) > n) throw InputError("normalize: more b exponents than n");
        if (t.u_exp < 0) throw InputError("normalize: negative exponent");
        Monomial m{t.u_exp, 0};
        for (std::size_t i = 0; i < t.b_exponents.size(); ++i) {
            const int x = t.b_exponents[i];
            if (x < 0) throw InputError("normalize: negative exponent");
            if (x == 0) continue;
            m.u_exp += x - 1;
            m.b |= Subset{1} << i;
        }
        e.add(m, t.coefficient);
    }
    return e;
}

/// Restriction to the fixed point labeled S: b_i -> u for i in S, else 0.
inline Poly restrict(const GradedRingElement& e, Subset S) {
    std::vector<Rational> c;
    for (const auto& [m, coeff] : e.terms()) {
        if (!is_subset(m.b, S)) continue;
        const auto k = static_cast<std::size_t>(m.half_degree());
        if (c.size() <= k) c.resize(k + 1);
        c[k] += coeff;
    }
    return Poly(std::move(c));
}

/// Monomials spanning the real-degree-d slice, in Monomial order.
inline std::vector<Monomial> slice_basis(int n, int degree) {
    if (degree < 0 || degree % 2 != 0) throw InputError("slice_basis: degree must be even and nonnegative");
    const int j = degree / 2;
    std::vector<Monomial> out;
    for (int k = j; k >= 0 && j - k <= n; --k)
        for (Subset S : subsets_of_size(n, j - k)) out.push_back({k, S});
    return out;
}

/// The equivariant symplectic class m_0 u + sum m_i b_i of labeled data, with
/// m_0 the moment value at the label {} point and m_i = mu({i}) - m_0.
/// Its restriction to every fixed point must be mu(F) u.
inline GradedRingElement equivariant_symplectic_class(const FixedPointSet& s) {
    if (!s.labeled()) throw InputError("equivariant_symplectic_class: fixed points are not labeled");
    const int n = s.n();
    std::vector<const FixedPointDatum*> singles(static_cast<std::size_t>(n + 1), nullptr);
    const FixedPointDatum* bottom = nullptr;
    for (const auto& p : s.points()) {
        if (*p.label == 0) bottom = &p;
        if (subset_size(*p.label) == 1) singles[static_cast<std::size_t>(subset_elements(*p.label).front())] = &p;
    }
    if (bottom == nullptr) throw InputError("equivariant_symplectic_class: no point labeled {}");
    GradedRingElement w = GradedRingElement::u(n) * bottom->mu;
    for (int i = 1; i <= n; ++i) {
        const auto* p = singles[static_cast<std::size_t>(i)];
        if (p == nullptr) throw InputError("equivariant_symplectic_class: no point labeled {" + std::to_string(i) + "}");
        w += GradedRingElement::b(n, i) * (p->mu - bottom->mu);
    }
    for (const auto& p : s.points())
        if (restrict(w, *p.label) != Poly::monomial(p.mu, 1))
            throw InputError("equivariant_symplectic_class: restriction at " + subset_to_string(*p.label) +
                             " differs from mu(F) u = " + to_string(p.mu) + " u; labels are inconsistent");
    return w;
}

/// Jeffrey-Kirwan residue: sum over fixed points above xi of the
/// u^{n-1} coefficient of e|_F divided by m_F (e_F = m_F u^n).
inline Rational residue_integrate(const GradedRingElement& e, const FixedPointSet& s, const Rational& xi) {
    if (!s.labeled()) throw InputError("residue_integrate: fixed points are not labeled");
    if (s.is_critical(xi)) throw InputError("residue_integrate: " + to_string(xi) + " is a critical value");
    if (e.n() != s.n()) throw InputError("residue_integrate: ring and data disagree on n");
    Rational sum{0};
    const auto top = static_cast<std::size_t>(s.n() - 1);
    for (const auto& p : s.points())
        if (p.mu > xi) sum += restrict(e, *p.label).coefficient(top) / p.weight_product();
    return sum;
}

inline std::string to_string(const GradedRingElement& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : e.terms()) {
        std::string mono;
        if (m.u_exp > 0) mono += m.u_exp == 1 ? "u" : "u^" + std::to_string(m.u_exp);
        for (int i : subset_elements(m.b)) mono += (mono.empty() ? "" : "*") + std::string("b") + std::to_string(i);
        const Rational a = abs(c);
        std::string coeff = (a == 1 && !mono.empty()) ? "" : to_string(a);
        std::string body = coeff + (coeff.empty() || mono.empty() ? "" : "*") + mono;
        if (s.empty())
            s = (c < 0 ? "-" : "") + body;
        else
            s += (c < 0 ? " - " : " + ") + body;
    }
    return s;
}

} // namespace dhlab
