#pragma once

#include "dhlab/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dhlab {

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }
    Poly(std::initializer_list<Rational> coefficients) : c_(coefficients) { trim(); }

    static Poly constant(const Rational& v) { return Poly({v}); }
    /// (t - root)
    static Poly linear_root(const Rational& root) { return Poly({-root, Rational(1)}); }
    static Poly monomial(const Rational& coefficient, unsigned degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = coefficient;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& t) const {
        Rational acc{0};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }
    Poly& operator/=(const Rational& s) {
        if (s == 0) throw InputError("polynomial division by zero scalar");
        for (auto& x : c_) x /= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator/(Poly a, const Rational& s) { return a /= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p);

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Poly power(const Poly& p, unsigned exponent) {
    Poly result = Poly::constant(1);
    Poly b = p;
    while (exponent != 0) {
        if (exponent & 1U) result = result * b;
        exponent >>= 1U;
        if (exponent != 0) b = b * b;
    }
    return result;
}

inline Poly derivative(const Poly& p) {
    if (p.degree() < 1) return {};
    std::vector<Rational> d(p.coefficients().size() - 1);
    for (std::size_t k = 1; k < p.coefficients().size(); ++k) d[k - 1] = p.coefficients()[k] * k;
    return Poly(std::move(d));
}

inline Poly derivative(const Poly& p, unsigned order) {
    Poly d = p;
    for (unsigned i = 0; i < order && !d.is_zero(); ++i) d = derivative(d);
    return d;
}

/// q(t) = p(t + c), expanded by Horner's scheme in the shifted variable.
inline Poly shift(const Poly& p, const Rational& c) {
    Poly acc;
    const Poly t_plus_c({c, Rational(1)});
    const auto& cs = p.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * t_plus_c + Poly::constant(*it);
    return acc;
}

struct DivMod {
    Poly quotient;
    Poly remainder;
};

inline DivMod divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rational> r = a.coefficients();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {Poly{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
    const Rational lead = b.leading();
    for (int k = da; k >= db; --k) {
        const Rational f = r[static_cast<std::size_t>(k)] / lead;
        q[static_cast<std::size_t>(k - db)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coefficients()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

/// Scales p by a positive rational so that its coefficients are coprime
/// integers. The sign of p is preserved, which is what Sturm chains need.
inline Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    Integer l{1};
    for (const auto& c : p.coefficients()) l = lcm(l, den(c));
    Integer g{0};
    for (const auto& c : p.coefficients()) g = gcd(g, Integer(num(c) * (l / den(c))));
    return p * Rational(l, g);
}

inline Poly monic(const Poly& p) { return p.is_zero() ? p : p / p.leading(); }

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).remainder;
        a = std::move(b);
        b = primitive_part(r);
    }
    return monic(a);
}

/// p / gcd(p, p'): same real roots as p, all simple.
inline Poly squarefree_part(const Poly& p) {
    if (p.degree() < 1) return p;
    Poly g = gcd(p, derivative(p));
    return primitive_part(divmod(p, g).quotient);
}

inline std::string to_string(const Poly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational& c = p.coefficients()[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rational a = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (k == 0 || a != 1) s += to_string(a);
        if (k > 0) {
            if (a != 1) s += "*";
            s += var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

} // namespace dhlab
