#pragma once

#include "dhlab/poly.hpp"

#include <optional>
#include <vector>

namespace dhlab {

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k), each member
/// rescaled to a primitive integer polynomial by a positive factor.
inline std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(primitive_part(p));
    Poly d = derivative(p);
    if (d.is_zero()) return seq;
    seq.push_back(primitive_part(d));
    while (true) {
        Poly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
        if (r.is_zero()) break;
        seq.push_back(primitive_part(-r));
    }
    return seq;
}

inline int sign_variations(const std::vector<Poly>& seq, const Rational& x) {
    int variations = 0;
    int last = 0;
    for (const auto& q : seq) {
        int s = sgn(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

/// Number of distinct real roots of p in the half-open interval (lo, hi].
inline int count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw InputError("count_roots: need lo < hi");
    if (p.is_zero()) throw InputError("count_roots: zero polynomial");
    auto seq = sturm_sequence(squarefree_part(p));
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

enum class SignKind { nonnegative, nonpositive, zero, mixed };

inline const char* to_string(SignKind k) {
    switch (k) {
    case SignKind::nonnegative: return "nonnegative";
    case SignKind::nonpositive: return "nonpositive";
    case SignKind::zero: return "zero";
    case SignKind::mixed: return "mixed";
    }
    return "?";
}

/// Sign of a polynomial on a closed interval. For mixed verdicts both
/// witnesses are set: a point with p > 0 and a point with p < 0.
struct SignVerdict {
    SignKind kind = SignKind::zero;
    std::optional<Rational> positive_witness;
    std::optional<Rational> negative_witness;
};

namespace detail {

struct SignScan {
    const Poly& p;
    const Poly& sqf;
    const std::vector<Poly>& seq;
    std::optional<Rational> pos;
    std::optional<Rational> neg;

    void sample(const Rational& x) {
        int s = sgn(p(x));
        if (s > 0 && !pos) pos = x;
        if (s < 0 && !neg) neg = x;
    }

    int interior_roots(const Rational& lo, const Rational& hi) const {
        int n = sign_variations(seq, lo) - sign_variations(seq, hi);
        return sqf(hi) == 0 ? n - 1 : n;
    }

    // Every root-free component of (lo, hi) receives at least one sample.
    void scan(const Rational& lo, const Rational& hi) {
        if (pos && neg) return;
        const int k = interior_roots(lo, hi);
        if (k == 0) {
            sample((lo + hi) / 2);
            return;
        }
        if (k == 1 && sqf(lo) != 0 && sqf(hi) != 0) {
            sample(lo);
            sample(hi);
            return;
        }
        const Rational mid = (lo + hi) / 2;
        scan(lo, mid);
        scan(mid, hi);
    }
};

} // namespace detail

/// Exact sign of p on [a, b]: Sturm root counting, bisection until each
/// piece holds at most one root, and evaluation at rational points of every
/// root-free subinterval.
inline SignVerdict sign_on_interval(const Poly& p, const Rational& a, const Rational& b) {
    if (!(a < b)) throw InputError("sign_on_interval: need a < b, got [" + to_string(a) + ", " + to_string(b) + "]");
    if (p.is_zero()) return {SignKind::zero, std::nullopt, std::nullopt};
    const Poly sqf = squarefree_part(p);
    const auto seq = sturm_sequence(sqf);
    detail::SignScan scan{p, sqf, seq, std::nullopt, std::nullopt};
    scan.scan(a, b);
    SignVerdict v;
    v.positive_witness = scan.pos;
    v.negative_witness = scan.neg;
    if (scan.pos && scan.neg)
        v.kind = SignKind::mixed;
    else if (scan.neg)
        v.kind = SignKind::nonpositive;
    else
        v.kind = SignKind::nonnegative;
    return v;
}

} // namespace dhlab
