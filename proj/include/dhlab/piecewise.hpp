#pragma once

#include "dhlab/poly.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace dhlab {

/// Piecewise polynomial on [breakpoints.front(), breakpoints.back()].
/// Piece i lives on [breakpoints[i], breakpoints[i+1]]. Point evaluation is
/// right-continuous at interior breakpoints; the last breakpoint is evaluated
/// with the last piece.
class PiecewisePoly {
public:
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces)
        : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (bp_.size() < 2) throw InputError("piecewise polynomial needs at least two breakpoints");
        if (pieces_.size() + 1 != bp_.size()) throw InputError("piecewise polynomial: pieces/breakpoints size mismatch");
        for (std::size_t i = 1; i < bp_.size(); ++i)
            if (!(bp_[i - 1] < bp_[i])) throw InputError("piecewise polynomial: breakpoints must be strictly increasing");
    }

    const std::vector<Rational>& breakpoints() const { return bp_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    const Rational& lower() const { return bp_.front(); }
    const Rational& upper() const { return bp_.back(); }
    std::size_t size() const { return pieces_.size(); }

    /// Index of the piece used to evaluate at t (right-continuous).
    std::size_t piece_index(const Rational& t) const {
        check_domain(t);
        auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
        auto idx = static_cast<std::size_t>(it - bp_.begin());
        return std::min(idx == 0 ? 0 : idx - 1, pieces_.size() - 1);
    }

    Rational operator()(const Rational& t) const { return pieces_[piece_index(t)](t); }

    /// Left limit at t (t > lower()).
    Rational left_limit(const Rational& t) const {
        check_domain(t);
        if (t == bp_.front()) throw InputError("left limit requested at the lower end");
        auto it = std::lower_bound(bp_.begin(), bp_.end(), t);
        return pieces_[static_cast<std::size_t>(it - bp_.begin()) - 1](t);
    }
    /// Right limit at t (t < upper()).
    Rational right_limit(const Rational& t) const {
        check_domain(t);
        if (t == bp_.back()) throw InputError("right limit requested at the upper end");
        auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
        return pieces_[static_cast<std::size_t>(it - bp_.begin()) - 1](t);
    }

    /// Adjacent pieces of an interior breakpoint c: {left, right}.
    std::pair<const Poly&, const Poly&> adjacent(const Rational& c) const {
        auto it = std::find(bp_.begin() + 1, bp_.end() - 1, c);
        if (it == bp_.end() - 1) throw InputError(to_string(c) + " is not an interior breakpoint");
        auto i = static_cast<std::size_t>(it - bp_.begin());
        return {pieces_[i - 1], pieces_[i]};
    }

    bool is_interior_breakpoint(const Rational& c) const {
        return std::find(bp_.begin() + 1, bp_.end() - 1, c) != bp_.end() - 1;
    }

    /// True iff adjacent pieces agree at every interior breakpoint.
    bool continuous() const {
        for (std::size_t i = 1; i + 1 < bp_.size(); ++i)
            if (pieces_[i - 1](bp_[i]) != pieces_[i](bp_[i])) return false;
        return true;
    }

    PiecewisePoly map(const std::function<Poly(const Poly&)>& f) const {
        std::vector<Poly> out;
        out.reserve(pieces_.size());
        for (const auto& p : pieces_) out.push_back(f(p));
        return {bp_, std::move(out)};
    }

    /// Same function with adjacent identical pieces merged.
    PiecewisePoly canonical() const {
        std::vector<Rational> bp{bp_.front()};
        std::vector<Poly> pieces{pieces_.front()};
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            if (pieces_[i] == pieces.back()) continue;
            bp.push_back(bp_[i]);
            pieces.push_back(pieces_[i]);
        }
        bp.push_back(bp_.back());
        return {std::move(bp), std::move(pieces)};
    }

    /// Literal equality of breakpoints and pieces.
    friend bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
        return a.bp_ == b.bp_ && a.pieces_ == b.pieces_;
    }

private:
    void check_domain(const Rational& t) const {
        if (t < bp_.front() || t > bp_.back())
            throw InputError(to_string(t) + " lies outside [" + to_string(bp_.front()) + ", " + to_string(bp_.back()) + "]");
    }

    std::vector<Rational> bp_;
    std::vector<Poly> pieces_;
};

/// Equality as functions: compares canonical forms (breakpoint merging).
inline bool equivalent(const PiecewisePoly& a, const PiecewisePoly& b) { return a.canonical() == b.canonical(); }

/// Largest k >= -1 such that f is C^k at the interior breakpoint c
/// (-1: discontinuous). When both adjacent pieces are the same polynomial
/// the result is the smoothness sentinel max(deg left, deg right, 0) + 1,
/// which no pair of distinct pieces can produce.
inline int piecewise_smoothness(const PiecewisePoly& f, const Rational& c) {
    auto [left, right] = f.adjacent(c);
    const int cap = std::max({left.degree(), right.degree(), 0});
    Poly l = left;
    Poly r = right;
    for (int k = 0; k <= cap; ++k) {
        if (l(c) != r(c)) return k - 1;
        l = derivative(l);
        r = derivative(r);
    }
    return cap + 1;
}

inline int smoothness_sentinel(const PiecewisePoly& f, const Rational& c) {
    auto [left, right] = f.adjacent(c);
    return std::max({left.degree(), right.degree(), 0}) + 1;
}

} // namespace dhlab
