#pragma once

// Duistermaat-Heckman functions of circle actions with isolated fixed points.
//
// Sign convention. DH is built from the lower sum
//     DH(t) = 1/(n-1)! * sum_{mu(F) < t} (t - mu(F))^{n-1} / m_F,
// which is the positive density (it agrees with slice volumes of the moment
// polytope in the toric case). The upper sums
//     A_k(xi) = sum_{mu(F) > xi} (mu(F) - xi)^k / m_F
// give (-1)^n (n-1)! DH(xi) for k = n-1 once the localization identities hold,
// so the log-concavity criterion, quadratic in the A_k, does not see the sign.

#include "dhlab/fixed_points.hpp"
#include "dhlab/piecewise.hpp"
#include "dhlab/sturm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dhlab {

/// A_k(xi) = sum over fixed points above xi of (mu(F) - xi)^k / m_F.
inline Rational residue_sum(const FixedPointSet& s, int k, const Rational& xi) {
    if (k < 0) throw InputError("residue_sum: k must be nonnegative");
    if (s.is_critical(xi)) throw InputError("residue_sum: " + to_string(xi) + " is a critical value");
    Rational sum{0};
    for (const auto& p : s.points())
        if (p.mu > xi) sum += power(p.mu - xi, static_cast<unsigned>(k)) / p.weight_product();
    return sum;
}

namespace detail {

/// (t - mu)^{n-1} / ((n-1)! m_F): the contribution a fixed point switches on.
inline Poly point_contribution(const FixedPointDatum& p, int n) {
    return power(Poly::linear_root(p.mu), static_cast<unsigned>(n - 1)) / (factorial(static_cast<unsigned>(n - 1)) * p.weight_product());
}

} // namespace detail

/// Exact DH function on [min level, max level] with the distinct critical
/// levels as breakpoints. Coincident levels are merged.
inline PiecewisePoly dh_piecewise(const FixedPointSet& s) {
    if (s.size() == 0) throw InputError("dh_piecewise: empty fixed point set");
    const auto levels = s.levels();
    if (levels.size() < 2) throw InputError("dh_piecewise: need at least two distinct critical levels");
    auto pts = canonical_order(s).points();
    std::vector<Poly> pieces;
    Poly acc;
    std::size_t next = 0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        while (next < pts.size() && pts[next].mu <= levels[i]) acc += detail::point_contribution(pts[next++], s.n());
        pieces.push_back(acc);
    }
    return {levels, std::move(pieces)};
}

inline Rational dh_eval(const FixedPointSet& s, const Rational& t) { return dh_piecewise(s)(t); }

struct JumpCheck {
    Rational level;
    Poly jump;      // right piece - left piece, in the variable (t - level)
    Poly expected;  // sum_{mu(F) = level} (t - level)^{n-1} / ((n-1)! m_F), same variable
    int smoothness = 0;
    bool pass = false;
};

/// Verifies at every interior critical value c that the jump of DH equals the
/// local contribution of the fixed points at c, and that DH is exactly
/// C^{n-2} there whenever that contribution is nonzero.
inline std::vector<JumpCheck> gls_jump_check(const FixedPointSet& s) {
    const auto dh = dh_piecewise(s);
    const int n = s.n();
    std::vector<JumpCheck> out;
    const auto& bp = dh.breakpoints();
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
        JumpCheck j;
        j.level = bp[i];
        auto [left, right] = dh.adjacent(bp[i]);
        j.jump = shift(right - left, bp[i]);
        Rational coefficient{0};
        for (const auto& p : s.points())
            if (p.mu == bp[i]) coefficient += 1 / p.weight_product();
        j.expected = Poly::monomial(coefficient / factorial(static_cast<unsigned>(n - 1)), static_cast<unsigned>(n - 1));
        j.smoothness = piecewise_smoothness(dh, bp[i]);
        j.pass = j.jump == j.expected && (coefficient == 0 || j.smoothness == n - 2);
        out.push_back(std::move(j));
    }
    return out;
}

enum class Verdict { log_concave, violated };

inline const char* to_string(Verdict v) { return v == Verdict::log_concave ? "log_concave" : "violated"; }

struct PieceSign {
    Rational lower;
    Rational upper;
    Poly g; // DH * DH'' - DH'^2 on this piece
    SignVerdict sign;
};

struct DerivativeJump {
    Rational level;
    Rational value_jump;      // DH(c+) - DH(c-)
    Rational derivative_jump; // DH'(c+) - DH'(c-)
    bool ok = false;
};

/// Residue-sum form of the criterion at one regular point (n >= 3).
struct CriterionCheck {
    Rational xi;
    Rational scaled_g;         // (n-1)! (n-2)! G(xi)
    Rational coefficiented;    // (n-2) A_{n-3} A_{n-1} - (n-1) A_{n-2}^2
    Rational coefficient_free; // A_{n-3} A_{n-1} - A_{n-2}^2
    bool match = false;
};

struct LogConcavityReport {
    Verdict verdict = Verdict::log_concave;
    std::optional<Rational> witness;
    std::string reason;
    std::vector<PieceSign> per_piece;
    std::vector<DerivativeJump> jump_checks;
    std::vector<CriterionCheck> cross_checks;
    bool cross_check_ok = true;
    // the residue form equals the DH form only when sum_F mu(F)^k / m_F = 0
    // for 0 <= k <= n-1; without that the cross checks are skipped
    bool localization_ok = false;
};

/// G = f f'' - f'^2; (log f)'' <= 0 iff G <= 0 wherever f > 0.
inline Poly log_concavity_numerator(const Poly& f) {
    const Poly d1 = derivative(f);
    return f * derivative(d1) - d1 * d1;
}

/// Decides log-concavity of DH: G <= 0 on every piece and
/// DH'(c+) - DH'(c-) <= 0 at every interior critical value. A jump of DH
/// itself at an interior level also counts as a violation since log DH
/// cannot be concave across a discontinuity.
inline LogConcavityReport log_concavity_check(const FixedPointSet& s) {
    const auto dh = dh_piecewise(s);
    const int n = s.n();
    const auto& bp = dh.breakpoints();
    LogConcavityReport r;
    r.localization_ok = true;
    for (int k = 0; k < n; ++k) r.localization_ok = r.localization_ok && localization_identity(s, k, 0) == 0;

    auto fail = [&](const Rational& where, std::string why) {
        if (r.verdict == Verdict::violated) return;
        r.verdict = Verdict::violated;
        r.witness = where;
        r.reason = std::move(why);
    };

    for (std::size_t i = 0; i < dh.size(); ++i) {
        PieceSign ps{bp[i], bp[i + 1], log_concavity_numerator(dh.pieces()[i]), {}};
        ps.sign = sign_on_interval(ps.g, ps.lower, ps.upper);
        if (i > 0) {
            const Poly& left = dh.pieces()[i - 1];
            const Poly& right = dh.pieces()[i];
            DerivativeJump j{bp[i], right(bp[i]) - left(bp[i]), derivative(right)(bp[i]) - derivative(left)(bp[i]), false};
            j.ok = j.value_jump == 0 && j.derivative_jump <= 0;
            if (!j.ok)
                fail(j.level, j.value_jump != 0 ? "DH is discontinuous at " + to_string(j.level)
                                                : "DH' jumps up at " + to_string(j.level));
            r.jump_checks.push_back(std::move(j));
        }
        if (ps.sign.positive_witness)
            fail(*ps.sign.positive_witness, "DH*DH'' - DH'^2 > 0 on [" + to_string(ps.lower) + ", " + to_string(ps.upper) + "]");

        if (n >= 3 && r.localization_ok) {
            CriterionCheck c;
            c.xi = (ps.lower + ps.upper) / 2;
            const Rational a3 = residue_sum(s, n - 3, c.xi);
            const Rational a2 = residue_sum(s, n - 2, c.xi);
            const Rational a1 = residue_sum(s, n - 1, c.xi);
            c.scaled_g = factorial(static_cast<unsigned>(n - 1)) * factorial(static_cast<unsigned>(n - 2)) * ps.g(c.xi);
            c.coefficiented = Rational(n - 2) * a3 * a1 - Rational(n - 1) * a2 * a2;
            c.coefficient_free = a3 * a1 - a2 * a2;
            c.match = c.scaled_g == c.coefficiented;
            r.cross_check_ok = r.cross_check_ok && c.match;
            r.cross_checks.push_back(std::move(c));
        }
        r.per_piece.push_back(std::move(ps));
    }
    return r;
}

} // namespace dhlab
