// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "dhlab/dhlab.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dhlab;

namespace {

// Runtime limits in seconds.
constexpr double kLimitGolden = 1;
constexpr double kLimitOracle = 10;
constexpr double kLimitLogConcave = 60;
constexpr double kLimitLefschetz = 120;
// Monte Carlo agreement, in standard errors.
constexpr double kMcSigmas = 3;
constexpr std::uint64_t kMcSamples = 1000000;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs > limit) o.require(false, "runtime above limit");
    std::ostringstream line;
    line << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << id << ": " << name << " (" << std::fixed
         << std::setprecision(3) << secs << " s";
    if (limit > 0) line << " / limit " << std::setprecision(0) << limit << " s";
    line << ")";
    if (!o.pass) line << " -- " << o.detail;
    std::cout << line.str() << std::endl;
    failures += o.pass ? 0 : 1;
}

struct Case {
    std::vector<Rational> sizes;
    FixedPointSet set;
};

// 100 inputs, n in 2..8, sizes p/q in (0, 100]; n = 2..8 each appear.
std::vector<Case> random_sphere_cases() {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> n_d(2, 8);
    std::uniform_int_distribution<int> den_d(1, 12);
    std::vector<Case> out;
    for (int i = 0; i < 100; ++i) {
        const int n = i < 7 ? 2 + i : n_d(rng);
        std::vector<Rational> sizes;
        for (int k = 0; k < n; ++k) {
            const int q = den_d(rng);
            sizes.emplace_back(std::uniform_int_distribution<int>(1, 100 * q)(rng), q);
        }
        out.push_back({sizes, gen_spheres(sizes, 0)});
    }
    return out;
}

std::vector<Rational> regular_points(const FixedPointSet& s) {
    const auto lv = s.levels();
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < lv.size(); ++i) out.push_back((lv[i] + lv[i + 1]) / 2);
    return out;
}

std::string str(const Rational& q) { return to_string(q); }

} // namespace

int main() {
    const auto cases = random_sphere_cases();

    report(1, "golden DH values for sphere sizes (2,3,6)", kLimitGolden, [] {
        Outcome o;
        const auto s = gen_spheres({2, 3, 6}, 0);
        const std::vector<std::pair<int, int>> golden{{0, 0}, {2, 2}, {3, 4}, {5, 6}, {6, 6}, {8, 4}, {9, 2}, {11, 0}};
        for (auto [t, v] : golden) o.require(dh_eval(s, t) == v, "DH(" + std::to_string(t) + ") = " + str(dh_eval(s, t)));
        o.require(dh_eval(s, Rational(11, 2)) == 6, "DH(11/2) != 6");
        return o;
    });

    report(2, "toric DH equals polytope slice density, boxes n = 2..5", kLimitOracle, [] {
        Outcome o;
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> den_d(1, 9);
        for (int n = 2; n <= 5; ++n)
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<std::pair<Rational, Rational>> sides;
                for (int k = 0; k < n; ++k) {
                    const int q = den_d(rng);
                    sides.emplace_back(0, Rational(std::uniform_int_distribution<int>(1, 20 * q)(rng), q));
                }
                const PolytopeSpec box{BoxSpec{sides}};
                const auto toric = dh_piecewise(gen_toric(box_toric_data(sides), IntVector(static_cast<std::size_t>(n), 1)));
                const auto slice = slice_density(box, RationalVector(static_cast<std::size_t>(n), Rational(1)));
                o.require(toric == slice, "mismatch at n = " + std::to_string(n));
            }
        return o;
    });

    report(3, "log-concavity of 100 random sphere products, n = 2..8", kLimitLogConcave, [&] {
        Outcome o;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto r = log_concavity_check(cases[i].set);
            o.require(r.verdict == Verdict::log_concave, "case " + std::to_string(i) + ": " + r.reason);
        }
        return o;
    });

    report(4, "jump formula and C^{n-2} smoothness at every interior level", 0, [&] {
        Outcome o;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& s = cases[i].set;
            for (const auto& j : gls_jump_check(s)) {
                // independent recomputation of the expected jump
                Rational c{0};
                for (const auto& p : s.points())
                    if (p.mu == j.level) c += 1 / p.weight_product();
                const Poly expected = Poly::monomial(c / factorial(static_cast<unsigned>(s.n() - 1)), static_cast<unsigned>(s.n() - 1));
                o.require(j.pass && j.jump == expected, "case " + std::to_string(i) + " level " + str(j.level));
                if (c != 0) o.require(j.smoothness == s.n() - 2, "case " + std::to_string(i) + ": smoothness " + std::to_string(j.smoothness));
            }
        }
        return o;
    });

    report(5, "localization identities, k = 0..n-1 at 10 random t", 0, [&] {
        Outcome o;
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> num(-1000, 1000);
        std::uniform_int_distribution<int> den(1, 17);
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& s = cases[i].set;
            for (int r = 0; r < 10; ++r) {
                const Rational t(num(rng), den(rng));
                for (int k = 0; k <= s.n() - 1; ++k)
                    o.require(localization_identity(s, k, t) == 0, "case " + std::to_string(i) + " k = " + std::to_string(k));
            }
        }
        return o;
    });

    report(6, "criterion consistency: DH form equals residue-sum form (n >= 3)", 0, [&] {
        Outcome o;
        int checked = 0;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& s = cases[i].set;
            const int n = s.n();
            if (n < 3) continue;
            const auto f = dh_piecewise(s);
            for (std::size_t k = 0; k < f.size(); ++k) {
                const Rational xi = (f.breakpoints()[k] + f.breakpoints()[k + 1]) / 2;
                const Rational g = log_concavity_numerator(f.pieces()[k])(xi);
                const Rational lhs = factorial(static_cast<unsigned>(n - 1)) * factorial(static_cast<unsigned>(n - 2)) * g;
                const Rational a3 = residue_sum(s, n - 3, xi);
                const Rational a2 = residue_sum(s, n - 2, xi);
                const Rational a1 = residue_sum(s, n - 1, xi);
                const Rational rhs = Rational(n - 2) * a3 * a1 - Rational(n - 1) * a2 * a2;
                o.require(lhs == rhs, "case " + std::to_string(i) + " at " + str(xi));
                ++checked;
            }
        }
        o.require(checked > 0, "nothing checked");
        return o;
    });

    report(7, "hard Lefschetz at every regular level, n <= 5, and on the manifold", kLimitLefschetz, [&] {
        Outcome o;
        int levels = 0;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& s = cases[i].set;
            if (s.n() > 5) continue;
            for (const auto& xi : regular_points(s)) {
                const auto r = hard_lefschetz_check(s, xi);
                const std::string where = "case " + std::to_string(i) + " at " + str(xi);
                o.require(r.lefschetz_ok, where + ": lefschetz fails");
                o.require(r.poincare_symmetric, where + ": betti not palindromic");
                o.require(!r.betti.empty() && r.betti.front() == 1, where + ": b0 != 1");
                ++levels;
            }
            o.require(ambient_lefschetz_check(s).lefschetz_ok, "case " + std::to_string(i) + ": ambient");
        }
        o.require(levels > 0, "no levels checked");
        return o;
    });

    report(8, "negative control reports violated with a witness", 0, [] {
        Outcome o;
        const FixedPointSet s(3, {{0, {1, 1, 2}, {}}, {1, {-1, -1, 1}, {}}, {2, {-1, -1, -1}, {}}});
        const auto r = log_concavity_check(s);
        o.require(r.verdict == Verdict::violated, "verdict log_concave");
        o.require(r.witness.has_value(), "no witness");
        if (r.witness) {
            const auto f = dh_piecewise(s);
            const Rational w = *r.witness;
            o.require(log_concavity_numerator(f.pieces()[f.piece_index(w)])(w) > 0 && f(w) > 0, "witness " + str(w) + " does not show G > 0");
        }
        return o;
    });

    report(9, "Monte Carlo within 3 standard errors at 5 pairs; reruns bit-identical", 0, [] {
        Outcome o;
        std::mt19937_64 rng(9);
        std::uniform_int_distribution<int> num(1, 8);
        const std::vector<std::pair<PolytopeSpec, RationalVector>> shapes{
            {PolytopeSpec{BoxSpec{{{0, 2}, {0, 3}, {0, 6}}}}, {1, 1, 1}},
            {PolytopeSpec{StandardSimplexSpec{3, 1}}, {1, 1, 1}},
            {PolytopeSpec{BoxSpec{{{0, num(rng)}, {0, num(rng)}}}}, {1, 2}},
            {PolytopeSpec{ProductSpec{{PolytopeSpec{StandardSimplexSpec{2, Rational(num(rng))}}, PolytopeSpec{BoxSpec{{{0, num(rng)}}}}}}},
             {2, 1, 3}},
            {PolytopeSpec{VertexHullSpec{{{0, 0}, {4, 0}, {3, 3}, {0, 2}, {1, 1}}}}, {1, 3}},
        };
        constexpr unsigned workers = 4;
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            const auto& [p, xi] = shapes[i];
            const auto g = slice_density(p, xi);
            const Rational t = g.lower() + (g.upper() - g.lower()) * Rational(std::uniform_int_distribution<int>(50, 950)(rng), 1000);
            const double exact = to_double(g(t));
            const auto e = mc_density(p, xi, t, kMcSamples, 1000 + i, workers);
            const auto again = mc_density(p, xi, t, kMcSamples, 1000 + i, workers);
            std::ostringstream why;
            why << "pair " << i << ": mc " << e.mean << " +- " << e.standard_error << " vs exact " << exact;
            o.require(std::abs(e.mean - exact) <= kMcSigmas * e.standard_error, why.str());
            o.require(e.mean == again.mean && e.standard_error == again.standard_error, "pair " + std::to_string(i) + ": rerun differs");
        }
        return o;
    });

    report(10, "property suites: Sturm vs bisection, normal form, restriction, TW law, kernel guard", 0, [] {
        Outcome o;
        std::mt19937_64 rng(10);
        // Sturm counts against sign changes on a grid finer than the roots
        std::uniform_int_distribution<int> root_d(-30, 30);
        for (int trial = 0; trial < 200; ++trial) {
            Poly p = Poly::constant(1 + trial % 4);
            const int k = 1 + trial % 6;
            for (int i = 0; i < k; ++i) p = p * Poly::linear_root(Rational(root_d(rng), 4));
            if (trial % 3 == 0) p = p * Poly({1, 0, 1});
            const Rational lo(root_d(rng), 4);
            const Rational hi = lo + Rational(1 + trial % 40, 4);
            const Poly q = squarefree_part(p);
            int expected = 0;
            for (Rational a = lo; a < hi; a += Rational(1, 8)) {
                const int sa = sgn(q(a));
                const int sb = sgn(q(a + Rational(1, 8)));
                if (sb == 0) ++expected;
                else if (sa != 0 && sa != sb) ++expected;
            }
            o.require(count_roots(p, lo, hi) == expected, "Sturm count for " + to_string(p));
        }
        // normal form, restriction, TW law
        std::uniform_int_distribution<int> coef(-4, 4);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + trial % 5;
            std::uniform_int_distribution<Subset> sub(0, (Subset{1} << n) - 1);
            std::vector<RawTerm> raw;
            for (int i = 0; i < 3; ++i) {
                RawTerm t{Rational(coef(rng)), trial % 3, {}};
                for (int j = 0; j < n; ++j) t.b_exponents.push_back(std::abs(coef(rng)) % 3);
                raw.push_back(t);
            }
            const auto e = normalize(n, raw);
            std::vector<RawTerm> again;
            for (const auto& [m, c] : e.terms()) {
                RawTerm t{c, m.u_exp, std::vector<int>(static_cast<std::size_t>(n), 0)};
                for (int j : subset_elements(m.b)) t.b_exponents[static_cast<std::size_t>(j - 1)] = 1;
                again.push_back(t);
            }
            o.require(normalize(n, again) == e, "normalize not idempotent");
            GradedRingElement f(n);
            f.add({trial % 2, sub(rng)}, coef(rng));
            f.add({0, sub(rng)}, coef(rng));
            const Subset S = sub(rng);
            o.require(restrict(e * f, S) == restrict(e, S) * restrict(f, S), "restriction not multiplicative");
            const Subset A = sub(rng);
            const Poly law = is_subset(A, S) ? Poly::monomial(1, static_cast<unsigned>(subset_size(A))) : Poly{};
            o.require(restrict(ring_monomial(n, {0, A}), S) == law, "TW restriction law");
        }
        // kernel guard above degree 2(n-1)
        for (int n = 1; n <= 5; ++n) {
            std::vector<Rational> sizes;
            for (int i = 0; i < n; ++i) sizes.emplace_back(1 + std::abs(coef(rng)), 1 + i);
            const auto s = gen_spheres(sizes, 0);
            for (const auto& xi : regular_points(s))
                for (int d = 2 * n; d <= 2 * n + 2; d += 2)
                    o.require(kirwan_kernel_dimension(s, xi, d) == slice_basis(n, d).size(), "kernel guard at n = " + std::to_string(n));
        }
        return o;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
