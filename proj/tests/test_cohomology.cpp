#include "dhlab/cohomology.hpp"
#include "dhlab/dh.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dhlab;

namespace {

std::vector<Rational> random_sizes(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(1, 60);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rational> s;
    for (int i = 0; i < n; ++i) s.emplace_back(num(rng), den(rng));
    return s;
}

GradedRingElement random_element(std::mt19937_64& rng, int n, int max_half_degree) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> uexp(0, max_half_degree);
    std::uniform_int_distribution<Subset> subset(0, (Subset{1} << n) - 1);
    GradedRingElement e(n);
    for (int i = 0; i < 4; ++i) e.add({uexp(rng), subset(rng)}, coef(rng));
    return e;
}

std::vector<RawTerm> to_raw(const GradedRingElement& e) {
    std::vector<RawTerm> raw;
    for (const auto& [m, c] : e.terms()) {
        RawTerm t{c, m.u_exp, std::vector<int>(static_cast<std::size_t>(e.n()), 0)};
        for (int i : subset_elements(m.b)) t.b_exponents[static_cast<std::size_t>(i - 1)] = 1;
        raw.push_back(std::move(t));
    }
    return raw;
}

std::vector<Rational> regular_points(const FixedPointSet& s) {
    const auto lv = s.levels();
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < lv.size(); ++i) out.push_back((lv[i] + lv[i + 1]) / 2);
    return out;
}

} // namespace

TEST(ModelRing, RelationBSquared) {
    const int n = 3;
    const auto b1 = GradedRingElement::b(n, 1);
    EXPECT_EQ(b1 * b1, GradedRingElement::u(n) * b1);
    EXPECT_EQ(to_string(b1 * GradedRingElement::b(n, 2) * b1), "u*b1*b2");
    EXPECT_EQ((b1 + GradedRingElement::u(n)).homogeneous_part(2).terms().size(), 2U);
    EXPECT_THROW((b1 + GradedRingElement::constant(n, 1)).degree(), InputError);
    EXPECT_THROW(GradedRingElement::b(n, 4), InputError);
}

TEST(ModelRing, NormalizeIsIdempotentAndLinear) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> ex(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        std::vector<RawTerm> raw;
        for (int i = 0; i < 3; ++i) {
            RawTerm t{Rational(ex(rng) - 1), ex(rng), {}};
            for (int k = 0; k < n; ++k) t.b_exponents.push_back(ex(rng));
            raw.push_back(std::move(t));
        }
        const auto e = normalize(n, raw);
        EXPECT_EQ(normalize(n, to_raw(e)), e);
        auto doubled = raw;
        doubled.insert(doubled.end(), raw.begin(), raw.end());
        EXPECT_EQ(normalize(n, doubled), e * Rational(2));
    }
}

TEST(ModelRing, ProductOfNormalForms) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const auto e = random_element(rng, n, 2);
        const auto f = random_element(rng, n, 2);
        // multiply the raw exponent vectors and normalize once
        std::vector<RawTerm> raw;
        for (const auto& a : to_raw(e))
            for (const auto& b : to_raw(f)) {
                RawTerm t{a.coefficient * b.coefficient, a.u_exp + b.u_exp, a.b_exponents};
                for (std::size_t k = 0; k < t.b_exponents.size(); ++k) t.b_exponents[k] += b.b_exponents[k];
                raw.push_back(std::move(t));
            }
        EXPECT_EQ(normalize(n, raw), e * f);
    }
}

TEST(ModelRing, RestrictionIsRingHomomorphism) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 5;
        const auto e = random_element(rng, n, 3);
        const auto f = random_element(rng, n, 3);
        const Subset S = std::uniform_int_distribution<Subset>(0, (Subset{1} << n) - 1)(rng);
        EXPECT_EQ(restrict(e * f, S), restrict(e, S) * restrict(f, S));
        EXPECT_EQ(restrict(e + f, S), restrict(e, S) + restrict(f, S));
    }
}

TEST(ModelRing, TolmanWeitsmanRestrictionLaw) {
    for (int n = 1; n <= 5; ++n) {
        const Subset all = (Subset{1} << n) - 1;
        for (Subset S = 0; S <= all; ++S)
            for (Subset T = 0; T <= all; ++T) {
                const Poly r = restrict(ring_monomial(n, {0, S}), T);
                const Poly expected = is_subset(S, T) ? Poly::monomial(1, static_cast<unsigned>(subset_size(S))) : Poly{};
                EXPECT_EQ(r, expected);
            }
    }
}

TEST(ModelRing, SliceCardinality) {
    for (int n = 1; n <= 6; ++n)
        for (int d = 0; d <= 2 * n + 4; d += 2) {
            Integer expected{0};
            for (int j = 0; 2 * j <= d; ++j) expected += binomial(n, j);
            EXPECT_EQ(Integer(slice_basis(n, d).size()), expected);
        }
    EXPECT_THROW(slice_basis(3, 3), InputError);
}

TEST(ModelRing, TolmanWeitsmanClassesSpanTheSlice) {
    // the restriction map to all fixed points is injective on every slice
    for (int n = 1; n <= 4; ++n) {
        const auto s = gen_spheres(std::vector<Rational>(static_cast<std::size_t>(n), 1), 0);
        for (int d = 0; d <= 2 * n; d += 2) {
            const auto basis = slice_basis(n, d);
            Matrix m;
            for (const auto& mono : basis) {
                Vector row;
                for (const auto& p : s.points()) row.push_back(restrict(ring_monomial(n, mono), *p.label).coefficient(static_cast<std::size_t>(d / 2)));
                m.push_back(std::move(row));
            }
            EXPECT_EQ(rank(m), basis.size());
        }
    }
}

TEST(ModelRing, SymplecticClassRestrictsToMomentValue) {
    const auto s = gen_spheres({2, 3, 6}, 1);
    const auto w = equivariant_symplectic_class(s);
    EXPECT_EQ(to_string(w), "u + 2*b1 + 3*b2 + 6*b3");
    for (const auto& p : s.points()) EXPECT_EQ(restrict(w, *p.label), Poly::monomial(p.mu, 1));
}

TEST(Cohomology, Spheres236LevelFour) {
    const auto s = gen_spheres({2, 3, 6}, 0);
    EXPECT_EQ(reduced_betti(s, 4), (std::vector<int>{1, 3, 1}));
    const auto k2 = kirwan_kernel(s, 4, 2);
    EXPECT_EQ(k2.ambient_basis.size(), 4U);
    EXPECT_EQ(k2.basis.size(), 1U);
    const auto r = hard_lefschetz_check(s, 4);
    EXPECT_TRUE(r.lefschetz_ok);
    EXPECT_TRUE(r.poincare_symmetric);
    EXPECT_TRUE(r.pairing_nondegenerate);
    EXPECT_THROW(reduced_betti(s, 5), InputError);
    EXPECT_THROW(kirwan_kernel(s, 4, 6), InputError);
}

TEST(Cohomology, KernelDimensionGuard) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + trial % 4;
        const auto s = gen_spheres(random_sizes(rng, n), 0);
        for (const auto& xi : regular_points(s))
            for (int d = 2 * n; d <= 2 * n + 4; d += 2) EXPECT_EQ(kirwan_kernel_dimension(s, xi, d), slice_basis(n, d).size());
    }
}

TEST(Cohomology, PoincareSymmetryAndConnectedness) {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + trial % 4;
        const auto s = gen_spheres(random_sizes(rng, n), 0);
        for (const auto& xi : regular_points(s)) {
            const auto b = reduced_betti(s, xi);
            EXPECT_EQ(b.front(), 1);
            EXPECT_EQ(b, std::vector<int>(b.rbegin(), b.rend()));
        }
    }
}

TEST(Cohomology, ResidueDegreeVanishing) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 4;
        const auto s = gen_spheres(random_sizes(rng, n), 0);
        const auto xi = regular_points(s).front();
        for (int d = 0; d < 2 * (n - 1); d += 2) {
            GradedRingElement e(n);
            for (const auto& m : slice_basis(n, d)) e.add(m, Rational(std::uniform_int_distribution<int>(-3, 3)(rng)));
            EXPECT_EQ(residue_integrate(e, s, xi), 0);
        }
    }
}

TEST(Cohomology, ResidueMatchesResidueSum) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 5;
        const auto s = gen_spheres(random_sizes(rng, n), Rational(trial, 2));
        const auto w = equivariant_symplectic_class(s);
        for (const auto& xi : regular_points(s)) {
            const auto L = w - GradedRingElement::u(n) * xi;
            EXPECT_EQ(residue_integrate(power(L, static_cast<unsigned>(n - 1)), s, xi), residue_sum(s, n - 1, xi));
        }
    }
}

TEST(Cohomology, AmbientLefschetz) {
    const auto r = ambient_lefschetz_check(gen_spheres({2, 3, 6}, 0));
    EXPECT_TRUE(r.lefschetz_ok);
    EXPECT_EQ(r.betti, (std::vector<int>{1, 3, 3, 1}));
    EXPECT_FALSE(r.level);
}

TEST(Cohomology, RequiresLabels) {
    const FixedPointSet s(1, {{0, {1}, {}}, {1, {-1}, {}}});
    EXPECT_THROW(reduced_betti(s, Rational(1, 2)), InputError);
    EXPECT_THROW(hard_lefschetz_check(s, Rational(1, 2)), InputError);
}
