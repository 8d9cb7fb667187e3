#include "dhlab/fixed_points.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dhlab;

namespace {

std::vector<Rational> random_sizes(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(1, 400);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> s;
    for (int i = 0; i < n; ++i) s.emplace_back(num(rng), den(rng));
    return s;
}

} // namespace

TEST(Subsets, LexOrderAndHelpers) {
    const auto s = subsets_of_size(4, 2);
    ASSERT_EQ(s.size(), 6U);
    EXPECT_EQ(subset_elements(s.front()), (std::vector<int>{1, 2}));
    EXPECT_EQ(subset_elements(s.back()), (std::vector<int>{3, 4}));
    EXPECT_EQ(subset_to_string(make_subset({3, 1}, 4)), "{1,3}");
    EXPECT_TRUE(is_subset(make_subset({2}, 3), make_subset({1, 2}, 3)));
    EXPECT_THROW(make_subset({5}, 4), InputError);
    EXPECT_TRUE(subsets_of_size(3, 4).empty());
}

TEST(FixedPointSet, RejectsMalformedRecords) {
    EXPECT_THROW(FixedPointSet(2, {{0, {1, 0}, {}}}), InputError);
    EXPECT_THROW(FixedPointSet(2, {{0, {1}, {}}}), InputError);
    EXPECT_THROW(FixedPointSet(0, {}), InputError);
    EXPECT_THROW(FixedPointSet(2, {{0, {1, -1}, make_subset({1, 2}, 2)}}), InputError);
}

TEST(GenSpheres, Spheres236Layout) {
    const auto s = gen_spheres({2, 3, 6}, 0);
    std::vector<Rational> mu;
    for (const auto& p : s.points()) mu.push_back(p.mu);
    EXPECT_EQ(mu, (std::vector<Rational>{0, 2, 3, 6, 5, 8, 9, 11}));
    EXPECT_EQ(s.points()[4].weights, (std::vector<int>{-1, -1, 1}));
    EXPECT_EQ(*s.points()[4].label, make_subset({1, 2}, 3));
    EXPECT_THROW(gen_spheres({1, 0}, 0), InputError);
    EXPECT_THROW(gen_spheres({}, 0), InputError);
}

TEST(GenSpheres, AlwaysValidates) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 7;
        const auto r = validate(gen_spheres(random_sizes(rng, n), Rational(trial, 3)));
        EXPECT_TRUE(r.binomial_ok);
        EXPECT_TRUE(r.is_semifree);
        EXPECT_TRUE(r.messages.empty());
    }
}

TEST(Validate, ReportsProblems) {
    const FixedPointSet bad(2, {{0, {1, 2}, {}}, {1, {-1, 1}, {}}, {3, {-1, -1}, {}}});
    const auto r = validate(bad);
    EXPECT_FALSE(r.is_semifree);
    EXPECT_FALSE(r.binomial_ok);
    EXPECT_EQ(r.index_counts, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(r.distinct_levels, (std::vector<Rational>{0, 1, 3}));
    EXPECT_FALSE(r.messages.empty());
    EXPECT_THROW(validate(FixedPointSet(1, {})), InputError);
}

TEST(Localization, VanishesOnGeneratedSets) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 6;
        const auto s = gen_spheres(random_sizes(rng, n), 0);
        for (int k = 0; k <= n - 1; ++k)
            for (int t = -3; t <= 3; ++t) EXPECT_EQ(localization_identity(s, k, Rational(t, 7)), 0);
    }
    EXPECT_THROW(localization_identity(gen_spheres({1, 1}, 0), 2, 0), InputError);
}

TEST(GenToric, BoxMatchesSpheres) {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 5; ++n) {
        const auto sizes = random_sizes(rng, n);
        std::vector<std::pair<Rational, Rational>> sides;
        for (const auto& x : sizes) sides.emplace_back(0, x);
        const auto toric = gen_toric(box_toric_data(sides), IntVector(static_cast<std::size_t>(n), 1));
        auto spheres = gen_spheres(sizes, 0);
        // drop labels: toric data carries none
        std::vector<FixedPointDatum> unlabeled;
        for (auto p : spheres.points()) {
            p.label.reset();
            unlabeled.push_back(p);
        }
        EXPECT_TRUE(same_records(toric, FixedPointSet(n, unlabeled)));
    }
}

TEST(GenToric, RejectsBadInput) {
    const auto data = box_toric_data({{0, 1}, {0, 1}});
    EXPECT_THROW(gen_toric(data, {1, -1, 0}), InputError);
    EXPECT_THROW(gen_toric(data, {1, 0}), InputError); // edge (0,1) pairs to zero
    auto bad = data;
    bad.edges[0][0] = {2, 0};
    EXPECT_THROW(gen_toric(bad, {1, 1}), InputError);
    bad = data;
    bad.edges[1].pop_back();
    EXPECT_THROW(gen_toric(bad, {1, 1}), InputError);
}

TEST(ReconstructLabels, RecoversGeneratorLabels) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 5;
        const auto s = gen_spheres(random_sizes(rng, n), Rational(trial));
        std::vector<FixedPointDatum> stripped;
        for (auto p : s.points()) {
            p.label.reset();
            stripped.push_back(p);
        }
        const auto r = reconstruct_labels(FixedPointSet(n, stripped));
        ASSERT_TRUE(r.labeled());
        // m0 + sum m_i over the label reproduces mu
        const Rational m0 = r.points().front().mu;
        for (const auto& p : r.points()) {
            Rational v = m0;
            for (int i : subset_elements(*p.label)) v += r.points()[static_cast<std::size_t>(i)].mu - m0;
            EXPECT_EQ(v, p.mu);
        }
        EXPECT_EQ(reconstruct_labels(r), r);
    }
}

TEST(ReconstructLabels, TiesGoLexicographically) {
    // equal sizes: all index-2 points at level 1, both index-4 points... n = 2
    const FixedPointSet s(2, {{0, {1, 1}, {}}, {1, {-1, 1}, {}}, {1, {1, -1}, {}}, {2, {-1, -1}, {}}});
    const auto r = reconstruct_labels(s);
    EXPECT_EQ(*r.points()[1].label, make_subset({1}, 2));
    EXPECT_EQ(*r.points()[2].label, make_subset({2}, 2));
    EXPECT_EQ(*r.points()[3].label, make_subset({1, 2}, 2));
}

TEST(ReconstructLabels, FailsWithoutMatching) {
    const FixedPointSet s(2, {{0, {1, 1}, {}}, {1, {-1, 1}, {}}, {2, {1, -1}, {}}, {4, {-1, -1}, {}}});
    EXPECT_THROW(reconstruct_labels(s), InputError);
    const FixedPointSet not_semifree(1, {{0, {2}, {}}, {1, {-2}, {}}});
    EXPECT_THROW(reconstruct_labels(not_semifree), InputError);
}
