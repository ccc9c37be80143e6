#include "genuslab/group.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace genuslab;
using genuslab::testing::brute_automorphisms;
using genuslab::testing::brute_torsion;
using genuslab::testing::groups_up_to;

TEST(Group, InvariantFactorNormalization) {
    EXPECT_EQ(FiniteAbelianGroup({6, 4}).invariant_factors(), (std::vector<std::int64_t>{2, 12}));
    EXPECT_EQ(FiniteAbelianGroup({2, 3}).invariant_factors(), (std::vector<std::int64_t>{6}));
    EXPECT_EQ(FiniteAbelianGroup({1, 1}).order(), 1);
    EXPECT_EQ(FiniteAbelianGroup::parse("2,2").literal(), "2,2");
    EXPECT_EQ(FiniteAbelianGroup::parse(" 4 , 2 ").literal(), "2,4");
    EXPECT_TRUE(FiniteAbelianGroup::parse("1").is_trivial());
    EXPECT_THROW(FiniteAbelianGroup::parse("2,x"), std::invalid_argument);
    EXPECT_THROW(FiniteAbelianGroup::parse("0"), std::invalid_argument);
}

TEST(Group, TorsionExamples) {
    const FiniteAbelianGroup v4{2, 2};
    EXPECT_EQ(v4.torsion_count(2), 4);
    EXPECT_EQ(FiniteAbelianGroup{4}.torsion_count(2), 2);
    EXPECT_EQ(FiniteAbelianGroup{3}.torsion_count(4), 1);
    EXPECT_EQ(v4.count_elements_of_order(2), 3);
}

TEST(Group, AutomorphismExamples) {
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{2}), 1);
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{3}), 2);
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{2, 2}), 6);
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{4}), 2);
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{2, 2, 2}), 168);
    EXPECT_EQ(automorphism_count(FiniteAbelianGroup{2, 4}), 8);
}

TEST(GroupProperty, TorsionMatchesElementCount) {
    for (const auto& g : groups_up_to(200)) {
        for (std::int64_t d = 1; d <= 24; ++d) ASSERT_EQ(g.torsion_count(d), brute_torsion(g, d)) << g << " d=" << d;
    }
}

TEST(GroupProperty, OrderCountsSumToOrder) {
    for (const auto& g : groups_up_to(200)) {
        std::int64_t total = 0;
        for (std::int64_t f = 1; f <= g.exponent(); ++f) {
            if (g.exponent() % f == 0) total += g.count_elements_of_order(f);
        }
        ASSERT_EQ(total, g.order()) << g;
    }
}

TEST(GroupProperty, AutomorphismsMatchBruteForce) {
    for (const auto& g : groups_up_to(32)) {
        // the brute force tries |G|^rank generator assignments
        if (std::pow(static_cast<double>(g.order()), static_cast<double>(g.rank())) > 2e6) continue;
        ASSERT_EQ(automorphism_count(g), brute_automorphisms(g)) << g;
    }
}

TEST(GroupProperty, IndexRoundTripAndArithmetic) {
    for (const auto& g : groups_up_to(60)) {
        for (std::int64_t i = 0; i < g.order(); ++i) {
            const GroupElement x = g.element_at(i);
            ASSERT_EQ(g.index_of(x), i);
            ASSERT_TRUE(g.is_identity(g.add(x, g.negate(x))));
            ASSERT_EQ(g.add_indices(i, g.index_of(g.negate(x))), 0);
            ASSERT_TRUE(g.is_identity(g.multiply(g.element_order(x), x)));
        }
    }
}

TEST(GroupProperty, MoebiusQuotientMatchesLattice) {
    for (const auto& g : groups_up_to(64)) {
        const auto subs = all_subgroups(g);
        if (subs.size() > 150) continue;  // the lattice recursion rebuilds the lattice per call
        for (const auto& h : subs) ASSERT_EQ(moebius_quotient(g, h), moebius_by_lattice(g, h)) << g;
    }
}

TEST(GroupProperty, MoebiusSumOverSubgroupsVanishes) {
    // sum_{H <= G} mu(G/H) = 0 for nontrivial G (only the trivial quotient survives at G = 1).
    for (const auto& g : groups_up_to(64)) {
        std::int64_t total = 0;
        for (const auto& h : all_subgroups(g)) total += moebius_quotient(g, h);
        ASSERT_EQ(total, 0) << g;
    }
}

TEST(Group, SubgroupLatticeJoin) {
    const FiniteAbelianGroup g{2, 4};
    const SubgroupLattice lattice(g);
    EXPECT_EQ(lattice.size(), all_subgroups(g).size());
    EXPECT_EQ(lattice.order(lattice.whole_id()), 8);
    EXPECT_EQ(lattice.order(lattice.trivial_id()), 1);
    const std::int64_t a[1] = {g.index_of(GroupElement({1, 0}))};
    const std::int64_t b[1] = {g.index_of(GroupElement({0, 1}))};
    const auto ia = lattice.id_of_generated(a);
    const auto ib = lattice.id_of_generated(b);
    EXPECT_EQ(lattice.join(ia, ib), lattice.whole_id());
    EXPECT_EQ(lattice.join(ia, lattice.trivial_id()), ia);
}

TEST(Group, GeneratesAndValidate) {
    const FiniteAbelianGroup g{2, 2};
    EXPECT_TRUE(g.generates(std::vector<GroupElement>{GroupElement({1, 0}), GroupElement({0, 1})}));
    EXPECT_FALSE(g.generates(std::vector<GroupElement>{GroupElement({1, 1})}));
    EXPECT_THROW(g.validate(GroupElement({2, 0})), std::invalid_argument);
    EXPECT_THROW(g.validate(GroupElement({1})), std::invalid_argument);
}
