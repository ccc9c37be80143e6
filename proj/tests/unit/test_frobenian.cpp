#include "genuslab/frobenian.hpp"

#include "genuslab/arith.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace genuslab;
using genuslab::testing::groups_up_to;

namespace {

const SubgroupOfQStar kTrivial;
const SubgroupOfQStar kMinusOne = SubgroupOfQStar::parse("-1");

}  // namespace

TEST(Frobenian, SubgroupParsing) {
    EXPECT_TRUE(SubgroupOfQStar::parse("").is_trivial());
    EXPECT_TRUE(SubgroupOfQStar::parse("1").is_trivial());
    EXPECT_TRUE(kMinusOne.is_minus_one());
    const auto a = SubgroupOfQStar::parse("2, -3/5");
    EXPECT_EQ(a.to_string(), "2,-3/5");
    EXPECT_TRUE(a.is_bad_prime(5));
    EXPECT_TRUE(a.is_bad_prime(3));
    EXPECT_FALSE(a.is_bad_prime(7));
    EXPECT_EQ(SubgroupOfQStar::parse("6/4").to_string(), "3/2");
    EXPECT_THROW(SubgroupOfQStar::parse("0"), std::invalid_argument);
    EXPECT_THROW(SubgroupOfQStar::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(SubgroupOfQStar::parse("x"), std::invalid_argument);
}

TEST(Frobenian, DivisorExamples) {
    const FiniteAbelianGroup z2{2};
    EXPECT_EQ(d_A_H(kMinusOne, z2, 5), 2);
    EXPECT_EQ(d_A_H(kMinusOne, z2, 7), 1);
    for (std::int64_t q : {3, 5, 7, 11, 13, 31}) {
        EXPECT_EQ(d_A_H(kTrivial, FiniteAbelianGroup{6}, q), std::gcd<std::int64_t>(6, q - 1));
        EXPECT_EQ(d_x_H({}, FiniteAbelianGroup{6}, q), std::gcd<std::int64_t>(6, q - 1));
    }
    // x = 2 for H = Z/2: d_x = 2 iff 2 is a square mod q
    EXPECT_EQ(d_x_H({Rational(2)}, z2, 7), 2);
    EXPECT_EQ(d_x_H({Rational(2)}, z2, 5), 1);
    EXPECT_THROW(d_A_H(kTrivial, z2, 9), std::invalid_argument);
    EXPECT_THROW(d_A_H(SubgroupOfQStar::parse("3"), z2, 3), std::invalid_argument);
    EXPECT_THROW(d_x_H({Rational(2), Rational(3)}, z2, 5), std::invalid_argument);
}

TEST(Frobenian, ClosedFormExamples) {
    EXPECT_EQ(closed_form_F(2, 2, FiniteAbelianGroup{2}), 2);
    EXPECT_EQ(closed_form_F(1, 1, FiniteAbelianGroup{2}), 0);
    EXPECT_EQ(closed_form_F(3, 3, FiniteAbelianGroup{3}), 6);
    EXPECT_THROW(closed_form_F(0, 1, FiniteAbelianGroup{2}), std::invalid_argument);
}

TEST(Frobenian, CoefficientExamples) {
    for (std::int64_t q : primes_up_to(200)) {
        if (q == 2) continue;
        EXPECT_EQ(s_x_H(q, FiniteAbelianGroup{2}, kTrivial), 2);
        if (q == 3) continue;
        EXPECT_EQ(s_x_H(q, FiniteAbelianGroup{3}, kTrivial), q % 3 == 1 ? 6 : 0);
    }
}

TEST(Frobenian, EulerFactorExamples) {
    EXPECT_EQ(euler_factor(5, 2), Rational(7, 5));
    EXPECT_EQ(euler_factor(11, s_x_H(11, FiniteAbelianGroup{3}, kTrivial)), Rational(1));
    EXPECT_EQ(euler_factor(13, s_x_H(13, FiniteAbelianGroup{}, kTrivial)), Rational(1));
    EXPECT_DOUBLE_EQ(euler_factor(5, 2, 1.0), 1.4);
    EXPECT_THROW(euler_factor(5, 2, 0.5), std::invalid_argument);
    const auto sample = frobenian_sample(13, FiniteAbelianGroup{3}, kTrivial);
    EXPECT_EQ(sample.d_a, 3);
    EXPECT_EQ(sample.s, 6);
    EXPECT_EQ(sample.euler_factor, Rational(19, 13));
}

TEST(Frobenian, MeanExamples) {
    const auto z2 = frobenian_mean_empirical(FiniteAbelianGroup{2}, kTrivial, {}, 10'000);
    EXPECT_DOUBLE_EQ(z2.empirical, 3.0);
    EXPECT_EQ(z2.predicted, Rational(3));
    EXPECT_TRUE(z2.has_prediction);
    EXPECT_EQ(z2.samples, static_cast<std::int64_t>(primes_up_to(10'000).size()) - 1);

    const auto z3 = frobenian_mean_empirical(FiniteAbelianGroup{3}, kTrivial, {}, 100'000, nullptr, 2);
    EXPECT_EQ(z3.predicted, Rational(4));
    EXPECT_NEAR(z3.empirical, 4.0, 0.05);

    const auto minus = frobenian_mean_empirical(FiniteAbelianGroup{2}, kMinusOne, {}, 100'000);
    EXPECT_EQ(minus.predicted, Rational(2));
    EXPECT_NEAR(minus.empirical, 2.0, 0.03);

    const auto with_x = frobenian_mean_empirical(FiniteAbelianGroup{2}, kTrivial, {Rational(2)}, 10'000);
    EXPECT_FALSE(with_x.has_prediction);
    EXPECT_THROW(frobenian_mean_empirical(FiniteAbelianGroup{2}, kTrivial, {}, 999), std::invalid_argument);

    const auto dm = d_A_mean(FiniteAbelianGroup{4}, kTrivial, 100'000, DegreeOracle::rationals());
    // odd q: gcd(4, q - 1) is 2 or 4, each half the time
    EXPECT_NEAR(dm.predicted, 3.0, 1e-12);
    EXPECT_NEAR(dm.empirical, dm.predicted, 0.02);
}

TEST(Frobenian, UnitClassesAndWang) {
    EXPECT_EQ(sha_omega_unit_classes(2).classes, (std::vector<std::int64_t>{1}));
    EXPECT_FALSE(sha_omega_unit_classes(2).unsupported);
    EXPECT_FALSE(sha_omega_unit_classes(3).unsupported);
    EXPECT_TRUE(sha_omega_unit_classes(8).unsupported);
    EXPECT_TRUE(sha_omega_unit_classes(24).unsupported);

    const auto report = wang_counterexample_check(2000);
    EXPECT_TRUE(report.fourth_power_identity);
    EXPECT_TRUE(report.not_global_eighth_power);
    EXPECT_TRUE(report.local_eighth_powers);
    EXPECT_TRUE(report.passed());
    EXPECT_GT(report.primes_checked, 100);
}

TEST(FrobenianProperty, PairingOracleMatchesClosedForm) {
    const std::vector<SubgroupOfQStar> subgroups = {kTrivial, kMinusOne, SubgroupOfQStar::parse("2"),
                                                    SubgroupOfQStar::parse("-3,5/7")};
    for (const auto& g : groups_up_to(16)) {
        std::vector<DualTuple> xs = {{}};
        DualTuple twos(g.rank(), Rational(2));
        xs.push_back(twos);
        DualTuple mixed;
        for (std::size_t i = 0; i < g.rank(); ++i) mixed.push_back(i % 2 == 0 ? Rational(-1) : Rational(3, 11));
        xs.push_back(mixed);
        for (const auto& a : subgroups) {
            for (const auto& x : xs) {
                for (std::int64_t q : primes_up_to(1000)) {
                    if (q < 13 || g.order() % q == 0) continue;
                    const auto s = s_x_H(q, g, a, x);
                    ASSERT_NEAR(static_cast<double>(s), s_x_H_by_pairing(q, g, a, x), 1e-6)
                        << g << " A=" << a.to_string() << " q=" << q;
                    const auto s1 = s_x_H(q, g, a);
                    ASSERT_LE(s, s1);
                    const bool x_trivial_at_q = d_x_H(x, g, q) == std::gcd(g.exponent(), q - 1);
                    if (x_trivial_at_q) ASSERT_EQ(s, s1);
                    // with A trivial the converse holds too
                    if (a.is_trivial()) ASSERT_EQ(s == s1, x_trivial_at_q) << g << " q=" << q;
                    const Rational ef = euler_factor(q, s);
                    ASSERT_LE(std::abs(boost::rational_cast<double>(ef) - 1.0),
                              static_cast<double>(g.order() * g.exponent()) / static_cast<double>(q));
                }
            }
        }
    }
}

// The Euler factor from the closed form equals the direct local character sum.
TEST(FrobenianProperty, EulerFactorEqualsCharacterSum) {
    for (const auto& g : groups_up_to(16)) {
        for (std::int64_t q : primes_up_to(1000)) {
            if (g.order() % q == 0) continue;
            ASSERT_EQ(euler_factor(q, s_x_H(q, g, kTrivial)), local_character_sum_factor(q, g)) << g << " q=" << q;
        }
    }
}
