#include "genuslab/asymptotics.hpp"
#include "genuslab/frobenian.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace genuslab;

namespace {

std::vector<FitPoint> synthetic(double r, double c = 0.3) {
    std::vector<FitPoint> points;
    for (std::int64_t b = 1000; b <= 100'000'000; b *= 2) {
        const double x = static_cast<double>(b);
        points.push_back({b, c * x * std::pow(std::log(x), r - 1)});
    }
    return points;
}

}  // namespace

TEST(Asymptotics, RecoversSyntheticExponents) {
    for (double r : {1.0, 2.0, 3.0, 6.0}) {
        const auto fit = fit_exponent(synthetic(r));
        EXPECT_NEAR(fit.exponent, r, 0.02) << r;
        EXPECT_NEAR(fit.two_point_exponent, r, 0.02) << r;
        EXPECT_NEAR(fit.constant, 0.3, 0.01) << r;
        EXPECT_LT(fit.residual, 1e-9);
    }
}

TEST(Asymptotics, RejectsThinData) {
    std::vector<FitPoint> few = {{1000, 1}, {2000, 2}, {4000, 4}};
    EXPECT_THROW(fit_exponent(few), std::invalid_argument);
    std::vector<FitPoint> narrow = {{1000, 1}, {2000, 2}, {4000, 4}, {8000, 8}, {16000, 16}};
    EXPECT_THROW(fit_exponent(narrow), std::invalid_argument);
    std::vector<FitPoint> zeros = {{1000, 0}, {10'000, 0}, {100'000, 0}, {1'000'000, 0}};
    EXPECT_THROW(fit_exponent(zeros), std::invalid_argument);
}

TEST(Asymptotics, MeanGenusPrediction) {
    const auto z2 = enumerate(FiniteAbelianGroup{2}, 100'000, {});
    EXPECT_EQ(mean_genus_exponent(z2).predicted, Rational(1));
    const auto z3 = enumerate(FiniteAbelianGroup{3}, 100'000, {});
    EXPECT_EQ(mean_genus_exponent(z3).predicted, Rational(2));
    const auto v4 = enumerate(FiniteAbelianGroup{2, 2}, 100'000, {});
    const auto fit = mean_genus_exponent(v4);
    EXPECT_EQ(fit.predicted, Rational(3));
    EXPECT_GT(fit.fit.exponent, 0);
}

TEST(Asymptotics, DeltaPredictionExamples) {
    EXPECT_EQ(delta_p_prediction(FiniteAbelianGroup{2}, 3), Rational(1, 4));
    EXPECT_EQ(delta_p_prediction(FiniteAbelianGroup{3}, 5), Rational(0));
    EXPECT_EQ(delta_p_prediction(FiniteAbelianGroup{3}, 7), Rational(2, 9));
    for (std::int64_t p : {3, 5, 7, 11, 13}) EXPECT_EQ(delta_p_prediction(FiniteAbelianGroup{2}, p), Rational(1, p + 1));
    EXPECT_THROW(delta_p_prediction(FiniteAbelianGroup{2}, 2), std::invalid_argument);
    EXPECT_THROW(delta_p_prediction(FiniteAbelianGroup{2}, 9), std::invalid_argument);
}

TEST(Asymptotics, RamificationFrequencyNearPrediction) {
    const auto series = enumerate(FiniteAbelianGroup{2}, 1'000'000, {});
    for (std::int64_t p : {3, 5, 7}) {
        const auto f = ramification_frequency(series, p);
        EXPECT_LT(f.relative_error, 0.02) << p;
    }
    EXPECT_THROW(ramification_frequency(series, 101), std::invalid_argument);
}

TEST(Asymptotics, ZeroDensityReport) {
    const auto series = enumerate(FiniteAbelianGroup{2}, 1'000'000, {});
    const auto report = zero_density_report(series, 1);
    ASSERT_FALSE(report.rows.empty());
    double at_1e3 = 0, at_1e6 = 0;
    for (const auto& row : report.rows) {
        if (row.bound == 1000) at_1e3 = row.genus_proportion;
        if (row.bound == 1'000'000) at_1e6 = row.genus_proportion;
        ASSERT_EQ(row.omega_at_most.size(), 5u);
        for (std::size_t r = 1; r < row.omega_at_most.size(); ++r) ASSERT_GE(row.omega_at_most[r], row.omega_at_most[r - 1]);
    }
    EXPECT_GT(at_1e3, at_1e6);
    // omega <= 1 share decreases along decades
    double previous = 2;
    for (const auto& row : report.rows) {
        if (row.bound < 1000 || row.bound % 10 != 0) continue;
        std::int64_t b = row.bound;
        while (b % 10 == 0) b /= 10;
        if (b != 1) continue;
        EXPECT_LT(row.omega_at_most[1], previous);
        previous = row.omega_at_most[1];
    }
    const auto never = zero_density_report(series, 3);
    for (const auto& row : never.rows) EXPECT_EQ(row.genus_proportion, 0.0);
    EXPECT_TRUE(never.inversions.empty());
}

TEST(Asymptotics, QuadraticConstant) {
    // Euler factor at q = 5 for Z/2: (1 + 2/5)(1 - 1/5)^2
    EXPECT_NEAR(boost::rational_cast<double>(euler_factor(5, 2)) * 0.8 * 0.8, 0.896, 1e-12);
    const auto c = predict_leading_constant(FiniteAbelianGroup{2}, {}, 1'000'000);
    EXPECT_EQ(c.rho, 2);
    EXPECT_EQ(c.bad_primes, (std::vector<std::int64_t>{2, 3}));
    EXPECT_EQ(c.automorphisms, 1);
    // 5/36 times prod over q >= 5 of (1 + 2/q)(1 - 1/q)^2
    long double product = 1;
    for (std::int64_t q : primes_up_to(1'000'000)) {
        if (q < 5) continue;
        const long double x = 1.0L / q;
        product *= (1 + 2 * x) * (1 - x) * (1 - x);
    }
    EXPECT_NEAR(c.labelled, 5.0 / 36.0 * static_cast<double>(product), 1e-12);
    EXPECT_NEAR(c.fields, 0.10753, 5e-5);
    // truncation stability beyond 10^4
    ASSERT_GE(c.truncation_history.size(), 3u);
    for (const auto& [mark, value] : c.truncation_history) {
        if (mark >= 10'000) EXPECT_LT(std::abs(value - c.euler_product), 1e-3) << mark;
    }
    const auto c5 = predict_leading_constant(FiniteAbelianGroup{2}, {}, 100'000);
    EXPECT_LT(std::abs(c5.euler_product - c.euler_product), 1e-4);
}

TEST(Asymptotics, ConstantErrors) {
    EXPECT_THROW(predict_leading_constant(FiniteAbelianGroup{8}, {}, 1'000'000), std::domain_error);
    EXPECT_THROW(predict_leading_constant(FiniteAbelianGroup{2}, {}, 3), std::invalid_argument);
    EXPECT_THROW(predict_leading_constant(FiniteAbelianGroup{}, {}, 1000), std::invalid_argument);
}

// Conditions change the constant in the expected direction: forcing a real
// field keeps 1 of the 3 archimedean terms.
TEST(Asymptotics, ConditionedConstant) {
    std::istringstream in("inf split\n");
    const auto real = predict_leading_constant(FiniteAbelianGroup{2}, LocalConditionSet::parse(in), 100'000);
    const auto all = predict_leading_constant(FiniteAbelianGroup{2}, {}, 100'000);
    EXPECT_NEAR(real.labelled * 3, all.labelled, 1e-12);
    std::istringstream split5("5 split\n");
    const auto s5 = predict_leading_constant(FiniteAbelianGroup{2}, LocalConditionSet::parse(split5), 100'000);
    EXPECT_LT(s5.labelled, all.labelled);
}

TEST(Asymptotics, ConstantRatioAndPolynomialFit) {
    const auto series = enumerate(FiniteAbelianGroup{2}, 1'000'000, {});
    const auto c = predict_leading_constant(FiniteAbelianGroup{2}, {}, 1'000'000);
    const auto rows = constant_ratio_report(series, c, 10'000);
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.back().bound, 1'000'000);
    for (const auto& row : rows) {
        EXPECT_NEAR(row.ratio * row.empirical, c.labelled, 1e-12);
        EXPECT_GT(row.ratio, 0.6);
        EXPECT_LT(row.ratio, 1.0);
    }
    // S/B against a line in log B: the slope is the constant
    const auto poly = fit_log_polynomial(series, "genus_sum", 1, {10'000});
    EXPECT_NEAR(poly.leading / c.labelled, 1.0, 0.05);
    EXPECT_THROW(fit_log_polynomial(series, "genus_sum", -1), std::invalid_argument);
}
