#pragma once

// Exponent and constant fits for counting functions of the shape
// S(B) ~ c B (log B)^{r-1}, zero-density tables, ramification densities and
// the predicted leading constant for k = Q.

#include "genuslab/conditions.hpp"
#include "genuslab/enumerator.hpp"
#include "genuslab/exponents.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace genuslab {

struct FitPoint {
    std::int64_t bound = 0;
    double value = 0;
};

struct FitResult {
    double exponent = 0;            ///< r, from slope + 1 (or slope for mean fits)
    double constant = 0;            ///< c with data ~ c B (log B)^{r-1}
    double residual = 0;            ///< weighted RMS of the regression residuals
    double two_point_exponent = 0;  ///< from the two largest checkpoints only
    std::int64_t first_bound = 0;
    std::int64_t last_bound = 0;
    std::size_t points = 0;
};

struct FitOptions {
    std::int64_t min_bound = 1000;  ///< checkpoints below this are ignored
};

/// Weighted least squares of log(S/B) against log log B over checkpoints
/// with S > 0; the two largest checkpoints weigh double. Needs at least 4
/// checkpoints spanning two decades, else std::invalid_argument.
FitResult fit_exponent(const std::vector<FitPoint>& points, const FitOptions& options = {});
FitResult fit_exponent(const SummationSeries& series, const std::string& statistic, const FitOptions& options = {});

struct MeanGenusFit {
    FitResult fit;     ///< exponent of (sum genus / count) in log B
    Rational predicted{0};  ///< rho(Q, G) - omega(Q, G)
};
MeanGenusFit mean_genus_exponent(const SummationSeries& series, const FitOptions& options = {});

struct DensityRow {
    std::int64_t bound = 0;
    std::int64_t count = 0;
    double genus_proportion = 0;               ///< share with genus = g
    std::vector<double> omega_at_most;         ///< share with at most r ramified finite primes, r = 0..
};

struct ZeroDensityReport {
    std::int64_t genus = 1;
    std::vector<DensityRow> rows;
    /// Checkpoints (bounds) where the genus proportion increased over the previous one.
    std::vector<std::int64_t> inversions;
};
ZeroDensityReport zero_density_report(const SummationSeries& series, std::int64_t genus, int max_omega = 4);

/// (t - 1)/(p + t - 1) with t = |G[p-1]|: the limiting share of extensions
/// ramified at p. Throws std::invalid_argument when p is not prime or divides |G|.
Rational delta_p_prediction(const FiniteAbelianGroup& group, std::int64_t p);

struct RamificationFrequency {
    std::int64_t p = 0;
    double empirical = 0;
    double predicted = 0;
    double relative_error = 0;
};
/// Uses the checkpoint at the largest bound; p must be a tracked prime.
RamificationFrequency ramification_frequency(const SummationSeries& series, std::int64_t p);

struct ConstantPrediction {
    std::int64_t rho = 0;
    std::int64_t truncation = 0;
    std::vector<std::int64_t> bad_primes;  ///< finite places of S
    double normalization = 0;              ///< 1 / ((rho-1)! |G[2]| |G|^{|S_f|+1} [Z^x : Z^{xe}])
    double archimedean_sum = 0;
    double finite_sum = 0;                 ///< product of the local sums over finite S
    double euler_product = 0;              ///< over primes outside S up to the truncation
    double labelled = 0;                   ///< constant for surjections (labelled extensions)
    double fields = 0;                     ///< labelled / |Aut G|
    std::int64_t automorphisms = 1;
    /// Euler product truncated at 10^k for k = 3 .. while 10^k <= truncation.
    std::vector<std::pair<std::int64_t, double>> truncation_history;
};

/// The normalizing factor for k = Q; see the derivation in asymptotics.cpp.
double constant_normalization(const FiniteAbelianGroup& group, std::int64_t rho, std::size_t finite_places);

/// Leading constant of sum over G-extensions with conductor <= B of the
/// genus number, ~ C B (log B)^{rho-1}. Throws std::domain_error when
/// 8 | exponent (unsupported unit case) and std::invalid_argument when the
/// truncation does not exceed every prime of S.
ConstantPrediction predict_leading_constant(const FiniteAbelianGroup& group, const LocalConditionSet& conditions,
                                            std::int64_t truncation);

/// Least squares of S(B)/B against a polynomial of the given degree in
/// log B; `leading` is the top coefficient, comparable with the predicted
/// constant when degree = rho - 1. Same checkpoint filter and weights as
/// fit_exponent.
struct PolynomialFit {
    std::vector<double> coefficients;  ///< constant term first
    double leading = 0;
    std::int64_t first_bound = 0;
    std::int64_t last_bound = 0;
};
PolynomialFit fit_log_polynomial(const SummationSeries& series, const std::string& statistic, int degree,
                                 const FitOptions& options = {});

struct ConstantRatioRow {
    std::int64_t bound = 0;
    double empirical = 0;  ///< sum genus / (B (log B)^{rho-1}), per labelled extension
    double ratio = 0;      ///< predicted / empirical, 0 while nothing is counted
};
/// Ratio at every checkpoint with bound >= min_bound.
std::vector<ConstantRatioRow> constant_ratio_report(const SummationSeries& series, const ConstantPrediction& prediction,
                                                    std::int64_t min_bound = 1000);

}  // namespace genuslab
