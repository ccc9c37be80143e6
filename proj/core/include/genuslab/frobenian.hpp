#pragma once

// Local coefficient functions at primes q of good reduction:
//   d_A(q)  largest d | gcd(e, q-1) with every a in A a d-th power mod q
//   d_x(q)  largest d | gcd(e, q-1) with each x_i a gcd(d, n_i)-th power mod q
//   s(q)    F(d_A(q), d_x(q)), where
//           F(A, B) = -1 + sum_{m | A} m sum_{d | gcd(m, B)} mu(m/d) |H[d]|
// and the Euler factors 1 + s(q)/q^s they produce.

#include "genuslab/exponents.hpp"
#include "genuslab/group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace genuslab {

/// A finitely generated subgroup of Q^x, given by reduced nonzero fractions.
class SubgroupOfQStar {
  public:
    SubgroupOfQStar() = default;
    /// Throws std::invalid_argument on a zero numerator or denominator.
    explicit SubgroupOfQStar(std::vector<Rational> generators);
    /// Comma-separated rationals, e.g. "-1" or "2,-3/5"; "" or "1" is trivial.
    static SubgroupOfQStar parse(const std::string& text);

    [[nodiscard]] const std::vector<Rational>& generators() const noexcept { return generators_; }
    [[nodiscard]] bool is_trivial() const noexcept { return generators_.empty(); }
    [[nodiscard]] bool is_minus_one() const noexcept;
    /// Whether q divides some numerator or denominator.
    [[nodiscard]] bool is_bad_prime(std::int64_t q) const;
    [[nodiscard]] std::string to_string() const;

  private:
    std::vector<Rational> generators_;
};

/// x as one rational per invariant factor of H (the dual of H is
/// identified with H through the same invariant factors). Empty means x = 1.
using DualTuple = std::vector<Rational>;

/// Throws std::invalid_argument when q is not prime or divides the generator data.
std::int64_t d_A_H(const SubgroupOfQStar& a, const FiniteAbelianGroup& group, std::int64_t q);
std::int64_t d_x_H(const DualTuple& x, const FiniteAbelianGroup& group, std::int64_t q);

std::int64_t closed_form_F(std::int64_t a_val, std::int64_t b_val, const FiniteAbelianGroup& group);

std::int64_t s_x_H(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a, const DualTuple& x = {});

/// -1 + sum over characters chi of F_q^x / A into H of ord(chi) <chi, x>,
/// with the pairing exp(2 pi i sum_i chi(x_i)_i / n_i) evaluated in floating
/// point. Test oracle for s_x_H; q must be small (discrete logs by table).
double s_x_H_by_pairing(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a,
                        const DualTuple& x = {});

/// 1 + s/q exactly.
Rational euler_factor(std::int64_t q, std::int64_t s_value);
/// 1 + s/q^sigma in floating point, sigma > 1/2.
double euler_factor(std::int64_t q, std::int64_t s_value, double sigma);

/// (1/|G|) sum over (chi, u) in Hom((Z/qZ)^x, G) x G of e(chi)/Phi(chi),
/// built from the local character table: e is the ramification index and
/// Phi = q^{conductor exponent}. Requires q prime, q not dividing |G|.
Rational local_character_sum_factor(std::int64_t q, const FiniteAbelianGroup& group);

struct FrobenianSample {
    std::int64_t q = 0;
    std::int64_t d_a = 1;
    std::int64_t d_x = 1;
    std::int64_t s = 0;
    Rational euler_factor{1};
};

FrobenianSample frobenian_sample(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a,
                                 const DualTuple& x = {});

struct FrobenianMean {
    double empirical = 0;
    /// 1 + rho(H, A); only set when x = 1 and an oracle for A is known.
    bool has_prediction = false;
    Rational predicted{0};
    std::int64_t samples = 0;
    std::int64_t q_max = 0;
};

/// Mean of s + 1 over primes q <= q_max, skipping q | |H| and primes dividing
/// the generator data. Predictions use the built-in Q oracles for A trivial
/// and A = <-1>, or `oracle` when given. Requires q_max >= 1000.
FrobenianMean frobenian_mean_empirical(const FiniteAbelianGroup& group, const SubgroupOfQStar& a, const DualTuple& x,
                                       std::int64_t q_max, const DegreeOracle* oracle = nullptr,
                                       unsigned threads = 1);

/// Mean of d_A over the same primes, with its prediction
/// sum_d d * density(d-th level) obtained by Moebius inversion of 1/[k_d : k].
struct DivisorMean {
    double empirical = 0;
    double predicted = 0;
    std::int64_t samples = 0;
};
DivisorMean d_A_mean(const FiniteAbelianGroup& group, const SubgroupOfQStar& a, std::int64_t q_max,
                     const DegreeOracle& oracle);

struct UnitClassReport {
    std::vector<std::int64_t> classes;  ///< representatives in Z^x / Z^{x e}
    bool unsupported = false;           ///< 8 | e: the group may be nontrivial, not computed
};
UnitClassReport sha_omega_unit_classes(std::int64_t e);

struct WangReport {
    bool fourth_power_identity = false;   ///< (8 + 3 sqrt 7)^4 = 32257 + 12192 sqrt 7
    bool not_global_eighth_power = false;
    bool local_eighth_powers = false;     ///< at every odd p <= prime_bound where 7 is a square (or p = 7)
    std::int64_t primes_checked = 0;
    std::int64_t prime_bound = 0;
    std::string detail;
    [[nodiscard]] bool passed() const noexcept {
        return fourth_power_identity && not_global_eighth_power && local_eighth_powers;
    }
};
/// Throws InvariantViolation if any sub-check fails.
WangReport wang_counterexample_check(std::int64_t prime_bound = 10'000);

}  // namespace genuslab
