#pragma once

// Log-power exponents of the counting functions:
//   rho(k, G, A)  = sum over g != 0 of ord(g) / [k_{ord g} : k]
//   omega(k, G)   = sum over g != 0 of 1 / [k(mu_{ord g}) : k]
// where k_d = k(mu_d, d-th roots of A). The field enters only through the
// degrees [k_d : k], supplied by a DegreeOracle.

#include "genuslab/group.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace genuslab {

using Rational = boost::rational<std::int64_t>;

class DegreeOracle {
  public:
    /// k = Q, A trivial: d -> phi(d).
    static DegreeOracle rationals();
    /// k = Q, A = <-1>: d -> phi(d) for odd d and phi(2d) for even d, since
    /// Q(mu_d, (-1)^{1/d}) = Q(mu_{2d}).
    static DegreeOracle rationals_minus_one();
    /// Explicit table for an arbitrary base field.
    static DegreeOracle from_table(std::map<std::int64_t, std::int64_t> degrees, std::string name = "table");
    /// Text format: one "d degree" pair per line; '#' starts a comment.
    static DegreeOracle parse(std::istream& in);
    static DegreeOracle load(const std::string& path);

    /// [k_d : k]; throws std::out_of_range for a missing table entry.
    [[nodiscard]] std::int64_t degree(std::int64_t d) const;
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

  private:
    enum class Kind { Rationals, RationalsMinusOne, Table };
    Kind kind_ = Kind::Rationals;
    std::map<std::int64_t, std::int64_t> table_;
    std::string name_ = "Q";
};

/// Sum over f | e, f > 1, of f * #{g : ord g = f} / degree(f).
Rational rho(const FiniteAbelianGroup& group, const DegreeOracle& oracle);
/// Sum over f | e, f > 1, of #{g : ord g = f} / degree(f).
Rational omega(const FiniteAbelianGroup& group, const DegreeOracle& oracle);
/// Whether rho(group, oracle) is an integer (always true for cyclotomic oracles).
bool rho_integer_check(const FiniteAbelianGroup& group, const DegreeOracle& oracle);

/// Sum over all h in H (identity included) of ord(h) / degree(ord h) = 1 + rho.
Rational weighted_order_mean(const FiniteAbelianGroup& group, const DegreeOracle& oracle);

}  // namespace genuslab
