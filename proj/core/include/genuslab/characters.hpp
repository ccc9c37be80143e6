#pragma once

// Characters (Z/mZ)^x -> G and their local components.
//
// Over Q the G-extensions of bounded conductor are exactly the surjective
// characters of (Z/mZ)^x that are primitive modulo m. A character is stored
// as one local component per prime power p^a || m, each given by the images
// of fixed generators of (Z/p^aZ)^x.
//
// Artin-map normalization (arithmetic vs geometric Frobenius) is left
// unfixed. Every quantity computed downstream (triviality of values, sizes
// of images) is invariant under inverting the character.

#include "genuslab/arith.hpp"
#include "genuslab/group.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace genuslab {

struct CyclicGenerator {
    std::int64_t generator = 1;  ///< residue modulo p^a
    std::int64_t order = 1;
};

/// Presentation of (Z/p^aZ)^x by generators. For odd p a single primitive
/// root g (the least primitive root r mod p, replaced by r + p when
/// r^{p-1} = 1 mod p^2) is used at every level, so generators agree under
/// reduction. For p = 2: nothing at a <= 1, {-1} at a = 2, {-1, 5} at a >= 3.
class LocalUnitStructure {
  public:
    LocalUnitStructure(std::int64_t p, int a);

    [[nodiscard]] std::int64_t prime() const noexcept { return p_; }
    [[nodiscard]] int level() const noexcept { return a_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<CyclicGenerator>& generators() const noexcept { return gens_; }

    /// Exponents (e_i) with prod g_i^{e_i} = u mod p^a, e_i in [0, ord g_i).
    /// Table lookup for p^a <= 2^16, Pohlig-Hellman otherwise.
    [[nodiscard]] std::vector<std::int64_t> discrete_log(std::int64_t u) const;
    /// The same exponents reduced modulo gcd(d, ord g_i), computed from
    /// power residues; cheap whenever d is small.
    [[nodiscard]] std::vector<std::int64_t> discrete_log_mod(std::int64_t u, std::int64_t d) const;
    /// Exponent vector of -1.
    [[nodiscard]] std::vector<std::int64_t> log_minus_one() const;

  private:
    [[nodiscard]] std::int64_t reduce_unit(std::int64_t u) const;
    [[nodiscard]] std::int64_t cyclic_log(std::int64_t g, std::int64_t h, std::int64_t n,
                                          const Factorization& n_factors) const;

    std::int64_t p_ = 2;
    int a_ = 0;
    std::int64_t modulus_ = 1;
    std::int64_t order_ = 1;
    std::vector<CyclicGenerator> gens_;
    Factorization order_factors_;        // factorization of the cyclic part used by Pohlig-Hellman
    std::shared_ptr<const std::vector<std::int32_t>> table_;  // u -> packed exponents, or null
};

/// unit_group_structure(p, a); throws std::invalid_argument if p is not prime.
LocalUnitStructure unit_group_structure(std::int64_t p, int a);

class LocalCharacter {
  public:
    /// Images of the structure's generators. Each image order must divide
    /// the generator's order.
    LocalCharacter(LocalUnitStructure structure, FiniteAbelianGroup group, std::vector<GroupElement> images);

    [[nodiscard]] const LocalUnitStructure& structure() const noexcept { return structure_; }
    [[nodiscard]] const FiniteAbelianGroup& group() const noexcept { return group_; }
    [[nodiscard]] const std::vector<GroupElement>& images() const noexcept { return images_; }
    [[nodiscard]] std::int64_t prime() const noexcept { return structure_.prime(); }
    [[nodiscard]] int level() const noexcept { return structure_.level(); }

    [[nodiscard]] bool is_trivial() const;
    /// Smallest c with the character trivial on 1 + p^c Z_p (0 iff trivial).
    [[nodiscard]] int conductor_exponent() const;
    /// e_p = |chi((Z/p^aZ)^x)|, the size of the subgroup generated by the images.
    [[nodiscard]] std::int64_t ramification_index() const;
    /// chi(u) for u coprime to p.
    [[nodiscard]] GroupElement value(std::int64_t u) const;
    [[nodiscard]] GroupElement value_at_minus_one() const;
    /// Reinterpretation at level c, conductor_exponent() <= c; c above the
    /// current level lifts the character through the reduction map.
    [[nodiscard]] LocalCharacter at_level(int c) const;

    friend bool operator==(const LocalCharacter& a, const LocalCharacter& b) {
        return a.prime() == b.prime() && a.level() == b.level() && a.group_ == b.group_ && a.images_ == b.images_;
    }

  private:
    LocalUnitStructure structure_;
    FiniteAbelianGroup group_;
    std::vector<GroupElement> images_;
};

/// A character of (Z/mZ)^x with values in G, stored primitively: every
/// component sits at its conductor level, so modulus() is the conductor.
class ResidueCharacter {
  public:
    /// Components may be imprimitive or trivial; they are reduced to their
    /// conductor levels and trivial ones are dropped. Primes must be distinct.
    ResidueCharacter(FiniteAbelianGroup group, std::vector<LocalCharacter> components);

    [[nodiscard]] const FiniteAbelianGroup& group() const noexcept { return group_; }
    [[nodiscard]] const std::vector<LocalCharacter>& components() const noexcept { return components_; }
    [[nodiscard]] std::int64_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int64_t conductor() const noexcept { return modulus_; }

    /// Sum over p | m of chi_p(n mod p^{a_p}); throws if gcd(n, m) != 1.
    [[nodiscard]] GroupElement evaluate(std::int64_t n) const;
    /// e_infinity: 2 when psi(-1) != 0 (complex field), else 1.
    [[nodiscard]] int infinite_ramification() const;
    /// Whether -1 is a local norm at every finite p | m, i.e. chi_p(-1) = 0.
    /// The archimedean condition then follows from the product formula:
    /// psi(-1) is the sum of the local values.
    [[nodiscard]] bool unit_is_everywhere_local_norm() const;
    [[nodiscard]] bool is_surjective() const;

    /// "m: p^a -> [gen:img,...]; ..." with images printed as coordinate tuples.
    [[nodiscard]] std::string to_string() const;

  private:
    FiniteAbelianGroup group_;
    std::vector<LocalCharacter> components_;
    std::int64_t modulus_ = 1;
};

}  // namespace genuslab
