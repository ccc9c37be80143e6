#pragma once

// Brute-force reference implementations and small generators for property
// tests. Everything here works from first principles (value tables of
// characters on (Z/mZ)^x, element lists of groups) and shares no code with
// the fast paths beyond FiniteAbelianGroup element arithmetic.

#include "genuslab/exponents.hpp"
#include "genuslab/genus.hpp"
#include "genuslab/group.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace genuslab::testing {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }

  private:
    std::mt19937_64 engine_;
};

/// Every isomorphism type of finite abelian group with 2 <= |G| <= max_order.
std::vector<FiniteAbelianGroup> groups_up_to(std::int64_t max_order);
FiniteAbelianGroup random_group(Rng& rng, std::int64_t max_order);

/// #{g : d g = 0} by listing elements.
std::int64_t brute_torsion(const FiniteAbelianGroup& group, std::int64_t d);
/// |Aut G| by testing every assignment of the standard generators.
std::int64_t brute_automorphisms(const FiniteAbelianGroup& group);
/// sum over g != 0 of ord(g) / degree(ord g), element by element.
Rational brute_rho(const FiniteAbelianGroup& group, const std::function<std::int64_t(std::int64_t)>& degree);
Rational brute_omega(const FiniteAbelianGroup& group, const std::function<std::int64_t(std::int64_t)>& degree);

/// A character (Z/mZ)^x -> G as a value table (element index per residue; -1 off the units).
struct CharacterTable {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> values;
};

/// Every homomorphism (Z/mZ)^x -> G, found by extending generator images
/// along the Cayley graph and rejecting inconsistent assignments.
std::vector<CharacterTable> brute_force_characters(const FiniteAbelianGroup& group, std::int64_t m);

struct BruteFacts {
    std::int64_t conductor = 1;
    bool surjective = false;
    int e_infinity = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> ramification;  ///< (p, |chi(I_p)|) with e_p > 1
    bool minus_one_local_norm_everywhere = true;
    std::int64_t genus = 0;         ///< only meaningful when surjective
    std::int64_t narrow_genus = 0;
};
BruteFacts brute_facts(const FiniteAbelianGroup& group, const CharacterTable& chi);

/// Surjective primitive characters of conductor exactly m, as records.
std::vector<ExtensionRecord> brute_force_records(const FiniteAbelianGroup& group, std::int64_t m);

struct BruteTotals {
    std::int64_t count = 0;
    std::int64_t ram_weight_sum = 0;
    std::int64_t genus_sum = 0;
    std::int64_t narrow_genus_sum = 0;
    std::map<std::int64_t, std::int64_t> genus_histogram;
};
BruteTotals brute_force_totals(const FiniteAbelianGroup& group, std::int64_t bound);

/// Surjections (Z/mZ)^x -> G with any conductor dividing m.
std::int64_t brute_surjections(const FiniteAbelianGroup& group, std::int64_t m);

}  // namespace genuslab::testing
