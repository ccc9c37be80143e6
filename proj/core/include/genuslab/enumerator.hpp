#pragma once

// Enumeration of surjective characters (Z/mZ)^x -> G, primitive modulo m,
// for all m up to a bound, with running genus statistics.
//
// Each such character is one G-extension of Q with conductor m (counted
// with its |Aut G| labellings). Divide counts by |Aut G| for fields.

#include "genuslab/characters.hpp"
#include "genuslab/conditions.hpp"
#include "genuslab/genus.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genuslab {

struct LocalTableEntry {
    LocalCharacter character;  ///< stored at its conductor level
    int conductor_exponent = 0;
    std::int64_t ramification_index = 1;
    GroupElement value_at_minus_one;
};

/// Every character (Z/p^aZ)^x -> G at level a, each annotated with its
/// conductor exponent, ramification index and value at -1. The order is
/// lexicographic in the element indices of the generator images.
std::vector<LocalTableEntry> local_character_table(std::int64_t p, int level, const FiniteAbelianGroup& group);

/// Characters of conductor exactly m admitted by the conditions (null: none).
/// Slow reference path: builds every ResidueCharacter explicitly.
std::vector<ResidueCharacter> characters_of_conductor(const FiniteAbelianGroup& group, std::int64_t m,
                                                      bool surjective_only = true,
                                                      const LocalConditionSet* conditions = nullptr);

/// Surjections (Z/mZ)^x -> G of conductor dividing m, summed over d | m.
std::int64_t count_surjections_dividing(const FiniteAbelianGroup& group, std::int64_t m);

/// The same count via sum over subgroups H of mu(G/H) |Hom((Z/mZ)^x, H)|.
std::int64_t surjection_count_via_moebius(const FiniteAbelianGroup& group, std::int64_t m);

struct Checkpoint {
    std::int64_t bound = 0;
    std::int64_t count = 0;            ///< surjective characters with conductor <= bound
    std::int64_t ram_weight_sum = 0;   ///< sum of e_inf * prod e_p
    std::int64_t genus_sum = 0;
    std::int64_t narrow_genus_sum = 0;
    std::map<std::int64_t, std::int64_t> genus_histogram;
    std::map<std::int64_t, std::int64_t> omega_histogram;   ///< by number of ramified finite primes
    std::map<std::int64_t, std::int64_t> ramified_prime_counts;  ///< tracked p -> #{p | conductor}

    /// Named scalar statistic: count, ram_weight_sum, genus_sum, narrow_genus_sum.
    [[nodiscard]] std::int64_t statistic(const std::string& name) const;
    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct SummationSeries {
    FiniteAbelianGroup group;
    std::int64_t bound = 0;
    std::string conditions;            ///< canonical text of the local conditions
    std::int64_t automorphisms = 0;    ///< |Aut G|, 0 when not computed
    std::vector<std::int64_t> tracked_primes;
    std::vector<Checkpoint> checkpoints;
    bool complete = true;
    std::int64_t covered_bound = 0;    ///< every m <= covered_bound was enumerated
    std::string stop_reason;           ///< empty when complete

    [[nodiscard]] const Checkpoint& final() const;
    friend bool operator==(const SummationSeries&, const SummationSeries&) = default;
};

struct EnumerationOptions {
    unsigned threads = 1;                      ///< 0: hardware concurrency
    std::vector<std::int64_t> tracked_primes;  ///< empty: primes below 100
    std::vector<std::int64_t> checkpoints;     ///< empty: default_checkpoints(bound)
    std::int64_t max_bound = 100'000'000;
    std::size_t max_records = 20'000'000;      ///< only applies when records are collected
    std::optional<std::chrono::milliseconds> time_budget;
    std::int64_t chunk_size = 1 << 15;
    std::string sieve_cache;                   ///< base prime cache file, empty: none
};

/// Decades and halvings of the bound (down to 10), plus the bound itself.
std::vector<std::int64_t> default_checkpoints(std::int64_t bound);

/// Enumerates every conductor m <= bound. The result does not depend on the
/// thread count. Hitting max_records or the time budget stops early and
/// returns a series with complete = false holding the covered checkpoints.
/// Throws std::invalid_argument for bound > max_bound, |G| > 512, or a
/// trivial group.
SummationSeries enumerate(const FiniteAbelianGroup& group, std::int64_t bound, const LocalConditionSet& conditions,
                          const EnumerationOptions& options = {}, std::vector<ExtensionRecord>* records = nullptr);

/// Serial enumeration of a single conductor through the fast tables, for
/// cross-checks: one record per admitted surjective character.
std::vector<ExtensionRecord> enumerate_conductor(const FiniteAbelianGroup& group, std::int64_t m,
                                                 const LocalConditionSet& conditions = {});

}  // namespace genuslab
