#pragma once

// Genus numbers of abelian extensions K/Q from Furuta's formula:
//
//   g(K/Q)  = e_inf * prod_p e_p / ([K:Q] * iota)
//   g+(K/Q) =         prod_p e_p / [K:Q]
//
// with h(Q) = h+(Q) = 1 and iota = [Z^x : Z^x cap local norms] in {1, 2},
// which is 1 exactly when -1 is a local norm at every ramified prime.
// Both quotients must be exact; a remainder is an InvariantViolation.

#include "genuslab/characters.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace genuslab {

struct ExtensionRecord {
    std::int64_t conductor = 1;
    FiniteAbelianGroup group;
    bool surjective = true;
    int e_infinity = 1;
    /// (p, e_p) for every ramified prime, increasing p.
    std::vector<std::pair<std::int64_t, std::int64_t>> ramification;
    int omega_finite = 0;
    int iota = 1;
    std::int64_t genus = 1;
    std::int64_t narrow_genus = 1;

    /// Ramified places counting infinity when e_infinity = 2.
    [[nodiscard]] int omega_total() const noexcept { return omega_finite + (e_infinity == 2 ? 1 : 0); }
};

/// e_inf * ram_product / (|G| * iota), checked for exactness.
std::int64_t furuta_genus(std::int64_t group_order, int e_infinity, std::int64_t ram_product, int iota);
/// ram_product / |G|, checked for exactness.
std::int64_t furuta_narrow_genus(std::int64_t group_order, std::int64_t ram_product);

/// iota: 1 if the exponent is odd or -1 is a local norm everywhere, else 2.
int unit_norm_index(const ResidueCharacter& psi);

std::int64_t genus_number(const ResidueCharacter& psi);
std::int64_t narrow_genus_number(const ResidueCharacter& psi);

/// Sum over eps in Z^x / Z^{x e} of f_eps(K), where f_eps indicates that eps is
/// everywhere locally a norm. Equals [Z^x : Z^{x e}] / iota.
std::int64_t unit_norm_index_sum(const ResidueCharacter& psi);

ExtensionRecord make_extension_record(const ResidueCharacter& psi);

/// CSV columns: conductor,group,genus,narrow_genus,omega_finite,e_infty,iota,ram_primes
std::string extension_csv_header();
std::string to_csv_row(const ExtensionRecord& record);

}  // namespace genuslab
