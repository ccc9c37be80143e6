#include "genuslab/genus.hpp"

#include "genuslab/errors.hpp"

#include <sstream>
#include <stdexcept>

namespace genuslab {

std::int64_t furuta_genus(std::int64_t group_order, int e_infinity, std::int64_t ram_product, int iota) {
    const std::int64_t numerator = e_infinity * ram_product;
    const std::int64_t denominator = group_order * iota;
    if (numerator % denominator != 0) {
        std::ostringstream os;
        os << "non-integral genus number " << numerator << '/' << denominator;
        throw InvariantViolation(os.str());
    }
    return numerator / denominator;
}

std::int64_t furuta_narrow_genus(std::int64_t group_order, std::int64_t ram_product) {
    if (ram_product % group_order != 0) {
        std::ostringstream os;
        os << "non-integral narrow genus number " << ram_product << '/' << group_order;
        throw InvariantViolation(os.str());
    }
    return ram_product / group_order;
}

namespace {

void require_surjective(const ResidueCharacter& psi) {
    if (!psi.is_surjective()) throw std::invalid_argument("genus numbers need a surjective character");
}

std::int64_t ram_product(const ResidueCharacter& psi) {
    std::int64_t product = 1;
    for (const auto& chi : psi.components()) product *= chi.ramification_index();
    return product;
}

}  // namespace

int unit_norm_index(const ResidueCharacter& psi) {
    if (psi.group().exponent() % 2 == 1) return 1;
    return psi.unit_is_everywhere_local_norm() ? 1 : 2;
}

std::int64_t genus_number(const ResidueCharacter& psi) {
    require_surjective(psi);
    return furuta_genus(psi.group().order(), psi.infinite_ramification(), ram_product(psi), unit_norm_index(psi));
}

std::int64_t narrow_genus_number(const ResidueCharacter& psi) {
    require_surjective(psi);
    return furuta_narrow_genus(psi.group().order(), ram_product(psi));
}

std::int64_t unit_norm_index_sum(const ResidueCharacter& psi) {
    require_surjective(psi);
    if (psi.group().exponent() % 2 == 1) return 1;  // Z^x / Z^{x e} is trivial
    // Z^x / Z^{x e} = {1, -1}; 1 is always a norm.
    const std::int64_t sum = 1 + (psi.unit_is_everywhere_local_norm() ? 1 : 0);
    // Subgroup-indicator identity: the sum is |B| = |A| / [A : B].
    if (sum != 2 / unit_norm_index(psi)) throw InvariantViolation("unit norm indicator sum disagrees with the index");
    return sum;
}

ExtensionRecord make_extension_record(const ResidueCharacter& psi) {
    ExtensionRecord r;
    r.conductor = psi.conductor();
    r.group = psi.group();
    r.surjective = psi.is_surjective();
    r.e_infinity = psi.infinite_ramification();
    for (const auto& chi : psi.components()) r.ramification.emplace_back(chi.prime(), chi.ramification_index());
    r.omega_finite = static_cast<int>(r.ramification.size());
    r.iota = unit_norm_index(psi);
    if (r.surjective) {
        r.genus = genus_number(psi);
        r.narrow_genus = narrow_genus_number(psi);
    }
    return r;
}

std::string extension_csv_header() {
    return "conductor,group,genus,narrow_genus,omega_finite,e_infty,iota,ram_primes";
}

std::string to_csv_row(const ExtensionRecord& record) {
    std::ostringstream os;
    os << record.conductor << ",\"" << record.group.literal() << "\"," << record.genus << ',' << record.narrow_genus
       << ',' << record.omega_finite << ',' << record.e_infinity << ',' << record.iota << ',';
    for (std::size_t i = 0; i < record.ramification.size(); ++i) {
        if (i > 0) os << ';';
        os << record.ramification[i].first << ':' << record.ramification[i].second;
    }
    return os.str();
}

}  // namespace genuslab
