#include "genuslab/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace genuslab {

namespace {

constexpr std::int64_t table_limit = 1 << 16;

std::int64_t least_primitive_root(std::int64_t p) {
    if (p == 2) return 1;
    const auto factors = factorize(static_cast<u64>(p - 1));
    for (std::int64_t r = 2; r < p; ++r) {
        bool primitive = true;
        for (const auto& [q, e] : factors) {
            if (pow_mod(static_cast<u64>(r), static_cast<u64>((p - 1) / q), static_cast<u64>(p)) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return r;
    }
    throw std::logic_error("no primitive root found");
}

/// Solve gamma^x = h in a cyclic group of prime order q (baby-step giant-step).
std::int64_t prime_order_log(u64 gamma, u64 h, std::int64_t q, u64 mod) {
    if (q <= 64) {
        u64 acc = 1 % mod;
        for (std::int64_t x = 0; x < q; ++x) {
            if (acc == h) return x;
            acc = mul_mod(acc, gamma, mod);
        }
        throw std::logic_error("discrete log: element not in subgroup");
    }
    if (q > 1'000'000'000'000LL) throw std::length_error("discrete log: prime order factor too large");
    const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(q))));
    std::unordered_map<u64, std::int64_t> baby;
    baby.reserve(static_cast<std::size_t>(m) * 2);
    u64 acc = 1 % mod;
    for (std::int64_t j = 0; j < m; ++j) {
        baby.emplace(acc, j);
        acc = mul_mod(acc, gamma, mod);
    }
    const u64 giant = pow_mod(gamma, static_cast<u64>(q - (m % q)), mod);  // gamma^{-m}
    u64 cur = h;
    for (std::int64_t i = 0; i <= m; ++i) {
        if (const auto it = baby.find(cur); it != baby.end()) return (i * m + it->second) % q;
        cur = mul_mod(cur, giant, mod);
    }
    throw std::logic_error("discrete log: element not in subgroup");
}

}  // namespace

LocalUnitStructure::LocalUnitStructure(std::int64_t p, int a) : p_(p), a_(a) {
    if (!is_prime(static_cast<u64>(p))) throw std::invalid_argument("unit_group_structure: " + std::to_string(p) + " is not prime");
    if (a < 0) throw std::invalid_argument("unit_group_structure: negative level");
    if (static_cast<double>(a) * std::log2(static_cast<double>(p)) > 63.0) {
        throw std::invalid_argument("unit_group_structure: p^a exceeds 2^63");
    }
    modulus_ = ipow(p, a);
    order_ = a == 0 ? 1 : (modulus_ / p) * (p - 1);
    if (a == 0) return;
    if (p == 2) {
        if (a >= 2) gens_.push_back({modulus_ - 1, 2});
        if (a >= 3) {
            gens_.push_back({5, modulus_ / 4});
            order_factors_ = {{2, a - 2}};
        }
    } else {
        std::int64_t g = least_primitive_root(p);
        if (a >= 2 && pow_mod(static_cast<u64>(g), static_cast<u64>(p - 1), static_cast<u64>(p * p)) == 1) g += p;
        g %= modulus_;
        order_factors_ = factorize(static_cast<u64>(p - 1));
        if (a >= 2) {
            auto it = std::find_if(order_factors_.begin(), order_factors_.end(), [&](const auto& f) { return f.first == p; });
            if (it == order_factors_.end()) {
                order_factors_.emplace_back(p, a - 1);
                std::sort(order_factors_.begin(), order_factors_.end());
            } else {
                it->second += a - 1;
            }
        }
        const u64 ord = multiplicative_order(static_cast<u64>(g), static_cast<u64>(modulus_), static_cast<u64>(order_),
                                             order_factors_);
        if (static_cast<std::int64_t>(ord) != order_) throw std::logic_error("primitive root verification failed");
        gens_.push_back({g, order_});
    }
    if (modulus_ <= table_limit && !gens_.empty()) {
        auto table = std::make_shared<std::vector<std::int32_t>>(static_cast<std::size_t>(modulus_), -1);
        if (gens_.size() == 1) {
            u64 acc = 1;
            for (std::int64_t e = 0; e < gens_[0].order; ++e) {
                (*table)[acc] = static_cast<std::int32_t>(e);
                acc = mul_mod(acc, static_cast<u64>(gens_[0].generator), static_cast<u64>(modulus_));
            }
        } else {
            u64 five = 1;
            for (std::int64_t e1 = 0; e1 < gens_[1].order; ++e1) {
                (*table)[five] = static_cast<std::int32_t>(e1);
                (*table)[static_cast<u64>(modulus_) - five] = static_cast<std::int32_t>(gens_[1].order + e1);
                five = mul_mod(five, 5, static_cast<u64>(modulus_));
            }
        }
        table_ = std::move(table);
    }
}

LocalUnitStructure unit_group_structure(std::int64_t p, int a) { return LocalUnitStructure(p, a); }

std::int64_t LocalUnitStructure::reduce_unit(std::int64_t u) const {
    const std::int64_t r = mod_floor(u, modulus_);
    if (a_ > 0 && r % p_ == 0) {
        throw std::invalid_argument("discrete_log: " + std::to_string(u) + " is not a unit modulo " + std::to_string(modulus_));
    }
    return r;
}

std::int64_t LocalUnitStructure::cyclic_log(std::int64_t g, std::int64_t h, std::int64_t n,
                                            const Factorization& n_factors) const {
    const auto mod = static_cast<u64>(modulus_);
    std::int64_t x_total = 0;
    std::int64_t m_total = 1;
    for (const auto& [q, k] : n_factors) {
        const std::int64_t qk = ipow(q, k);
        const u64 gq = pow_mod(static_cast<u64>(g), static_cast<u64>(n / qk), mod);
        const u64 hq = pow_mod(static_cast<u64>(h), static_cast<u64>(n / qk), mod);
        const u64 gamma = pow_mod(gq, static_cast<u64>(qk / q), mod);
        std::int64_t x = 0;
        std::int64_t qj = 1;
        for (int j = 0; j < k; ++j) {
            const u64 shifted = mul_mod(pow_mod(gq, static_cast<u64>((qk - x) % qk), mod), hq, mod);
            const u64 hj = pow_mod(shifted, static_cast<u64>(qk / (q * qj)), mod);
            x += prime_order_log(gamma, hj, q, mod) * qj;
            qj *= q;
        }
        // CRT merge of x mod qk into x_total mod m_total
        const std::int64_t t = static_cast<std::int64_t>(
            (static_cast<i128>(mod_floor(x - x_total, qk)) * inverse_mod(m_total % qk, qk)) % qk);
        x_total += m_total * t;
        m_total *= qk;
    }
    return mod_floor(x_total, n);
}

std::vector<std::int64_t> LocalUnitStructure::discrete_log(std::int64_t u) const {
    const std::int64_t r = reduce_unit(u);
    if (gens_.empty()) return {};
    if (table_) {
        const std::int32_t packed = (*table_)[static_cast<std::size_t>(r)];
        if (gens_.size() == 1) return {packed};
        return {packed / gens_[1].order, packed % gens_[1].order};
    }
    if (p_ != 2) return {cyclic_log(gens_[0].generator, r, order_, order_factors_)};
    const std::int64_t sign = (r % 4 == 3) ? 1 : 0;
    const std::int64_t positive = sign == 1 ? modulus_ - r : r;
    return {sign, cyclic_log(5, positive, gens_[1].order, order_factors_)};
}

std::vector<std::int64_t> LocalUnitStructure::discrete_log_mod(std::int64_t u, std::int64_t d) const {
    const std::int64_t r = reduce_unit(u);
    const auto mod = static_cast<u64>(modulus_);
    auto residue_log = [&](u64 g, u64 h, std::int64_t n) -> std::int64_t {
        const std::int64_t di = std::gcd(d, n);
        const u64 t = pow_mod(h, static_cast<u64>(n / di), mod);
        const u64 zeta = pow_mod(g, static_cast<u64>(n / di), mod);
        u64 acc = 1 % mod;
        for (std::int64_t j = 0; j < di; ++j) {
            if (acc == t) return j;
            acc = mul_mod(acc, zeta, mod);
        }
        throw std::logic_error("discrete_log_mod: residue not found");
    };
    if (gens_.empty()) return {};
    if (p_ != 2) return {residue_log(static_cast<u64>(gens_[0].generator), static_cast<u64>(r), order_)};
    const std::int64_t sign = (r % 4 == 3) ? 1 : 0;
    std::vector<std::int64_t> out{sign % std::gcd(d, std::int64_t{2})};
    if (gens_.size() == 2) {
        const std::int64_t positive = sign == 1 ? modulus_ - r : r;
        out.push_back(residue_log(5, static_cast<u64>(positive), gens_[1].order));
    }
    return out;
}

std::vector<std::int64_t> LocalUnitStructure::log_minus_one() const {
    if (gens_.empty()) return {};
    if (p_ == 2) {
        std::vector<std::int64_t> out(gens_.size(), 0);
        out[0] = 1;
        return out;
    }
    return {order_ / 2};
}

LocalCharacter::LocalCharacter(LocalUnitStructure structure, FiniteAbelianGroup group, std::vector<GroupElement> images)
    : structure_(std::move(structure)), group_(std::move(group)), images_(std::move(images)) {
    const auto& gens = structure_.generators();
    if (images_.size() != gens.size()) throw std::invalid_argument("local character: one image per generator required");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        group_.validate(images_[i]);
        if (gens[i].order % group_.element_order(images_[i]) != 0) {
            throw std::invalid_argument("local character: image order does not divide generator order");
        }
    }
}

bool LocalCharacter::is_trivial() const {
    return std::all_of(images_.begin(), images_.end(), [&](const GroupElement& g) { return group_.is_identity(g); });
}

int LocalCharacter::conductor_exponent() const {
    if (is_trivial()) return 0;
    const std::int64_t p = prime();
    const int a = level();
    if (p != 2) {
        // 1 + p^j Z_p is generated by g^{(p-1) p^{j-1}}.
        std::int64_t k = p - 1;
        for (int j = 1; j <= a; ++j, k *= p) {
            if (group_.is_identity(group_.multiply(k, images_[0]))) return j;
        }
        return a;
    }
    if (a == 2) return 2;
    // For j >= 2, 1 + 2^j Z_2 is generated by 5^{2^{j-2}}.
    std::int64_t k = 1;
    for (int j = 2; j <= a; ++j, k *= 2) {
        if (group_.is_identity(group_.multiply(k, images_[1]))) return j;
    }
    return a;
}

std::int64_t LocalCharacter::ramification_index() const {
    return Subgroup(group_, images_).order();
}

GroupElement LocalCharacter::value(std::int64_t u) const {
    const auto logs = structure_.discrete_log(u);
    GroupElement acc = group_.identity();
    for (std::size_t i = 0; i < logs.size(); ++i) acc = group_.add(acc, group_.multiply(logs[i], images_[i]));
    return acc;
}

GroupElement LocalCharacter::value_at_minus_one() const {
    const auto logs = structure_.log_minus_one();
    GroupElement acc = group_.identity();
    for (std::size_t i = 0; i < logs.size(); ++i) acc = group_.add(acc, group_.multiply(logs[i], images_[i]));
    return acc;
}

LocalCharacter LocalCharacter::at_level(int c) const {
    if (c < conductor_exponent()) throw std::invalid_argument("at_level: level below the conductor exponent");
    if (c == level()) return *this;
    LocalUnitStructure target(prime(), c);
    std::vector<GroupElement> images;
    const auto zero = group_.identity();
    if (prime() != 2) {
        if (c >= 1) images.push_back(images_.empty() ? zero : images_[0]);
    } else {
        if (c >= 2) images.push_back(images_.empty() ? zero : images_[0]);
        if (c >= 3) images.push_back(images_.size() >= 2 ? images_[1] : zero);
    }
    return LocalCharacter(std::move(target), group_, std::move(images));
}

ResidueCharacter::ResidueCharacter(FiniteAbelianGroup group, std::vector<LocalCharacter> components)
    : group_(std::move(group)) {
    for (const auto& chi : components) {
        if (!(chi.group() == group_)) throw std::invalid_argument("residue character: component has a different group");
        const int c = chi.conductor_exponent();
        if (c == 0) continue;
        components_.push_back(chi.at_level(c));
    }
    std::sort(components_.begin(), components_.end(),
              [](const LocalCharacter& a, const LocalCharacter& b) { return a.prime() < b.prime(); });
    for (std::size_t i = 1; i < components_.size(); ++i) {
        if (components_[i].prime() == components_[i - 1].prime()) {
            throw std::invalid_argument("residue character: repeated prime " + std::to_string(components_[i].prime()));
        }
    }
    for (const auto& chi : components_) modulus_ *= chi.structure().modulus();
}

GroupElement ResidueCharacter::evaluate(std::int64_t n) const {
    if (modulus_ > 1 && std::gcd(mod_floor(n, modulus_), modulus_) != 1) {
        throw std::invalid_argument("evaluate: " + std::to_string(n) + " is not coprime to the modulus " +
                                    std::to_string(modulus_));
    }
    GroupElement acc = group_.identity();
    for (const auto& chi : components_) acc = group_.add(acc, chi.value(n));
    return acc;
}

int ResidueCharacter::infinite_ramification() const {
    return group_.is_identity(evaluate(-1)) ? 1 : 2;
}

bool ResidueCharacter::unit_is_everywhere_local_norm() const {
    return std::all_of(components_.begin(), components_.end(),
                       [&](const LocalCharacter& chi) { return group_.is_identity(chi.value_at_minus_one()); });
}

bool ResidueCharacter::is_surjective() const {
    std::vector<GroupElement> all;
    for (const auto& chi : components_) all.insert(all.end(), chi.images().begin(), chi.images().end());
    return group_.generates(all);
}

std::string ResidueCharacter::to_string() const {
    std::ostringstream os;
    os << modulus_ << ':';
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& chi = components_[i];
        os << (i == 0 ? " " : "; ") << chi.prime() << '^' << chi.level() << " -> [";
        const auto& gens = chi.structure().generators();
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (j > 0) os << ',';
            os << gens[j].generator << ':' << chi.images()[j];
        }
        os << ']';
    }
    return os.str();
}

}  // namespace genuslab
