#include "genuslab/group.hpp"

#include "genuslab/arith.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace genuslab {

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i > 0) os << ',';
        os << coords_[i];
    }
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.to_string(); }

FiniteAbelianGroup::FiniteAbelianGroup(std::span<const std::int64_t> cyclic_orders) {
    // Split into prime powers, then rebuild invariant factors from the largest
    // p-power of every prime downwards.
    std::map<i64, std::vector<int>> by_prime;
    for (i64 n : cyclic_orders) {
        if (n < 1) throw std::invalid_argument("cyclic order must be positive");
        if (n == 1) continue;
        for (const auto& [p, a] : factorize(static_cast<u64>(n))) by_prime[p].push_back(a);
    }
    std::size_t rank = 0;
    for (auto& [p, exps] : by_prime) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        rank = std::max(rank, exps.size());
    }
    factors_.assign(rank, 1);
    for (const auto& [p, exps] : by_prime) {
        for (std::size_t i = 0; i < exps.size(); ++i) factors_[rank - 1 - i] *= ipow(p, exps[i]);
    }
    order_ = std::accumulate(factors_.begin(), factors_.end(), i64{1}, std::multiplies<>());
}

FiniteAbelianGroup::FiniteAbelianGroup(std::initializer_list<std::int64_t> cyclic_orders)
    : FiniteAbelianGroup(std::span<const std::int64_t>(cyclic_orders.begin(), cyclic_orders.size())) {}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view literal) {
    std::vector<i64> orders;
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        const std::size_t comma = std::min(literal.find(',', pos), literal.size());
        std::string token(literal.substr(pos, comma - pos));
        token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token.empty()) throw std::invalid_argument("empty factor in group literal");
        std::size_t used = 0;
        i64 value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad group literal: " + std::string(literal));
        }
        if (used != token.size() || value < 1) {
            throw std::invalid_argument("bad group literal: " + std::string(literal));
        }
        orders.push_back(value);
        pos = comma + 1;
    }
    return FiniteAbelianGroup(orders);
}

std::string FiniteAbelianGroup::literal() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(factors_[i]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) { return os << g.literal(); }

GroupElement FiniteAbelianGroup::identity() const {
    return GroupElement(std::vector<i64>(factors_.size(), 0));
}

bool FiniteAbelianGroup::is_identity(const GroupElement& g) const {
    return std::all_of(g.coords().begin(), g.coords().end(), [](i64 c) { return c == 0; });
}

bool FiniteAbelianGroup::contains(const GroupElement& g) const noexcept {
    if (g.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (g[i] < 0 || g[i] >= factors_[i]) return false;
    }
    return true;
}

void FiniteAbelianGroup::validate(const GroupElement& g) const {
    if (g.size() != factors_.size()) {
        throw std::invalid_argument("element " + g.to_string() + " has wrong length for group " + literal());
    }
    if (!contains(g)) {
        throw std::invalid_argument("element " + g.to_string() + " out of range for group " + literal());
    }
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
    validate(a);
    validate(b);
    std::vector<i64> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % factors_[i];
    return GroupElement(std::move(c));
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const { return multiply(-1, a); }

GroupElement FiniteAbelianGroup::multiply(std::int64_t k, const GroupElement& a) const {
    validate(a);
    std::vector<i64> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = static_cast<i64>(
            mod_floor(static_cast<i64>((static_cast<i128>(mod_floor(k, factors_[i])) * a[i]) % factors_[i]),
                      factors_[i]));
    }
    return GroupElement(std::move(c));
}

std::int64_t FiniteAbelianGroup::element_order(const GroupElement& g) const {
    validate(g);
    i64 order = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        order = std::lcm(order, factors_[i] / std::gcd(g[i], factors_[i]));
    }
    return order;
}

std::int64_t FiniteAbelianGroup::torsion_count(std::int64_t d) const {
    if (d < 1) throw std::invalid_argument("torsion_count: d must be positive");
    i64 count = 1;
    for (i64 f : factors_) count *= std::gcd(d, f);
    return count;
}

std::int64_t FiniteAbelianGroup::count_elements_of_order(std::int64_t f) const {
    if (f < 1) throw std::invalid_argument("count_elements_of_order: f must be positive");
    i64 total = 0;
    for (i64 d : divisors(f)) total += moebius(f / d) * torsion_count(d);
    return total;
}

std::int64_t FiniteAbelianGroup::index_of(const GroupElement& g) const {
    validate(g);
    i64 index = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) index = index * factors_[i] + g[i];
    return index;
}

GroupElement FiniteAbelianGroup::element_at(std::int64_t index) const {
    if (index < 0 || index >= order_) throw std::out_of_range("element index out of range");
    std::vector<i64> c(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        c[i] = index % factors_[i];
        index /= factors_[i];
    }
    return GroupElement(std::move(c));
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (i64 i = 0; i < order_; ++i) out.push_back(element_at(i));
    return out;
}

std::int64_t FiniteAbelianGroup::add_indices(std::int64_t a, std::int64_t b) const {
    i64 result = 0;
    i64 scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const i64 f = factors_[i];
        const i64 c = (a % f + b % f) % f;
        result += c * scale;
        scale *= f;
        a /= f;
        b /= f;
    }
    return result;
}

std::int64_t FiniteAbelianGroup::multiply_index(std::int64_t k, std::int64_t a) const {
    i64 result = 0;
    i64 scale = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const i64 f = factors_[i];
        const i64 c = static_cast<i64>((static_cast<i128>(mod_floor(k, f)) * (a % f)) % f);
        result += c * scale;
        scale *= f;
        a /= f;
    }
    return result;
}

std::vector<bool> generated_mask(const FiniteAbelianGroup& group, std::span<const std::int64_t> indices) {
    std::vector<bool> mask(static_cast<std::size_t>(group.order()), false);
    mask[0] = true;
    std::vector<i64> members{0};
    for (i64 g : indices) {
        if (mask[static_cast<std::size_t>(g)]) continue;
        // Extend the current subgroup S to S + <g> coset by coset.
        const std::vector<i64> base = members;
        i64 step = g;
        while (!mask[static_cast<std::size_t>(step)]) {
            for (i64 s : base) {
                const i64 t = group.add_indices(s, step);
                if (!mask[static_cast<std::size_t>(t)]) {
                    mask[static_cast<std::size_t>(t)] = true;
                    members.push_back(t);
                }
            }
            step = group.add_indices(step, g);
        }
    }
    return mask;
}

bool FiniteAbelianGroup::generates(std::span<const GroupElement> elements) const {
    std::vector<i64> indices;
    indices.reserve(elements.size());
    for (const auto& g : elements) indices.push_back(index_of(g));
    const auto mask = generated_mask(*this, indices);
    return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
}

Subgroup::Subgroup(const FiniteAbelianGroup& group, std::vector<GroupElement> generators)
    : generators_(std::move(generators)) {
    std::vector<i64> indices;
    for (const auto& g : generators_) indices.push_back(group.index_of(g));
    mask_ = generated_mask(group, indices);
    order_ = std::count(mask_.begin(), mask_.end(), true);
}

Subgroup::Subgroup(std::vector<GroupElement> generators, std::vector<bool> mask)
    : generators_(std::move(generators)), mask_(std::move(mask)) {
    order_ = std::count(mask_.begin(), mask_.end(), true);
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& group) { return Subgroup(group, {}); }

Subgroup Subgroup::whole(const FiniteAbelianGroup& group) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < group.rank(); ++i) {
        std::vector<i64> c(group.rank(), 0);
        c[i] = 1;
        gens.emplace_back(std::move(c));
    }
    return Subgroup(group, std::move(gens));
}

std::int64_t moebius_quotient(const FiniteAbelianGroup& group, const Subgroup& sub) {
    for (const auto& g : sub.generators()) group.validate(g);
    const i64 quotient_order = group.order() / sub.order();
    if (quotient_order == 1) return 1;
    i64 mu = 1;
    for (const auto& [p, v] : factorize(static_cast<u64>(quotient_order))) {
        // |(G/H)[p]| = #{g : p g in H} / |H|
        i64 killed = 0;
        for (i64 g = 0; g < group.order(); ++g) {
            if (sub.contains_index(group.multiply_index(p, g))) ++killed;
        }
        const i64 p_torsion = killed / sub.order();
        const int rank = valuation(p_torsion, p);
        if (rank != v) return 0;  // p-part of G/H not elementary abelian
        mu *= (rank % 2 == 0 ? 1 : -1) * ipow(p, rank * (rank - 1) / 2);
    }
    return mu;
}

namespace {

bool is_superset(const std::vector<bool>& big, const std::vector<bool>& small) {
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] && !big[i]) return false;
    }
    return true;
}

std::vector<std::vector<bool>> subgroup_masks(const FiniteAbelianGroup& group, std::size_t limit) {
    std::vector<std::vector<bool>> found;
    std::set<std::vector<bool>> seen;
    std::vector<bool> trivial(static_cast<std::size_t>(group.order()), false);
    trivial[0] = true;
    found.push_back(trivial);
    seen.insert(trivial);
    for (std::size_t next = 0; next < found.size(); ++next) {
        std::vector<i64> members;
        for (std::size_t i = 0; i < found[next].size(); ++i) {
            if (found[next][i]) members.push_back(static_cast<i64>(i));
        }
        for (i64 g = 1; g < group.order(); ++g) {
            if (found[next][static_cast<std::size_t>(g)]) continue;
            std::vector<i64> gens = members;
            gens.push_back(g);
            auto mask = generated_mask(group, gens);
            if (seen.insert(mask).second) {
                found.push_back(std::move(mask));
                if (found.size() > limit) throw std::length_error("too many subgroups");
            }
        }
    }
    return found;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& group, std::int64_t max_order) {
    if (group.order() > max_order) throw std::length_error("group too large for subgroup enumeration");
    std::vector<Subgroup> out;
    for (auto& mask : subgroup_masks(group, 1'000'000)) {
        // Recover a small generating set greedily.
        std::vector<GroupElement> gens;
        std::vector<i64> gen_idx;
        auto current = generated_mask(group, gen_idx);
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask[i] && !current[i]) {
                gen_idx.push_back(static_cast<i64>(i));
                gens.push_back(group.element_at(static_cast<i64>(i)));
                current = generated_mask(group, gen_idx);
            }
        }
        out.push_back(Subgroup(group, std::move(gens)));
    }
    return out;
}

std::int64_t moebius_by_lattice(const FiniteAbelianGroup& group, const Subgroup& sub) {
    auto subs = all_subgroups(group);
    std::vector<const Subgroup*> above;
    for (const auto& s : subs) {
        if (is_superset(s.mask(), sub.mask())) above.push_back(&s);
    }
    std::sort(above.begin(), above.end(), [](const Subgroup* a, const Subgroup* b) { return a->order() > b->order(); });
    std::vector<i64> mu(above.size(), 0);
    for (std::size_t i = 0; i < above.size(); ++i) {
        if (above[i]->order() == group.order()) {
            mu[i] = 1;
            continue;
        }
        i64 sum = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (above[j]->order() > above[i]->order() && is_superset(above[j]->mask(), above[i]->mask())) sum += mu[j];
        }
        mu[i] = -sum;
    }
    for (std::size_t i = 0; i < above.size(); ++i) {
        if (above[i]->mask() == sub.mask()) return mu[i];
    }
    throw std::logic_error("moebius_by_lattice: subgroup not found in lattice");
}

std::int64_t automorphism_count(const FiniteAbelianGroup& group, std::int64_t max_order) {
    if (group.order() > max_order) throw std::length_error("group too large for brute-force automorphism count");
    const auto& d = group.invariant_factors();
    const std::size_t r = d.size();
    std::vector<std::vector<i64>> candidates(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (i64 g = 0; g < group.order(); ++g) {
            if (group.multiply_index(d[i], g) == 0) candidates[i].push_back(g);
        }
    }
    constexpr std::int64_t node_budget = 50'000'000;
    std::int64_t nodes = 0;
    std::int64_t count = 0;
    std::vector<i64> chosen;
    // Images of e_1..e_j must generate a subgroup of order d_1...d_j.
    auto search = [&](auto&& self, std::size_t level, i64 expected) -> void {
        if (level == r) {
            ++count;
            return;
        }
        for (i64 g : candidates[level]) {
            if (++nodes > node_budget) throw std::length_error("automorphism search exceeded its node budget");
            chosen.push_back(g);
            const auto mask = generated_mask(group, chosen);
            const i64 size = std::count(mask.begin(), mask.end(), true);
            if (size == expected * d[level]) self(self, level + 1, expected * d[level]);
            chosen.pop_back();
        }
    };
    search(search, 0, 1);
    return count;
}

SubgroupLattice::SubgroupLattice(const FiniteAbelianGroup& group, std::size_t max_subgroups) : group_(group) {
    if (group.order() > 512) throw std::length_error("group too large for the subgroup lattice");
    auto masks = subgroup_masks(group, max_subgroups);
    for (std::size_t i = 0; i < masks.size(); ++i) {
        orders_.push_back(std::count(masks[i].begin(), masks[i].end(), true));
        ids_.emplace(masks[i], i);
        if (orders_.back() == 1) trivial_ = i;
        if (orders_.back() == group.order()) whole_ = i;
    }
    const std::size_t n = masks.size();
    join_.assign(n * n, 0);
    std::vector<std::vector<i64>> members(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < masks[i].size(); ++k) {
            if (masks[i][k]) members[i].push_back(static_cast<i64>(k));
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            // A + B is already a subgroup.
            std::vector<bool> mask(static_cast<std::size_t>(group.order()), false);
            for (i64 x : members[a]) {
                for (i64 y : members[b]) mask[static_cast<std::size_t>(group.add_indices(x, y))] = true;
            }
            const auto id = static_cast<std::uint32_t>(ids_.at(mask));
            join_[a * n + b] = id;
            join_[b * n + a] = id;
        }
    }
}

std::size_t SubgroupLattice::id_of_generated(std::span<const std::int64_t> indices) const {
    return ids_.at(generated_mask(group_, indices));
}

}  // namespace genuslab
