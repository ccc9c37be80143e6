#include "genuslab/enumerator.hpp"

#include "genuslab/errors.hpp"
#include "genuslab/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace genuslab {

namespace {

constexpr std::int64_t kMaxGroupOrder = 512;
constexpr int kMaxSplitPrimes = 8;

i64 isqrt(i64 n) {
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Calls fn(image_indices) for every homomorphism from the structure's
/// generators into G, lexicographically in the image indices.
void for_each_hom(const LocalUnitStructure& structure, const FiniteAbelianGroup& group,
                  const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    const auto& gens = structure.generators();
    std::vector<std::vector<std::int64_t>> candidates(gens.size());
    for (std::int64_t idx = 0; idx < group.order(); ++idx) {
        const std::int64_t ord = group.element_order(group.element_at(idx));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].order % ord == 0) candidates[i].push_back(idx);
        }
    }
    std::vector<std::int64_t> images(gens.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == gens.size()) {
            fn(images);
            return;
        }
        for (const std::int64_t idx : candidates[i]) {
            images[i] = idx;
            rec(i + 1);
        }
    };
    rec(0);
}

LocalCharacter character_from_indices(const LocalUnitStructure& structure, const FiniteAbelianGroup& group,
                                      const std::vector<std::int64_t>& indices) {
    std::vector<GroupElement> images;
    images.reserve(indices.size());
    for (const std::int64_t idx : indices) images.push_back(group.element_at(idx));
    return LocalCharacter(structure, group, std::move(images));
}

struct FastEntry {
    std::uint32_t subgroup = 0;
    std::int32_t minus_one = 0;
    std::int32_t ram_index = 1;
    std::int32_t images[2] = {-1, -1};
};
using EntryList = std::vector<FastEntry>;

/// Primitive local characters at every relevant prime power, in the compact
/// form used by the enumeration loop, with the local conditions applied.
class FastTables {
  public:
    static const FiniteAbelianGroup& checked(const FiniteAbelianGroup& group) {
        if (group.order() > kMaxGroupOrder) {
            throw std::invalid_argument("enumeration supports groups of order at most " + std::to_string(kMaxGroupOrder));
        }
        return group;
    }

    FastTables(const FiniteAbelianGroup& group, i64 bound, const LocalConditionSet& conditions)
        : group_(checked(group)), lattice_(group), exponent_(group.exponent()), conditions_(conditions) {
        const auto n = static_cast<std::size_t>(group.order());
        add_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            const GroupElement ga = group.element_at(static_cast<i64>(a));
            for (std::size_t b = 0; b < n; ++b) {
                add_[a * n + b] = static_cast<std::int32_t>(group.index_of(group.add(ga, group.element_at(static_cast<i64>(b)))));
            }
        }
        small_limit_ = std::max(isqrt(bound), 2 * exponent_);
        small_.resize(static_cast<std::size_t>(small_limit_) + 1);
        for (const i64 p : primes_up_to(small_limit_)) {
            if (conditions.at(p) != nullptr) continue;
            auto& levels = small_[static_cast<std::size_t>(p)];
            levels.emplace_back();  // level 0 unused
            for (i64 pa = p; pa <= bound; pa *= p) {
                levels.push_back(build_list(p, static_cast<int>(levels.size())));
                if (pa > bound / p) break;
            }
        }
        for (const auto& [p, c] : conditions.finite()) {
            auto& levels = conditioned_[p];
            levels.emplace_back();
            for (i64 pa = p; pa <= bound; pa *= p) {
                levels.push_back(build_list(p, static_cast<int>(levels.size())));
                if (pa > bound / p) break;
            }
            if (!conditions.admits_unramified(p)) required_.push_back(p);
            if (c.kind == ConditionKind::Split) {
                if (split_.size() == kMaxSplitPrimes) throw std::invalid_argument("too many split conditions");
                split_.push_back(p);
            }
        }
        infinity_split_ = conditions.infinity().kind == ConditionKind::Split;
        // Level-1 lists for primes above small_limit depend only on p mod 2e.
        const i64 modulus = 2 * exponent_;
        large_.resize(static_cast<std::size_t>(modulus));
        for (i64 r = 1; r < modulus; r += 2) {
            const i64 d = std::gcd(r - 1, exponent_);
            const i64 half = ((r - 1) / 2) % exponent_;
            EntryList list;
            for (i64 idx = 1; idx < group.order(); ++idx) {
                if (group.multiply_index(d, idx) != 0) continue;
                FastEntry e;
                const std::int64_t one[1] = {idx};
                e.subgroup = static_cast<std::uint32_t>(lattice_.id_of_generated(one));
                e.minus_one = static_cast<std::int32_t>(group.multiply_index(half, idx));
                e.ram_index = static_cast<std::int32_t>(lattice_.order(e.subgroup));
                e.images[0] = static_cast<std::int32_t>(idx);
                list.push_back(e);
            }
            large_[static_cast<std::size_t>(r)] = std::move(list);
        }
    }

    [[nodiscard]] const EntryList& list(i64 p, int a) const {
        if (!conditioned_.empty()) {
            if (const auto it = conditioned_.find(p); it != conditioned_.end()) return level_or_empty(it->second, a);
        }
        if (p <= small_limit_) return level_or_empty(small_[static_cast<std::size_t>(p)], a);
        if (a != 1) return empty_;
        return large_[static_cast<std::size_t>(p % (2 * exponent_))];
    }

    [[nodiscard]] bool is_large(i64 p) const { return p > small_limit_ && conditioned_.find(p) == conditioned_.end(); }

    [[nodiscard]] std::int32_t add(std::int32_t a, std::int32_t b) const {
        return add_[static_cast<std::size_t>(a) * static_cast<std::size_t>(group_.order()) + static_cast<std::size_t>(b)];
    }
    [[nodiscard]] std::int32_t times(i64 k, std::int32_t a) const {
        return static_cast<std::int32_t>(group_.multiply_index(k, a));
    }

    [[nodiscard]] const FiniteAbelianGroup& group() const noexcept { return group_; }
    [[nodiscard]] const SubgroupLattice& lattice() const noexcept { return lattice_; }
    [[nodiscard]] i64 exponent() const noexcept { return exponent_; }
    [[nodiscard]] const std::vector<i64>& required_primes() const noexcept { return required_; }
    [[nodiscard]] const std::vector<i64>& split_primes() const noexcept { return split_; }
    [[nodiscard]] bool infinity_split() const noexcept { return infinity_split_; }

  private:
    const EntryList& level_or_empty(const std::vector<EntryList>& levels, int a) const {
        return static_cast<std::size_t>(a) < levels.size() ? levels[static_cast<std::size_t>(a)] : empty_;
    }

    EntryList build_list(i64 p, int a) const {
        EntryList list;
        const LocalUnitStructure structure(p, a);
        for_each_hom(structure, group_, [&](const std::vector<std::int64_t>& idx) {
            const LocalCharacter chi = character_from_indices(structure, group_, idx);
            if (chi.conductor_exponent() != a) return;
            if (!conditions_.admits_local(p, chi)) return;
            FastEntry e;
            e.subgroup = static_cast<std::uint32_t>(lattice_.id_of_generated(idx));
            e.minus_one = static_cast<std::int32_t>(group_.index_of(chi.value_at_minus_one()));
            e.ram_index = static_cast<std::int32_t>(lattice_.order(e.subgroup));
            for (std::size_t i = 0; i < idx.size() && i < 2; ++i) e.images[i] = static_cast<std::int32_t>(idx[i]);
            list.push_back(e);
        });
        return list;
    }

    FiniteAbelianGroup group_;
    SubgroupLattice lattice_;
    i64 exponent_;
    const LocalConditionSet& conditions_;
    std::vector<std::int32_t> add_;
    i64 small_limit_ = 0;
    std::vector<std::vector<EntryList>> small_;
    std::map<i64, std::vector<EntryList>> conditioned_;
    std::vector<EntryList> large_;
    EntryList empty_;
    std::vector<i64> required_;
    std::vector<i64> split_;
    bool infinity_split_ = false;
};

/// log of s in the cyclic group (Z/pZ)^x, modulo d = gcd(p - 1, e), relative
/// to a generator whose ((p-1)/d)-th power is the first primitive d-th root
/// of unity among 2^{(p-1)/d}, 3^{(p-1)/d}, ... . Large-prime lists are
/// labelled by images of exactly that generator.
i64 large_prime_log(i64 p, i64 s, i64 e) {
    const i64 d = std::gcd(p - 1, e);
    if (d == 1) return 0;
    const auto mod = static_cast<u64>(p);
    const u64 cofactor = static_cast<u64>((p - 1) / d);
    const Factorization d_factors = factorize(static_cast<u64>(d));
    u64 zeta = 0;
    for (u64 x = 2;; ++x) {
        const u64 z = pow_mod(x, cofactor, mod);
        bool primitive = true;
        for (const auto& [q, k] : d_factors) {
            if (pow_mod(z, static_cast<u64>(d / q), mod) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            zeta = z;
            break;
        }
    }
    const u64 target = pow_mod(static_cast<u64>(mod_floor(s, p)), cofactor, mod);
    u64 acc = 1;
    for (i64 j = 0; j < d; ++j) {
        if (acc == target) return j;
        acc = mul_mod(acc, zeta, mod);
    }
    throw InvariantViolation("power residue symbol not found");
}

struct Leaf {
    int e_infinity = 1;
    int iota = 1;
    i64 ram_product = 1;
    i64 genus = 1;
    i64 narrow_genus = 1;
};

/// Runs the odometer over local components for one conductor.
class Kernel {
  public:
    explicit Kernel(const FastTables& tables)
        : tables_(tables), order_(tables.group().order()), odd_exponent_(tables.exponent() % 2 == 1) {}

    /// Calls leaf(m, factors, chosen, info) per admitted surjective character;
    /// returns the number of such characters.
    template <class Sink>
    i64 run(const FactoredInteger& f, Sink&& sink) {
        k_ = f.count;
        const auto factors = f.view();
        for (const i64 q : tables_.required_primes()) {
            if (f.n % q != 0) return 0;
        }
        const auto& splits = tables_.split_primes();
        for (const i64 s : splits) {
            if (f.n % s == 0) return 0;
        }
        for (int i = 0; i < k_; ++i) {
            const auto [p, a] = factors[static_cast<std::size_t>(i)];
            lists_[i] = &tables_.list(p, a);
            if (lists_[i]->empty()) return 0;
        }
        for (std::size_t s = 0; s < splits.size(); ++s) {
            for (int i = 0; i < k_; ++i) split_logs(factors[static_cast<std::size_t>(i)], splits[s], logs_[s][i]);
        }
        count_ = 0;
        std::int32_t split_vals[kMaxSplitPrimes] = {};
        descend(0, static_cast<std::uint32_t>(tables_.lattice().trivial_id()), 0, 1, true, split_vals, f, sink);
        return count_;
    }

    [[nodiscard]] const FastEntry& chosen(int i) const { return *chosen_[i]; }

  private:
    void split_logs(const std::pair<i64, int>& factor, i64 s, i64 out[2]) {
        const auto [p, a] = factor;
        out[0] = out[1] = 0;
        if (tables_.is_large(p)) {
            out[0] = large_prime_log(p, s, tables_.exponent());
            return;
        }
        auto it = structures_.find({p, a});
        if (it == structures_.end()) it = structures_.emplace(std::make_pair(p, a), LocalUnitStructure(p, a)).first;
        const auto logs = it->second.discrete_log_mod(s, tables_.exponent());
        for (std::size_t i = 0; i < logs.size() && i < 2; ++i) out[i] = logs[i];
    }

    template <class Sink>
    void descend(int depth, std::uint32_t sub, std::int32_t minus, i64 ram, bool all_norm,
                 const std::int32_t* split_vals, const FactoredInteger& f, Sink& sink) {
        const std::size_t n_split = tables_.split_primes().size();
        if (depth == k_) {
            if (sub != tables_.lattice().whole_id()) return;
            Leaf leaf;
            leaf.e_infinity = minus != 0 ? 2 : 1;
            if (tables_.infinity_split() && leaf.e_infinity == 2) return;
            for (std::size_t s = 0; s < n_split; ++s) {
                if (split_vals[s] != 0) return;
            }
            leaf.iota = (odd_exponent_ || all_norm) ? 1 : 2;
            leaf.ram_product = ram;
            leaf.genus = furuta_genus(order_, leaf.e_infinity, ram, leaf.iota);
            leaf.narrow_genus = furuta_narrow_genus(order_, ram);
            ++count_;
            sink(f, *this, leaf);
            return;
        }
        const auto& lattice = tables_.lattice();
        std::int32_t next_vals[kMaxSplitPrimes];
        for (const FastEntry& e : *lists_[depth]) {
            chosen_[depth] = &e;
            for (std::size_t s = 0; s < n_split; ++s) {
                std::int32_t v = tables_.times(logs_[s][depth][0], e.images[0]);
                if (e.images[1] >= 0) v = tables_.add(v, tables_.times(logs_[s][depth][1], e.images[1]));
                next_vals[s] = tables_.add(split_vals[s], v);
            }
            descend(depth + 1, static_cast<std::uint32_t>(lattice.join(sub, e.subgroup)), tables_.add(minus, e.minus_one),
                    ram * e.ram_index, all_norm && e.minus_one == 0, next_vals, f, sink);
        }
    }

    const FastTables& tables_;
    i64 order_;
    bool odd_exponent_;
    int k_ = 0;
    i64 count_ = 0;
    const EntryList* lists_[kMaxPrimeFactors] = {};
    const FastEntry* chosen_[kMaxPrimeFactors] = {};
    i64 logs_[kMaxSplitPrimes][kMaxPrimeFactors][2] = {};
    std::map<std::pair<i64, int>, LocalUnitStructure> structures_;
};

ExtensionRecord make_record(const FastTables& tables, const FactoredInteger& f, const Kernel& kernel, const Leaf& leaf) {
    ExtensionRecord r;
    r.conductor = f.n;
    r.group = tables.group();
    r.surjective = true;
    r.e_infinity = leaf.e_infinity;
    r.omega_finite = f.count;
    r.iota = leaf.iota;
    r.genus = leaf.genus;
    r.narrow_genus = leaf.narrow_genus;
    const auto factors = f.view();
    for (int i = 0; i < f.count; ++i) {
        r.ramification.emplace_back(factors[static_cast<std::size_t>(i)].first, kernel.chosen(i).ram_index);
    }
    return r;
}

/// Per-bin accumulator; bins are the intervals between consecutive checkpoints.
struct Bin {
    i64 count = 0;
    i64 ram_weight_sum = 0;
    i64 genus_sum = 0;
    i64 narrow_genus_sum = 0;
    std::map<i64, i64> genus_histogram;
    std::map<i64, i64> omega_histogram;
    std::vector<i64> tracked;

    void merge(const Bin& o) {
        count += o.count;
        ram_weight_sum += o.ram_weight_sum;
        genus_sum += o.genus_sum;
        narrow_genus_sum += o.narrow_genus_sum;
        for (const auto& [k, v] : o.genus_histogram) genus_histogram[k] += v;
        for (const auto& [k, v] : o.omega_histogram) omega_histogram[k] += v;
        if (tracked.size() < o.tracked.size()) tracked.resize(o.tracked.size(), 0);
        for (std::size_t i = 0; i < o.tracked.size(); ++i) tracked[i] += o.tracked[i];
    }
};

struct ChunkResult {
    std::vector<std::pair<std::size_t, Bin>> bins;
    std::vector<ExtensionRecord> records;
};

std::vector<i64> normalized_checkpoints(std::vector<i64> cps, i64 bound) {
    if (cps.empty()) cps = default_checkpoints(bound);
    for (const i64 c : cps) {
        if (c < 1 || c > bound) throw std::invalid_argument("checkpoint " + std::to_string(c) + " outside [1, bound]");
    }
    cps.push_back(bound);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

}  // namespace

std::vector<LocalTableEntry> local_character_table(std::int64_t p, int level, const FiniteAbelianGroup& group) {
    const LocalUnitStructure structure(p, level);
    std::vector<LocalTableEntry> out;
    for_each_hom(structure, group, [&](const std::vector<std::int64_t>& idx) {
        const LocalCharacter chi = character_from_indices(structure, group, idx);
        const int c = chi.conductor_exponent();
        out.push_back(LocalTableEntry{chi.at_level(c), c, chi.ramification_index(), chi.value_at_minus_one()});
    });
    return out;
}

std::vector<ResidueCharacter> characters_of_conductor(const FiniteAbelianGroup& group, std::int64_t m,
                                                      bool surjective_only, const LocalConditionSet* conditions) {
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    if (conditions != nullptr) {
        for (const auto& [q, c] : conditions->finite()) {
            const bool divides = m % q == 0;
            if (!divides && !conditions->admits_unramified(q)) return {};
            if (divides && c.kind == ConditionKind::Split) return {};
        }
    }
    const Factorization fact = factorize(static_cast<u64>(m));
    std::vector<std::vector<LocalCharacter>> options;
    for (const auto& [p, a] : fact) {
        std::vector<LocalCharacter> primitive;
        for (auto& entry : local_character_table(p, a, group)) {
            if (entry.conductor_exponent != a) continue;
            if (conditions != nullptr && !conditions->admits_local(p, entry.character)) continue;
            primitive.push_back(std::move(entry.character));
        }
        if (primitive.empty()) return {};
        options.push_back(std::move(primitive));
    }
    std::vector<ResidueCharacter> out;
    std::vector<LocalCharacter> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == options.size()) {
            ResidueCharacter psi(group, chosen);
            if (surjective_only && !psi.is_surjective()) return;
            if (conditions != nullptr) {
                if (conditions->infinity().kind == ConditionKind::Split && psi.infinite_ramification() == 2) return;
                for (const auto& [q, c] : conditions->finite()) {
                    if (c.kind == ConditionKind::Split && !group.is_identity(psi.evaluate(q))) return;
                }
            }
            out.push_back(std::move(psi));
            return;
        }
        for (const auto& chi : options[i]) {
            chosen.push_back(chi);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

std::int64_t count_surjections_dividing(const FiniteAbelianGroup& group, std::int64_t m) {
    std::int64_t total = 0;
    for (const i64 d : divisors(m)) total += static_cast<std::int64_t>(characters_of_conductor(group, d).size());
    return total;
}

std::int64_t surjection_count_via_moebius(const FiniteAbelianGroup& group, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<i64> cyclic;
    for (const auto& [p, a] : factorize(static_cast<u64>(m))) {
        if (p != 2) {
            cyclic.push_back(euler_phi(ipow(p, a)));
        } else {
            if (a >= 2) cyclic.push_back(2);
            if (a >= 3) cyclic.push_back(ipow(2, a - 2));
        }
    }
    std::vector<i64> orders(static_cast<std::size_t>(group.order()));
    for (i64 idx = 0; idx < group.order(); ++idx) orders[static_cast<std::size_t>(idx)] = group.element_order(group.element_at(idx));
    std::int64_t total = 0;
    for (const Subgroup& h : all_subgroups(group)) {
        const std::int64_t mu = moebius_quotient(group, h);
        if (mu == 0) continue;
        std::int64_t homs = 1;
        for (const i64 c : cyclic) {
            std::int64_t torsion = 0;
            for (i64 idx = 0; idx < group.order(); ++idx) {
                if (h.contains_index(idx) && c % orders[static_cast<std::size_t>(idx)] == 0) ++torsion;
            }
            homs *= torsion;
        }
        total += mu * homs;
    }
    return total;
}

std::int64_t Checkpoint::statistic(const std::string& name) const {
    if (name == "count") return count;
    if (name == "ram_weight_sum") return ram_weight_sum;
    if (name == "genus_sum") return genus_sum;
    if (name == "narrow_genus_sum") return narrow_genus_sum;
    throw std::invalid_argument("unknown statistic '" + name + "'");
}

const Checkpoint& SummationSeries::final() const {
    if (checkpoints.empty()) throw std::out_of_range("series has no checkpoints");
    return checkpoints.back();
}

std::vector<std::int64_t> default_checkpoints(std::int64_t bound) {
    std::vector<i64> cps;
    for (i64 c = bound; c >= 10; c /= 2) cps.push_back(c);
    for (i64 c = 10; c <= bound; c *= 10) {
        cps.push_back(c);
        if (c > bound / 10) break;
    }
    cps.push_back(bound);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
}

SummationSeries enumerate(const FiniteAbelianGroup& group, std::int64_t bound, const LocalConditionSet& conditions,
                          const EnumerationOptions& options, std::vector<ExtensionRecord>* records) {
    if (group.is_trivial()) throw std::invalid_argument("enumeration needs a nontrivial group");
    if (bound < 1) throw std::invalid_argument("bound must be positive");
    if (bound > options.max_bound) {
        throw std::invalid_argument("bound " + std::to_string(bound) + " exceeds the configured maximum " +
                                    std::to_string(options.max_bound));
    }
    if (options.chunk_size < 1) throw std::invalid_argument("chunk size must be positive");

    const auto started = std::chrono::steady_clock::now();
    const FastTables tables(group, bound, conditions);
    const PrimeTable base = PrimeTable::load_or_build(options.sieve_cache, isqrt(bound) + 1);
    const std::vector<i64> cps = normalized_checkpoints(options.checkpoints, bound);
    std::vector<i64> tracked = options.tracked_primes;
    if (tracked.empty()) tracked = primes_up_to(99);
    std::sort(tracked.begin(), tracked.end());
    tracked.erase(std::unique(tracked.begin(), tracked.end()), tracked.end());

    const i64 chunk = options.chunk_size;
    const auto n_chunks = static_cast<std::size_t>((bound + chunk - 1) / chunk);
    std::vector<ChunkResult> results(n_chunks);
    std::vector<char> done(n_chunks, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex progress_mutex;
    std::size_t prefix = 0;
    std::size_t prefix_records = 0;
    std::exception_ptr failure;
    std::string stop_reason;

    auto process = [&](std::size_t index) {
        const i64 lo = 1 + static_cast<i64>(index) * chunk;
        const i64 hi = std::min(bound + 1, lo + chunk);
        std::vector<FactoredInteger> segment;
        factor_segment(lo, hi, base, segment);
        Kernel kernel(tables);
        ChunkResult out;
        std::size_t bin_index = static_cast<std::size_t>(std::lower_bound(cps.begin(), cps.end(), lo) - cps.begin());
        Bin* bin = nullptr;
        for (const FactoredInteger& f : segment) {
            while (cps[bin_index] < f.n) {
                ++bin_index;
                bin = nullptr;
            }
            if (bin == nullptr) {
                out.bins.emplace_back(bin_index, Bin{});
                bin = &out.bins.back().second;
                bin->tracked.assign(tracked.size(), 0);
            }
            Bin& b = *bin;
            const i64 found = kernel.run(f, [&](const FactoredInteger& fi, const Kernel& k, const Leaf& leaf) {
                b.ram_weight_sum += leaf.e_infinity * leaf.ram_product;
                b.genus_sum += leaf.genus;
                b.narrow_genus_sum += leaf.narrow_genus;
                ++b.genus_histogram[leaf.genus];
                if (records != nullptr) out.records.push_back(make_record(tables, fi, k, leaf));
            });
            if (found == 0) continue;
            b.count += found;
            b.omega_histogram[f.count] += found;
            for (const auto& [p, a] : f.view()) {
                const auto it = std::lower_bound(tracked.begin(), tracked.end(), p);
                if (it != tracked.end() && *it == p) b.tracked[static_cast<std::size_t>(it - tracked.begin())] += found;
            }
        }
        std::lock_guard lock(progress_mutex);
        results[index] = std::move(out);
        done[index] = 1;
        while (prefix < n_chunks && done[prefix]) {
            prefix_records += results[prefix].records.size();
            ++prefix;
            if (records != nullptr && prefix_records > options.max_records) {
                stop = true;
                if (stop_reason.empty()) stop_reason = "record limit reached";
            }
        }
    };

    auto worker = [&] {
        try {
            while (!stop) {
                if (options.time_budget && std::chrono::steady_clock::now() - started > *options.time_budget) {
                    std::lock_guard lock(progress_mutex);
                    stop = true;
                    if (stop_reason.empty()) stop_reason = "time budget exhausted";
                    break;
                }
                const std::size_t index = next.fetch_add(1);
                if (index >= n_chunks) break;
                process(index);
            }
        } catch (...) {
            std::lock_guard lock(progress_mutex);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_chunks, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic merge over the contiguous prefix, stopping before the
    // chunk that pushes the record total past the limit.
    std::vector<Bin> totals(cps.size());
    for (auto& t : totals) t.tracked.assign(tracked.size(), 0);
    std::size_t included = 0;
    std::size_t record_total = 0;
    bool truncated = false;
    for (; included < n_chunks; ++included) {
        if (!done[included]) {
            truncated = true;
            break;
        }
        if (records != nullptr && record_total + results[included].records.size() > options.max_records) {
            truncated = true;
            if (stop_reason.empty()) stop_reason = "record limit reached";
            break;
        }
        record_total += results[included].records.size();
        for (const auto& [bin_index, bin] : results[included].bins) totals[bin_index].merge(bin);
        if (records != nullptr) {
            records->insert(records->end(), std::make_move_iterator(results[included].records.begin()),
                            std::make_move_iterator(results[included].records.end()));
        }
        results[included] = ChunkResult{};
    }

    SummationSeries series;
    series.group = group;
    series.bound = bound;
    series.conditions = conditions.describe();
    try {
        series.automorphisms = automorphism_count(group);
    } catch (const std::length_error&) {
        series.automorphisms = 0;
    }
    series.tracked_primes = tracked;
    series.complete = !truncated;
    series.covered_bound = truncated ? static_cast<i64>(included) * chunk : bound;
    if (truncated) series.stop_reason = stop_reason.empty() ? "stopped" : stop_reason;

    Bin running;
    running.tracked.assign(tracked.size(), 0);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] > series.covered_bound) break;
        running.merge(totals[i]);
        Checkpoint cp;
        cp.bound = cps[i];
        cp.count = running.count;
        cp.ram_weight_sum = running.ram_weight_sum;
        cp.genus_sum = running.genus_sum;
        cp.narrow_genus_sum = running.narrow_genus_sum;
        cp.genus_histogram = running.genus_histogram;
        cp.omega_histogram = running.omega_histogram;
        for (std::size_t t = 0; t < tracked.size(); ++t) cp.ramified_prime_counts[tracked[t]] = running.tracked[t];
        series.checkpoints.push_back(std::move(cp));
    }
    return series;
}

std::vector<ExtensionRecord> enumerate_conductor(const FiniteAbelianGroup& group, std::int64_t m,
                                                 const LocalConditionSet& conditions) {
    if (m < 1) throw std::invalid_argument("conductor must be positive");
    const FastTables tables(group, m, conditions);
    FactoredInteger f;
    f.n = m;
    for (const auto& pa : factorize(static_cast<u64>(m))) f.factors[static_cast<std::size_t>(f.count++)] = pa;
    Kernel kernel(tables);
    std::vector<ExtensionRecord> out;
    kernel.run(f, [&](const FactoredInteger& fi, const Kernel& k, const Leaf& leaf) {
        out.push_back(make_record(tables, fi, k, leaf));
    });
    return out;
}

}  // namespace genuslab
