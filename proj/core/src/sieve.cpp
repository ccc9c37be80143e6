#include "genuslab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace genuslab {

namespace {

constexpr char kMagic[8] = {'G', 'L', 'S', 'I', 'E', 'V', 'E', '\0'};

i64 isqrt(i64 n) {
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

PrimeTable PrimeTable::build(i64 limit) {
    if (limit > (i64{1} << 32)) throw std::invalid_argument("prime table limit exceeds 2^32");
    PrimeTable t;
    t.limit_ = std::max<i64>(limit, 1);
    for (const i64 p : primes_up_to(t.limit_)) t.primes_.push_back(static_cast<std::uint32_t>(p));
    return t;
}

bool PrimeTable::try_load(const std::string& cache_path, i64 limit, PrimeTable& out) {
    std::ifstream in(cache_path, std::ios::binary);
    if (!in) return false;
    char magic[8];
    std::uint32_t version = 0;
    std::uint64_t stored_limit = 0, count = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&stored_limit), sizeof stored_limit);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 || version != kCacheVersion) return false;
    if (static_cast<i64>(stored_limit) < limit || count > (std::uint64_t{1} << 31)) return false;
    std::vector<std::uint32_t> primes(count);
    in.read(reinterpret_cast<char*>(primes.data()), static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    if (!in) return false;
    while (!primes.empty() && primes.back() > limit) primes.pop_back();
    out.limit_ = std::max<i64>(limit, 1);
    out.primes_ = std::move(primes);
    return true;
}

void PrimeTable::save(const std::string& cache_path) const {
    std::ofstream os(cache_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write sieve cache " + cache_path);
    const std::uint32_t version = kCacheVersion;
    const std::uint64_t stored_limit = static_cast<std::uint64_t>(limit_);
    const std::uint64_t count = primes_.size();
    os.write(kMagic, sizeof kMagic);
    os.write(reinterpret_cast<const char*>(&version), sizeof version);
    os.write(reinterpret_cast<const char*>(&stored_limit), sizeof stored_limit);
    os.write(reinterpret_cast<const char*>(&count), sizeof count);
    os.write(reinterpret_cast<const char*>(primes_.data()), static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    if (!os) throw std::runtime_error("failed writing sieve cache " + cache_path);
}

PrimeTable PrimeTable::load_or_build(const std::string& cache_path, i64 limit) {
    PrimeTable t;
    if (!cache_path.empty() && try_load(cache_path, limit, t)) return t;
    t = build(limit);
    if (!cache_path.empty()) t.save(cache_path);
    return t;
}

void factor_segment(i64 lo, i64 hi, const PrimeTable& base, std::vector<FactoredInteger>& out) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("factor_segment: bad range");
    const auto len = static_cast<std::size_t>(hi - lo);
    out.assign(len, FactoredInteger{});
    if (len == 0) return;
    const i64 root = isqrt(hi - 1);
    if (base.limit() < root) throw std::invalid_argument("factor_segment: base prime table too small");
    std::vector<i64> rest(len);
    for (std::size_t j = 0; j < len; ++j) {
        rest[j] = lo + static_cast<i64>(j);
        out[j].n = rest[j];
    }
    for (const std::uint32_t prime : base.primes()) {
        const i64 p = prime;
        if (p > root) break;
        for (i64 m = ((lo + p - 1) / p) * p; m < hi; m += p) {
            const auto j = static_cast<std::size_t>(m - lo);
            int a = 0;
            do {
                rest[j] /= p;
                ++a;
            } while (rest[j] % p == 0);
            FactoredInteger& f = out[j];
            f.factors[static_cast<std::size_t>(f.count++)] = {p, a};
        }
    }
    for (std::size_t j = 0; j < len; ++j) {
        if (rest[j] > 1) {
            FactoredInteger& f = out[j];
            f.factors[static_cast<std::size_t>(f.count++)] = {rest[j], 1};
        }
    }
}

}  // namespace genuslab
