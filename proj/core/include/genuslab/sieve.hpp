#pragma once

// Segmented factorization of consecutive integers, plus an on-disk cache of
// the base prime table.

#include "genuslab/arith.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace genuslab {

/// Enough slots for any n < 2^63 with distinct prime factors counted once.
inline constexpr int kMaxPrimeFactors = 16;

struct FactoredInteger {
    i64 n = 1;
    int count = 0;
    std::array<std::pair<i64, int>, kMaxPrimeFactors> factors{};

    [[nodiscard]] std::span<const std::pair<i64, int>> view() const noexcept {
        return {factors.data(), static_cast<std::size_t>(count)};
    }
};

/// Primes up to a limit. The binary cache layout is
///   magic "GLSIEVE\0", u32 version, u64 limit, u64 count, count x u32 primes
/// in host byte order; a mismatched magic or version is treated as absent.
class PrimeTable {
  public:
    static constexpr std::uint32_t kCacheVersion = 2;

    PrimeTable() = default;
    static PrimeTable build(i64 limit);
    /// Loads the cache when it is current and covers `limit`; otherwise
    /// builds the table and rewrites the file. An empty path disables caching.
    static PrimeTable load_or_build(const std::string& cache_path, i64 limit);
    /// Returns false (and leaves `out` untouched) for a missing, stale or short file.
    static bool try_load(const std::string& cache_path, i64 limit, PrimeTable& out);
    void save(const std::string& cache_path) const;

    [[nodiscard]] i64 limit() const noexcept { return limit_; }
    [[nodiscard]] const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  private:
    i64 limit_ = 1;
    std::vector<std::uint32_t> primes_;
};

/// Factors every n in [lo, hi) (lo >= 1). `base` must contain all primes up
/// to sqrt(hi - 1). `out` is resized to hi - lo.
void factor_segment(i64 lo, i64 hi, const PrimeTable& base, std::vector<FactoredInteger>& out);

}  // namespace genuslab
