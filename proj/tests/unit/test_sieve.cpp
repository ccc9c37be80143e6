#include "genuslab/sieve.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace genuslab;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("genuslab_" + name)).string();
}

}  // namespace

TEST(Sieve, SegmentsMatchFactorize) {
    const auto base = PrimeTable::build(2000);
    std::vector<FactoredInteger> out;
    for (i64 lo : {1LL, 2LL, 999'000LL, 3'000'000LL}) {
        factor_segment(lo, lo + 1000, base, out);
        ASSERT_EQ(out.size(), 1000u);
        for (i64 i = 0; i < 1000; ++i) {
            const auto& f = out[static_cast<std::size_t>(i)];
            ASSERT_EQ(f.n, lo + i);
            const auto expected = factorize(static_cast<u64>(lo + i));
            ASSERT_EQ(static_cast<std::size_t>(f.count), expected.size()) << lo + i;
            for (std::size_t k = 0; k < expected.size(); ++k) ASSERT_EQ(f.view()[k], expected[k]) << lo + i;
        }
    }
}

TEST(Sieve, PrimeTableAgreesWithPlainSieve) {
    const auto table = PrimeTable::build(100'000);
    const auto plain = primes_up_to(100'000);
    ASSERT_EQ(table.primes().size(), plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) ASSERT_EQ(static_cast<i64>(table.primes()[i]), plain[i]);
}

TEST(Sieve, CacheRoundTripAndInvalidation) {
    const std::string path = temp_path("sieve_cache.bin");
    std::filesystem::remove(path);
    PrimeTable loaded;
    EXPECT_FALSE(PrimeTable::try_load(path, 1000, loaded));

    const auto built = PrimeTable::load_or_build(path, 5000);
    ASSERT_TRUE(std::filesystem::exists(path));
    ASSERT_TRUE(PrimeTable::try_load(path, 4000, loaded));
    EXPECT_EQ(loaded.primes(), PrimeTable::build(4000).primes());  // trimmed to the request
    ASSERT_TRUE(PrimeTable::try_load(path, 5000, loaded));
    EXPECT_EQ(loaded.primes(), built.primes());
    // a cache covering less than requested is stale
    EXPECT_FALSE(PrimeTable::try_load(path, 6000, loaded));

    // corrupt the version field
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(8);
        const std::uint32_t bogus = PrimeTable::kCacheVersion + 7;
        f.write(reinterpret_cast<const char*>(&bogus), sizeof bogus);
    }
    EXPECT_FALSE(PrimeTable::try_load(path, 1000, loaded));
    const auto rebuilt = PrimeTable::load_or_build(path, 1000);
    EXPECT_EQ(rebuilt.primes().back(), 997u);
    EXPECT_TRUE(PrimeTable::try_load(path, 1000, loaded));

    // truncated file
    std::filesystem::resize_file(path, 30);
    EXPECT_FALSE(PrimeTable::try_load(path, 1000, loaded));
    std::filesystem::remove(path);
}
