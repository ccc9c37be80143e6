#pragma once

// Elementary integer arithmetic shared by every module: modular powers,
// primality, factorization, multiplicative functions and prime tables.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace genuslab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
// 128-bit intermediates for products of 64-bit residues.
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<i64, int>>;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Reduces `a` into [0, m).
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Inverse of `a` modulo `m`; throws std::domain_error if gcd(a, m) != 1.
i64 inverse_mod(i64 a, i64 m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Factorization of n >= 1 (trial division, then Pollard-Brent).
Factorization factorize(u64 n);

i64 ipow(i64 base, int exp);
i64 euler_phi(i64 n);
int moebius(i64 n);

/// Sorted list of positive divisors.
std::vector<i64> divisors(i64 n);
std::vector<i64> divisors(const Factorization& f);

/// Exponent of p in n (n != 0).
int valuation(i64 n, i64 p);

/// All primes <= n by a plain sieve of Eratosthenes.
std::vector<i64> primes_up_to(i64 n);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1 and a known
/// factorization of the group order `group_order`.
u64 multiplicative_order(u64 a, u64 m, u64 group_order, const Factorization& order_factors);

}  // namespace genuslab
