#include "genuslab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genuslab {

u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

i64 inverse_mod(i64 a, i64 m) {
    i64 old_r = mod_floor(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) throw std::domain_error("inverse_mod: argument not invertible");
    return mod_floor(old_s, m);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 block = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(block, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += block;
            } while (k < r && g == 1);
            r <<= 1U;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    std::vector<u64> primes;
    for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    Factorization result;
    for (u64 p : primes) {
        if (!result.empty() && result.back().first == static_cast<i64>(p)) {
            ++result.back().second;
        } else {
            result.emplace_back(static_cast<i64>(p), 1);
        }
    }
    return result;
}

i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

i64 euler_phi(i64 n) {
    i64 result = n;
    for (const auto& [p, a] : factorize(static_cast<u64>(n))) result = result / p * (p - 1);
    return result;
}

int moebius(i64 n) {
    int sign = 1;
    for (const auto& [p, a] : factorize(static_cast<u64>(n))) {
        if (a > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<i64> divisors(const Factorization& f) {
    std::vector<i64> result{1};
    for (const auto& [p, a] : f) {
        const std::size_t current = result.size();
        i64 pk = 1;
        for (int k = 1; k <= a; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < current; ++i) result.push_back(result[i] * pk);
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<i64> divisors(i64 n) { return divisors(factorize(static_cast<u64>(n))); }

int valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (i64 i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        primes.push_back(i);
        for (i64 j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return primes;
}

u64 multiplicative_order(u64 a, u64 m, u64 group_order, const Factorization& order_factors) {
    u64 order = group_order;
    for (const auto& [p, e] : order_factors) {
        for (int i = 0; i < e; ++i) {
            if (pow_mod(a, order / static_cast<u64>(p), m) == 1 % m) {
                order /= static_cast<u64>(p);
            } else {
                break;
            }
        }
    }
    return order;
}

}  // namespace genuslab
