#include "genuslab/forms.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/enumerator.hpp"
#include "genuslab/errors.hpp"
#include "genuslab/genus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace genuslab {

namespace {

bool squarefree(std::int64_t n) {
    const Factorization f = factorize(static_cast<u64>(n));
    return std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second == 1; });
}

void require_negative_fundamental(std::int64_t d) {
    if (d >= 0 || !is_fundamental_discriminant(d)) {
        throw std::invalid_argument(std::to_string(d) + " is not a negative fundamental discriminant");
    }
}

}  // namespace

bool QuadraticForm::is_reduced() const noexcept {
    const std::int64_t abs_b = std::abs(b);
    if (!(abs_b <= a && a <= c)) return false;
    if ((abs_b == a || a == c) && b < 0) return false;
    return true;
}

bool QuadraticForm::is_primitive() const noexcept { return std::gcd(std::gcd(a, b), c) == 1; }

bool QuadraticForm::is_ambiguous() const noexcept { return b == 0 || b == a || a == c; }

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::int64_t r = mod_floor(d, 4);
    if (r == 1) return squarefree(std::abs(d));
    if (r != 0) return false;
    const std::int64_t m = d / 4;
    const std::int64_t mr = mod_floor(m, 4);
    return (mr == 2 || mr == 3) && squarefree(std::abs(m));
}

std::vector<QuadraticForm> reduced_forms(std::int64_t d) {
    if (d >= 0 || mod_floor(d, 4) > 1) throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
    std::vector<QuadraticForm> out;
    // a <= sqrt(|d| / 3) for reduced forms.
    for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - d, 2) != 0) continue;
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const QuadraticForm f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive()) out.push_back(f);
        }
    }
    return out;
}

std::int64_t class_number(std::int64_t d) {
    require_negative_fundamental(d);
    return static_cast<std::int64_t>(reduced_forms(d).size());
}

std::int64_t genus_number_forms(std::int64_t d) {
    require_negative_fundamental(d);
    const auto forms = reduced_forms(d);
    return std::count_if(forms.begin(), forms.end(), [](const QuadraticForm& f) { return f.is_ambiguous(); });
}

int prime_discriminant_count(std::int64_t d) {
    if (!is_fundamental_discriminant(d)) throw std::invalid_argument(std::to_string(d) + " is not fundamental");
    return static_cast<int>(factorize(static_cast<u64>(std::abs(d))).size());
}

std::vector<std::int64_t> negative_fundamental_discriminants(std::int64_t d_max) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 3; n < d_max; ++n) {
        if (is_fundamental_discriminant(-n)) out.push_back(-n);
    }
    return out;
}

std::int64_t genus_number_from_characters(std::int64_t d) {
    require_negative_fundamental(d);
    const FiniteAbelianGroup z2{2};
    std::vector<ResidueCharacter> odd;
    for (auto& psi : characters_of_conductor(z2, -d)) {
        if (psi.infinite_ramification() == 2) odd.push_back(std::move(psi));
    }
    if (odd.size() != 1) throw InvariantViolation("expected one odd quadratic character of conductor " + std::to_string(-d));
    return genus_number(odd.front());
}

std::vector<OracleRow> forms_oracle_table(std::int64_t d_max, unsigned threads) {
    const auto ds = negative_fundamental_discriminants(d_max);
    std::vector<OracleRow> rows(ds.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            OracleRow& r = rows[i];
            r.discriminant = ds[i];
            r.class_number = class_number(ds[i]);
            r.genus_forms = genus_number_forms(ds[i]);
            r.genus_furuta = genus_number_from_characters(ds[i]);
            r.match = r.genus_forms == r.genus_furuta;
        }
    };
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    if (threads <= 1 || rows.size() < 2) {
        work(0, rows.size());
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, rows.size() * t / threads, rows.size() * (t + 1) / threads);
    }
    return rows;
}

}  // namespace genuslab
