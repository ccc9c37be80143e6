#pragma once

// Reduced binary quadratic forms of negative discriminant: class numbers
// and genus numbers (ambiguous classes) for imaginary quadratic fields,
// independent of the character machinery.

#include <cstdint>
#include <vector>

namespace genuslab {

struct QuadraticForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    [[nodiscard]] std::int64_t discriminant() const noexcept { return b * b - 4 * a * c; }
    /// |b| <= a <= c, and b >= 0 when |b| = a or a = c.
    [[nodiscard]] bool is_reduced() const noexcept;
    [[nodiscard]] bool is_primitive() const noexcept;
    /// Order dividing 2 in the class group: b = 0, b = a or a = c (for reduced forms).
    [[nodiscard]] bool is_ambiguous() const noexcept;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

bool is_fundamental_discriminant(std::int64_t d);

/// Reduced primitive forms of discriminant d < 0, d = 0 or 1 mod 4.
std::vector<QuadraticForm> reduced_forms(std::int64_t d);

/// Throw std::invalid_argument unless d is a negative fundamental discriminant.
std::int64_t class_number(std::int64_t d);
std::int64_t genus_number_forms(std::int64_t d);

/// Number t of prime discriminants in the factorization of a fundamental d.
int prime_discriminant_count(std::int64_t d);

/// Negative fundamental discriminants in (-d_max, 0), ordered by |d|: -3, -4, -7, ...
std::vector<std::int64_t> negative_fundamental_discriminants(std::int64_t d_max);

struct OracleRow {
    std::int64_t discriminant = 0;
    std::int64_t class_number = 0;
    std::int64_t genus_forms = 0;
    std::int64_t genus_furuta = 0;
    bool match = false;
};

/// Genus number of Q(sqrt d) from the genus module: the unique odd
/// quadratic character of conductor |d|.
std::int64_t genus_number_from_characters(std::int64_t d);

/// One row per negative fundamental discriminant in (-d_max, 0).
std::vector<OracleRow> forms_oracle_table(std::int64_t d_max, unsigned threads = 1);

}  // namespace genuslab
