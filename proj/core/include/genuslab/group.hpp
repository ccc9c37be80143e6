#pragma once

// Finite abelian groups in invariant-factor form.
//
// A group is stored as d_1 | d_2 | ... | d_r with every d_i >= 2; the empty
// list is the trivial group. Elements are coordinate vectors with
// coords[i] in [0, d_i). Groups handled here are small (at most 10^4
// elements), so subgroups are explicit element sets.

#include <cstddef>
#include <cstdint>
#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace genuslab {

class GroupElement {
  public:
    GroupElement() = default;
    explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

    [[nodiscard]] std::span<const std::int64_t> coords() const noexcept { return coords_; }
    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }

    /// "(c_1,...,c_r)"; the trivial group's only element prints as "()".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  private:
    std::vector<std::int64_t> coords_;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

class FiniteAbelianGroup {
  public:
    /// The trivial group.
    FiniteAbelianGroup() = default;

    /// Accepts any list of cyclic orders (each >= 1) and normalizes it to
    /// invariant factors, e.g. {6, 4} becomes {2, 12}.
    explicit FiniteAbelianGroup(std::span<const std::int64_t> cyclic_orders);
    FiniteAbelianGroup(std::initializer_list<std::int64_t> cyclic_orders);

    /// Parses the literal syntax "2,2" / "4" / "1" (trivial).
    static FiniteAbelianGroup parse(std::string_view literal);
    /// Inverse of parse: comma-separated invariant factors, "1" when trivial.
    [[nodiscard]] std::string literal() const;

    [[nodiscard]] const std::vector<std::int64_t>& invariant_factors() const noexcept {
        return factors_;
    }
    [[nodiscard]] std::size_t rank() const noexcept { return factors_.size(); }
    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] std::int64_t exponent() const noexcept {
        return factors_.empty() ? 1 : factors_.back();
    }
    [[nodiscard]] bool is_trivial() const noexcept { return factors_.empty(); }

    [[nodiscard]] GroupElement identity() const;
    [[nodiscard]] bool is_identity(const GroupElement& g) const;
    [[nodiscard]] bool contains(const GroupElement& g) const noexcept;
    /// Throws std::invalid_argument on wrong length or out-of-range coordinates.
    void validate(const GroupElement& g) const;

    [[nodiscard]] GroupElement add(const GroupElement& a, const GroupElement& b) const;
    [[nodiscard]] GroupElement negate(const GroupElement& a) const;
    [[nodiscard]] GroupElement multiply(std::int64_t k, const GroupElement& a) const;

    /// Smallest n >= 1 with n*g = 0.
    [[nodiscard]] std::int64_t element_order(const GroupElement& g) const;
    /// |G[d]| = prod_i gcd(d, d_i).
    [[nodiscard]] std::int64_t torsion_count(std::int64_t d) const;
    /// Number of elements of order exactly f, by Moebius inversion of torsion counts.
    [[nodiscard]] std::int64_t count_elements_of_order(std::int64_t f) const;

    /// Mixed-radix index in [0, order()).
    [[nodiscard]] std::int64_t index_of(const GroupElement& g) const;
    [[nodiscard]] GroupElement element_at(std::int64_t index) const;
    [[nodiscard]] std::vector<GroupElement> elements() const;

    /// Index arithmetic used by the hot enumeration loops.
    [[nodiscard]] std::int64_t add_indices(std::int64_t a, std::int64_t b) const;
    [[nodiscard]] std::int64_t multiply_index(std::int64_t k, std::int64_t a) const;

    /// True iff the subgroup generated by `elements` is all of G.
    [[nodiscard]] bool generates(std::span<const GroupElement> elements) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.factors_ == b.factors_;
    }

  private:
    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
};

std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g);

/// Subgroup of a fixed group: generators plus the explicit element set.
class Subgroup {
  public:
    Subgroup(const FiniteAbelianGroup& group, std::vector<GroupElement> generators);

    static Subgroup trivial(const FiniteAbelianGroup& group);
    static Subgroup whole(const FiniteAbelianGroup& group);

    [[nodiscard]] const std::vector<GroupElement>& generators() const noexcept { return generators_; }
    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] bool contains_index(std::int64_t index) const {
        return mask_[static_cast<std::size_t>(index)];
    }
    [[nodiscard]] const std::vector<bool>& mask() const noexcept { return mask_; }

  private:
    Subgroup(std::vector<GroupElement> generators, std::vector<bool> mask);

    std::vector<GroupElement> generators_;
    std::vector<bool> mask_;
    std::int64_t order_ = 0;
};

/// Element mask of the subgroup generated by the given indices (closure under addition).
std::vector<bool> generated_mask(const FiniteAbelianGroup& group, std::span<const std::int64_t> indices);

/// mu(G/H) for the Moebius function on isomorphism classes of finite abelian
/// groups: multiplicative over primes, and on a p-group equal to
/// (-1)^k p^{k(k-1)/2} when the quotient is elementary abelian of rank k, else 0.
std::int64_t moebius_quotient(const FiniteAbelianGroup& group, const Subgroup& sub);

/// The same value computed by recursion on the lattice of subgroups between H and G.
std::int64_t moebius_by_lattice(const FiniteAbelianGroup& group, const Subgroup& sub);

/// Every subgroup of G, each generated by its closure search; requires |G| <= max_order.
std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& group, std::int64_t max_order = 1024);

/// |Aut(G)| by depth-first search over images of the standard generators,
/// pruned by injectivity on each prefix. Throws std::length_error when
/// |G| > max_order or the search exceeds its node budget.
std::int64_t automorphism_count(const FiniteAbelianGroup& group, std::int64_t max_order = 10'000);

/// All subgroups of G with a precomputed join table, for the enumeration hot path.
class SubgroupLattice {
  public:
    explicit SubgroupLattice(const FiniteAbelianGroup& group, std::size_t max_subgroups = 1024);

    [[nodiscard]] std::size_t size() const noexcept { return orders_.size(); }
    [[nodiscard]] std::size_t trivial_id() const noexcept { return trivial_; }
    [[nodiscard]] std::size_t whole_id() const noexcept { return whole_; }
    [[nodiscard]] std::int64_t order(std::size_t id) const { return orders_[id]; }
    [[nodiscard]] std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
    /// Id of the subgroup generated by the given element indices.
    [[nodiscard]] std::size_t id_of_generated(std::span<const std::int64_t> indices) const;

  private:
    FiniteAbelianGroup group_;
    std::vector<std::int64_t> orders_;
    std::vector<std::uint32_t> join_;
    std::unordered_map<std::vector<bool>, std::size_t> ids_;
    std::size_t trivial_ = 0;
    std::size_t whole_ = 0;
};

}  // namespace genuslab
