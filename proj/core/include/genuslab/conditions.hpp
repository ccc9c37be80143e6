#pragma once

// Local conditions at finitely many places, restricting which local
// characters an enumerated extension may have there.
//
// Text format, one condition per line ('#' comments allowed):
//   p unramified      p does not divide the conductor
//   p split           p unramified and psi(p) = 0 (trivial local character)
//   p e=K             ramification index at p equals K (K = 1: unramified)
//   p norm E          the integer E (a unit at p) is a local norm at p
//   inf split         e_infinity = 1, i.e. the field is totally real

#include "genuslab/characters.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace genuslab {

enum class ConditionKind { Any, Unramified, Split, RamificationIndex, Explicit, Norm };

struct LocalCondition {
    ConditionKind kind = ConditionKind::Any;
    std::int64_t ramification_index = 1;      ///< RamificationIndex
    std::int64_t norm_element = 1;            ///< Norm: the p-adic unit that must be a norm
    std::vector<LocalCharacter> allowed;      ///< Explicit: allowed unit characters (any level)

    static LocalCondition any() { return {}; }
    static LocalCondition unramified() { return of(ConditionKind::Unramified); }
    static LocalCondition split() { return of(ConditionKind::Split); }
    static LocalCondition ramification_equals(std::int64_t e) {
        LocalCondition c = of(ConditionKind::RamificationIndex);
        c.ramification_index = e;
        return c;
    }
    static LocalCondition norm(std::int64_t eps) {
        LocalCondition c = of(ConditionKind::Norm);
        c.norm_element = eps;
        return c;
    }
    static LocalCondition explicit_list(std::vector<LocalCharacter> chars) {
        LocalCondition c = of(ConditionKind::Explicit);
        c.allowed = std::move(chars);
        return c;
    }

  private:
    static LocalCondition of(ConditionKind kind) {
        LocalCondition c;
        c.kind = kind;
        return c;
    }
};

class LocalConditionSet {
  public:
    /// Throws std::invalid_argument for a non-prime p, a Norm element that
    /// is not a p-adic unit, or an Explicit character at another prime.
    void set(std::int64_t p, LocalCondition condition);
    /// Only Any and Split are meaningful at infinity.
    void set_infinity(LocalCondition condition);

    [[nodiscard]] const std::map<std::int64_t, LocalCondition>& finite() const noexcept { return finite_; }
    [[nodiscard]] const LocalCondition& infinity() const noexcept { return infinity_; }
    [[nodiscard]] bool empty() const noexcept { return finite_.empty() && infinity_.kind == ConditionKind::Any; }
    [[nodiscard]] const LocalCondition* at(std::int64_t p) const;

    /// Whether a unit character at p (any level, possibly trivial) is allowed.
    /// Split additionally depends on psi(p), which is checked globally.
    [[nodiscard]] bool admits_local(std::int64_t p, const LocalCharacter& chi) const;
    /// Whether the unramified (trivial unit part) case is allowed at p.
    [[nodiscard]] bool admits_unramified(std::int64_t p) const;

    static LocalConditionSet parse(std::istream& in);
    static LocalConditionSet load(const std::string& path);
    /// Canonical text form (parse(describe()) round-trips for file-expressible conditions).
    [[nodiscard]] std::string describe() const;

  private:
    std::map<std::int64_t, LocalCondition> finite_;
    LocalCondition infinity_;
};

}  // namespace genuslab
