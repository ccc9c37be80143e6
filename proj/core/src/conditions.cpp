#include "genuslab/conditions.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace genuslab {

void LocalConditionSet::set(std::int64_t p, LocalCondition condition) {
    if (!is_prime(static_cast<u64>(p))) throw std::invalid_argument("condition place " + std::to_string(p) + " is not prime");
    if (condition.kind == ConditionKind::Norm && condition.norm_element % p == 0) {
        throw std::invalid_argument("norm condition at " + std::to_string(p) + ": element " +
                                    std::to_string(condition.norm_element) + " is not a unit there");
    }
    if (condition.kind == ConditionKind::Norm && condition.norm_element == 0) {
        throw std::invalid_argument("norm condition: zero is not a unit");
    }
    if (condition.kind == ConditionKind::RamificationIndex && condition.ramification_index < 1) {
        throw std::invalid_argument("ramification index condition must be positive");
    }
    for (const auto& chi : condition.allowed) {
        if (chi.prime() != p) throw std::invalid_argument("explicit condition character lives at another prime");
    }
    finite_[p] = std::move(condition);
}

void LocalConditionSet::set_infinity(LocalCondition condition) {
    if (condition.kind != ConditionKind::Any && condition.kind != ConditionKind::Split) {
        throw std::invalid_argument("only 'any' and 'split' conditions are supported at infinity");
    }
    infinity_ = std::move(condition);
}

const LocalCondition* LocalConditionSet::at(std::int64_t p) const {
    const auto it = finite_.find(p);
    return it == finite_.end() ? nullptr : &it->second;
}

bool LocalConditionSet::admits_local(std::int64_t p, const LocalCharacter& chi) const {
    const LocalCondition* c = at(p);
    if (c == nullptr) return true;
    switch (c->kind) {
        case ConditionKind::Any:
            return true;
        case ConditionKind::Unramified:
        case ConditionKind::Split:
            return chi.is_trivial();
        case ConditionKind::RamificationIndex:
            return chi.ramification_index() == c->ramification_index;
        case ConditionKind::Norm:
            return chi.is_trivial() || chi.group().is_identity(chi.value(c->norm_element));
        case ConditionKind::Explicit: {
            const int level = chi.conductor_exponent();
            const LocalCharacter primitive = chi.at_level(level);
            for (const auto& allowed : c->allowed) {
                if (allowed.conductor_exponent() == level && allowed.at_level(level) == primitive) return true;
            }
            return false;
        }
    }
    return false;
}

bool LocalConditionSet::admits_unramified(std::int64_t p) const {
    const LocalCondition* c = at(p);
    if (c == nullptr) return true;
    switch (c->kind) {
        case ConditionKind::RamificationIndex:
            return c->ramification_index == 1;
        case ConditionKind::Explicit:
            for (const auto& allowed : c->allowed) {
                if (allowed.is_trivial()) return true;
            }
            return false;
        default:
            return true;
    }
}

LocalConditionSet LocalConditionSet::parse(std::istream& in) {
    LocalConditionSet set;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("conditions line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string place, what;
        if (!(fields >> place)) continue;
        if (!(fields >> what)) fail("missing condition");
        std::string arg;
        fields >> arg;
        std::string extra;
        if (fields >> extra) fail("trailing text '" + extra + "'");
        if (place == "inf") {
            if (what != "split" || !arg.empty()) fail("only 'inf split' is supported at infinity");
            set.set_infinity(LocalCondition::split());
            continue;
        }
        std::int64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoll(place, &used);
            if (used != place.size()) fail("bad place '" + place + "'");
        } catch (const std::invalid_argument&) {
            fail("bad place '" + place + "'");
        } catch (const std::out_of_range&) {
            fail("bad place '" + place + "'");
        }
        try {
            if (what == "unramified" && arg.empty()) {
                set.set(p, LocalCondition::unramified());
            } else if (what == "split" && arg.empty()) {
                set.set(p, LocalCondition::split());
            } else if (what.rfind("e=", 0) == 0 && arg.empty()) {
                set.set(p, LocalCondition::ramification_equals(std::stoll(what.substr(2))));
            } else if (what == "norm" && !arg.empty()) {
                set.set(p, LocalCondition::norm(std::stoll(arg)));
            } else {
                fail("unknown condition '" + what + (arg.empty() ? "" : " " + arg) + "'");
            }
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("conditions line", 0) == 0) throw;
            fail(e.what());
        }
    }
    return set;
}

LocalConditionSet LocalConditionSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open conditions file " + path);
    return parse(in);
}

std::string LocalConditionSet::describe() const {
    std::ostringstream os;
    for (const auto& [p, c] : finite_) {
        switch (c.kind) {
            case ConditionKind::Any:
                break;
            case ConditionKind::Unramified:
                os << p << " unramified\n";
                break;
            case ConditionKind::Split:
                os << p << " split\n";
                break;
            case ConditionKind::RamificationIndex:
                os << p << " e=" << c.ramification_index << '\n';
                break;
            case ConditionKind::Norm:
                os << p << " norm " << c.norm_element << '\n';
                break;
            case ConditionKind::Explicit:
                os << p << " explicit[" << c.allowed.size() << "]\n";
                break;
        }
    }
    if (infinity_.kind == ConditionKind::Split) os << "inf split\n";
    return os.str();
}

}  // namespace genuslab
