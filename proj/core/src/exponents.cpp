#include "genuslab/exponents.hpp"

#include "genuslab/arith.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace genuslab {

DegreeOracle DegreeOracle::rationals() {
    DegreeOracle o;
    o.kind_ = Kind::Rationals;
    o.name_ = "Q";
    return o;
}

DegreeOracle DegreeOracle::rationals_minus_one() {
    DegreeOracle o;
    o.kind_ = Kind::RationalsMinusOne;
    o.name_ = "Q,A=<-1>";
    return o;
}

DegreeOracle DegreeOracle::from_table(std::map<std::int64_t, std::int64_t> degrees, std::string name) {
    for (const auto& [d, deg] : degrees) {
        if (d < 1 || deg < 1) throw std::invalid_argument("degree table entries must be positive");
    }
    DegreeOracle o;
    o.kind_ = Kind::Table;
    o.table_ = std::move(degrees);
    o.name_ = std::move(name);
    return o;
}

DegreeOracle DegreeOracle::parse(std::istream& in) {
    std::map<std::int64_t, std::int64_t> table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::int64_t d = 0, deg = 0;
        if (!(fields >> d)) continue;
        std::string rest;
        if (!(fields >> deg) || (fields >> rest)) {
            throw std::invalid_argument("degree table line " + std::to_string(line_no) + ": expected \"d degree\"");
        }
        if (!table.emplace(d, deg).second) {
            throw std::invalid_argument("degree table line " + std::to_string(line_no) + ": duplicate divisor");
        }
    }
    return from_table(std::move(table));
}

DegreeOracle DegreeOracle::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open degree table " + path);
    auto oracle = parse(in);
    oracle.name_ = path;
    return oracle;
}

std::int64_t DegreeOracle::degree(std::int64_t d) const {
    if (d < 1) throw std::invalid_argument("degree oracle queried at non-positive d");
    switch (kind_) {
        case Kind::Rationals:
            return euler_phi(d);
        case Kind::RationalsMinusOne:
            return d % 2 == 1 ? euler_phi(d) : euler_phi(2 * d);
        case Kind::Table:
            break;
    }
    if (d == 1) return table_.contains(1) ? table_.at(1) : 1;
    const auto it = table_.find(d);
    if (it == table_.end()) throw std::out_of_range("degree oracle has no entry for d = " + std::to_string(d));
    return it->second;
}

Rational rho(const FiniteAbelianGroup& group, const DegreeOracle& oracle) {
    Rational total(0);
    for (std::int64_t f : divisors(group.exponent())) {
        if (f == 1) continue;
        total += Rational(f * group.count_elements_of_order(f), oracle.degree(f));
    }
    return total;
}

Rational omega(const FiniteAbelianGroup& group, const DegreeOracle& oracle) {
    Rational total(0);
    for (std::int64_t f : divisors(group.exponent())) {
        if (f == 1) continue;
        total += Rational(group.count_elements_of_order(f), oracle.degree(f));
    }
    return total;
}

bool rho_integer_check(const FiniteAbelianGroup& group, const DegreeOracle& oracle) {
    return rho(group, oracle).denominator() == 1;
}

Rational weighted_order_mean(const FiniteAbelianGroup& group, const DegreeOracle& oracle) {
    return Rational(1) + rho(group, oracle);
}

}  // namespace genuslab
