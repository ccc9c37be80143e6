#include "genuslab/frobenian.hpp"

#include "genuslab/arith.hpp"
#include "genuslab/characters.hpp"
#include "genuslab/enumerator.hpp"
#include "genuslab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace genuslab {

namespace {

void require_good_prime(std::int64_t q) {
    if (q < 2 || !is_prime(static_cast<u64>(q))) throw std::invalid_argument(std::to_string(q) + " is not prime");
}

bool divides_fraction(std::int64_t q, const Rational& r) {
    return r.numerator() % q == 0 || r.denominator() % q == 0;
}

/// r mod q for a fraction whose numerator and denominator are prime to q.
std::int64_t residue(const Rational& r, std::int64_t q) {
    return static_cast<std::int64_t>(
        mul_mod(static_cast<u64>(mod_floor(r.numerator(), q)), static_cast<u64>(inverse_mod(mod_floor(r.denominator(), q), q)),
                static_cast<u64>(q)));
}

bool is_power_residue(const Rational& r, std::int64_t d, std::int64_t q) {
    return pow_mod(static_cast<u64>(residue(r, q)), static_cast<u64>((q - 1) / d), static_cast<u64>(q)) == 1;
}

bool tuple_is_trivial(const DualTuple& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r == Rational(1); });
}

void check_tuple(const DualTuple& x, const FiniteAbelianGroup& group) {
    if (!x.empty() && x.size() != group.rank()) {
        throw std::invalid_argument("x needs one entry per invariant factor of H");
    }
    for (const auto& r : x) {
        if (r.numerator() == 0) throw std::invalid_argument("x entries must be nonzero");
    }
}

}  // namespace

SubgroupOfQStar::SubgroupOfQStar(std::vector<Rational> generators) {
    for (const auto& g : generators) {
        if (g.numerator() == 0) throw std::invalid_argument("subgroup generators must be nonzero");
        if (g != Rational(1)) generators_.push_back(g);
    }
}

SubgroupOfQStar SubgroupOfQStar::parse(const std::string& text) {
    std::vector<Rational> gens;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c) != 0; }),
                   item.end());
        if (item.empty()) continue;
        try {
            const auto slash = item.find('/');
            std::size_t used = 0;
            const std::int64_t num = std::stoll(item.substr(0, slash), &used);
            if (used != (slash == std::string::npos ? item.size() : slash)) throw std::invalid_argument(item);
            std::int64_t den = 1;
            if (slash != std::string::npos) {
                den = std::stoll(item.substr(slash + 1), &used);
                if (used != item.size() - slash - 1) throw std::invalid_argument(item);
            }
            if (den == 0) throw std::invalid_argument(item);
            gens.emplace_back(num, den);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad rational '" + item + "'");
        }
    }
    return SubgroupOfQStar(std::move(gens));
}

bool SubgroupOfQStar::is_minus_one() const noexcept {
    return generators_.size() == 1 && generators_[0] == Rational(-1);
}

bool SubgroupOfQStar::is_bad_prime(std::int64_t q) const {
    return std::any_of(generators_.begin(), generators_.end(), [&](const Rational& r) { return divides_fraction(q, r); });
}

std::string SubgroupOfQStar::to_string() const {
    if (generators_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i > 0) os << ',';
        os << generators_[i].numerator();
        if (generators_[i].denominator() != 1) os << '/' << generators_[i].denominator();
    }
    return os.str();
}

std::int64_t d_A_H(const SubgroupOfQStar& a, const FiniteAbelianGroup& group, std::int64_t q) {
    require_good_prime(q);
    if (a.is_bad_prime(q)) throw std::invalid_argument("prime " + std::to_string(q) + " divides the generators of A");
    const std::int64_t g = std::gcd(group.exponent(), q - 1);
    const auto ds = divisors(g);
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
        const std::int64_t d = *it;
        if (std::all_of(a.generators().begin(), a.generators().end(),
                        [&](const Rational& r) { return is_power_residue(r, d, q); })) {
            return d;
        }
    }
    return 1;
}

std::int64_t d_x_H(const DualTuple& x, const FiniteAbelianGroup& group, std::int64_t q) {
    require_good_prime(q);
    check_tuple(x, group);
    for (const auto& r : x) {
        if (divides_fraction(q, r)) throw std::invalid_argument("prime " + std::to_string(q) + " divides the x data");
    }
    const std::int64_t g = std::gcd(group.exponent(), q - 1);
    const auto ds = divisors(g);
    const auto& n = group.invariant_factors();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
        const std::int64_t d = *it;
        bool ok = true;
        for (std::size_t i = 0; i < x.size() && ok; ++i) ok = is_power_residue(x[i], std::gcd(d, n[i]), q);
        if (ok) return d;
    }
    return 1;
}

std::int64_t closed_form_F(std::int64_t a_val, std::int64_t b_val, const FiniteAbelianGroup& group) {
    if (a_val < 1 || b_val < 1) throw std::invalid_argument("F needs positive arguments");
    std::int64_t total = -1;
    for (const std::int64_t m : divisors(a_val)) {
        std::int64_t inner = 0;
        for (const std::int64_t d : divisors(std::gcd(m, b_val))) inner += moebius(m / d) * group.torsion_count(d);
        total += m * inner;
    }
    return total;
}

std::int64_t s_x_H(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a, const DualTuple& x) {
    return closed_form_F(d_A_H(a, group, q), d_x_H(x, group, q), group);
}

double s_x_H_by_pairing(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a, const DualTuple& x) {
    require_good_prime(q);
    check_tuple(x, group);
    if (q > 65'536) throw std::invalid_argument("pairing oracle is limited to small primes");
    if (a.is_bad_prime(q)) throw std::invalid_argument("prime divides the generators of A");
    for (const auto& r : x) {
        if (divides_fraction(q, r)) throw std::invalid_argument("prime divides the x data");
    }
    if (q == 2) {
        // F_2^x is trivial: only the trivial character.
        return 0.0;
    }
    const LocalUnitStructure units(q, 1);
    auto log_of = [&](const Rational& r) { return units.discrete_log(residue(r, q))[0]; };
    std::vector<std::int64_t> a_logs, x_logs;
    for (const auto& r : a.generators()) a_logs.push_back(log_of(r));
    for (const auto& r : x) x_logs.push_back(log_of(r));
    const auto& n = group.invariant_factors();
    double total = 0;
    for (const GroupElement& h : group.elements()) {
        if (!group.is_identity(group.multiply(q - 1, h))) continue;
        bool kills_a = true;
        for (const std::int64_t l : a_logs) kills_a = kills_a && group.is_identity(group.multiply(l, h));
        if (!kills_a) continue;
        double phase = 0;
        for (std::size_t i = 0; i < x_logs.size(); ++i) {
            const GroupElement value = group.multiply(x_logs[i], h);
            phase += static_cast<double>(value[i]) / static_cast<double>(n[i]);
        }
        total += static_cast<double>(group.element_order(h)) * std::cos(2 * std::numbers::pi * phase);
    }
    return total - 1.0;
}

Rational euler_factor(std::int64_t q, std::int64_t s_value) { return Rational(1) + Rational(s_value, q); }

double euler_factor(std::int64_t q, std::int64_t s_value, double sigma) {
    if (!(sigma > 0.5)) throw std::invalid_argument("euler_factor needs real part above 1/2");
    return 1.0 + static_cast<double>(s_value) / std::pow(static_cast<double>(q), sigma);
}

Rational local_character_sum_factor(std::int64_t q, const FiniteAbelianGroup& group) {
    require_good_prime(q);
    if (group.order() % q == 0) throw std::invalid_argument("q must not divide |G|");
    Rational total(0);
    for (const auto& entry : local_character_table(q, 1, group)) {
        const std::int64_t conductor_norm = ipow(q, entry.conductor_exponent);
        // One term per unramified twist u in G.
        total += Rational(group.order() * entry.ramification_index, conductor_norm);
    }
    return total / group.order();
}

FrobenianSample frobenian_sample(std::int64_t q, const FiniteAbelianGroup& group, const SubgroupOfQStar& a,
                                 const DualTuple& x) {
    FrobenianSample s;
    s.q = q;
    s.d_a = d_A_H(a, group, q);
    s.d_x = d_x_H(x, group, q);
    s.s = closed_form_F(s.d_a, s.d_x, group);
    s.euler_factor = euler_factor(q, s.s);
    return s;
}

FrobenianMean frobenian_mean_empirical(const FiniteAbelianGroup& group, const SubgroupOfQStar& a, const DualTuple& x,
                                       std::int64_t q_max, const DegreeOracle* oracle, unsigned threads) {
    if (q_max < 1000) throw std::invalid_argument("frobenian means need q_max >= 1000");
    check_tuple(x, group);
    std::vector<std::int64_t> primes;
    for (const i64 q : primes_up_to(q_max)) {
        if (group.order() % q == 0 || a.is_bad_prime(q)) continue;
        if (std::any_of(x.begin(), x.end(), [&](const Rational& r) { return divides_fraction(q, r); })) continue;
        primes.push_back(q);
    }
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(primes.size(), 1)));
    std::vector<std::int64_t> partial(threads, 0);
    auto work = [&](unsigned t) {
        const std::size_t lo = primes.size() * t / threads;
        const std::size_t hi = primes.size() * (t + 1) / threads;
        std::int64_t sum = 0;
        for (std::size_t i = lo; i < hi; ++i) sum += s_x_H(primes[i], group, a, x) + 1;
        partial[t] = sum;
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    FrobenianMean out;
    out.q_max = q_max;
    out.samples = static_cast<std::int64_t>(primes.size());
    const std::int64_t total = std::accumulate(partial.begin(), partial.end(), std::int64_t{0});
    out.empirical = out.samples == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(out.samples);
    if (tuple_is_trivial(x)) {
        if (oracle != nullptr) {
            out.predicted = weighted_order_mean(group, *oracle);
            out.has_prediction = true;
        } else if (a.is_trivial()) {
            out.predicted = weighted_order_mean(group, DegreeOracle::rationals());
            out.has_prediction = true;
        } else if (a.is_minus_one()) {
            out.predicted = weighted_order_mean(group, DegreeOracle::rationals_minus_one());
            out.has_prediction = true;
        }
    }
    return out;
}

DivisorMean d_A_mean(const FiniteAbelianGroup& group, const SubgroupOfQStar& a, std::int64_t q_max,
                     const DegreeOracle& oracle) {
    DivisorMean out;
    std::int64_t total = 0;
    for (const i64 q : primes_up_to(q_max)) {
        if (group.order() % q == 0 || a.is_bad_prime(q)) continue;
        total += d_A_H(a, group, q);
        ++out.samples;
    }
    out.empirical = out.samples == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(out.samples);
    // density{d | d_A} = 1/deg(d); invert over the divisor lattice of e.
    const std::int64_t e = group.exponent();
    for (const std::int64_t d : divisors(e)) {
        double exact = 0;
        for (const std::int64_t d2 : divisors(e)) {
            if (d2 % d != 0) continue;
            exact += moebius(d2 / d) / static_cast<double>(oracle.degree(d2));
        }
        out.predicted += static_cast<double>(d) * exact;
    }
    return out;
}

UnitClassReport sha_omega_unit_classes(std::int64_t e) {
    if (e < 1) throw std::invalid_argument("exponent must be positive");
    UnitClassReport r;
    r.classes = {1};
    r.unsupported = e % 8 == 0;
    return r;
}

WangReport wang_counterexample_check(std::int64_t prime_bound) {
    struct Quadratic {
        std::int64_t a;  // a + b sqrt 7
        std::int64_t b;
    };
    auto mul = [](Quadratic x, Quadratic y) { return Quadratic{x.a * y.a + 7 * x.b * y.b, x.a * y.b + x.b * y.a}; };
    WangReport report;
    report.prime_bound = prime_bound;
    std::ostringstream detail;

    const Quadratic eps{8, 3};
    const Quadratic eps2 = mul(eps, eps);
    const Quadratic u = mul(eps2, eps2);
    report.fourth_power_identity = u.a == 32257 && u.b == 12192;
    detail << "eps^4 = " << u.a << " + " << u.b << " sqrt7; ";

    // The unit group is {+-eps0^k} for the fundamental unit eps0, the
    // solution of x^2 - 7 y^2 = +-1 with least y >= 1.
    Quadratic fundamental{0, 0};
    for (std::int64_t y = 1; y < 1000 && fundamental.b == 0; ++y) {
        for (const std::int64_t sign : {1, -1}) {
            const std::int64_t x2 = 7 * y * y + sign;
            const auto x = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x2))));
            if (x * x == x2) {
                fundamental = {x, y};
                break;
            }
        }
    }
    // u = eps0^4; an eighth power of a unit is +-eps0^{8k}, and 8k = 4 has no integer solution.
    report.not_global_eighth_power = fundamental.a == eps.a && fundamental.b == eps.b && 4 % 8 != 0;
    detail << "fundamental unit " << fundamental.a << " + " << fundamental.b << " sqrt7; ";

    bool all_local = true;
    for (const i64 p : primes_up_to(prime_bound)) {
        if (p == 2) continue;
        std::vector<std::int64_t> roots;
        if (p == 7) {
            roots.push_back(0);
        } else {
            for (std::int64_t r = 1; r < p; ++r) {
                if ((r * r) % p == 7 % p) roots.push_back(r);
            }
        }
        if (roots.empty()) continue;
        ++report.primes_checked;
        const std::int64_t g = std::gcd(std::int64_t{8}, p - 1);
        for (const std::int64_t r : roots) {
            const std::int64_t image = (u.a % p + (u.b % p) * r) % p;
            if (image == 0 || pow_mod(static_cast<u64>(image), static_cast<u64>((p - 1) / g), static_cast<u64>(p)) != 1) {
                all_local = false;
                detail << "not a local 8th power at p=" << p << "; ";
            }
        }
    }
    report.local_eighth_powers = all_local;
    detail << report.primes_checked << " split primes checked";
    report.detail = detail.str();
    if (!report.passed()) throw InvariantViolation("Wang example check failed: " + report.detail);
    return report;
}

}  // namespace genuslab
