#include "genuslab/asymptotics.hpp"

#include "genuslab/frobenian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace genuslab {

namespace {

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double residual = 0;
};

LineFit weighted_line(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& ws) {
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
        sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx <= 0) throw std::invalid_argument("degenerate fit: checkpoints coincide");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double d = ys[i] - (f.intercept + f.slope * xs[i]);
        ss += ws[i] * d * d;
    }
    f.residual = std::sqrt(ss / sw);
    return f;
}

std::vector<FitPoint> usable(std::vector<FitPoint> points, const FitOptions& options) {
    std::sort(points.begin(), points.end(), [](const FitPoint& a, const FitPoint& b) { return a.bound < b.bound; });
    std::vector<FitPoint> out;
    for (const auto& p : points) {
        if (p.bound >= std::max<std::int64_t>(options.min_bound, 3) && p.value > 0) out.push_back(p);
    }
    if (out.size() < 4) throw std::invalid_argument("fit needs at least 4 usable checkpoints");
    if (static_cast<double>(out.back().bound) < 100.0 * static_cast<double>(out.front().bound)) {
        throw std::invalid_argument("fit checkpoints must span at least two decades");
    }
    return out;
}

/// Fits log(value) - log(bound) * bound_power against log log bound.
FitResult loglog_fit(const std::vector<FitPoint>& raw, const FitOptions& options, double bound_power) {
    const auto points = usable(raw, options);
    std::vector<double> xs, ys, ws;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double b = static_cast<double>(points[i].bound);
        xs.push_back(std::log(std::log(b)));
        ys.push_back(std::log(points[i].value) - bound_power * std::log(b));
        ws.push_back(i + 2 >= points.size() ? 2.0 : 1.0);
    }
    const LineFit line = weighted_line(xs, ys, ws);
    FitResult r;
    r.exponent = line.slope;
    r.constant = std::exp(line.intercept);
    r.residual = line.residual;
    const std::size_t n = xs.size();
    r.two_point_exponent = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    r.first_bound = points.front().bound;
    r.last_bound = points.back().bound;
    r.points = n;
    return r;
}

std::vector<FitPoint> column(const SummationSeries& series, const std::string& statistic) {
    std::vector<FitPoint> points;
    for (const auto& cp : series.checkpoints) {
        points.push_back({cp.bound, static_cast<double>(cp.statistic(statistic))});
    }
    return points;
}

}  // namespace

FitResult fit_exponent(const std::vector<FitPoint>& points, const FitOptions& options) {
    FitResult r = loglog_fit(points, options, 1.0);
    r.exponent += 1.0;
    r.two_point_exponent += 1.0;
    return r;
}

FitResult fit_exponent(const SummationSeries& series, const std::string& statistic, const FitOptions& options) {
    return fit_exponent(column(series, statistic), options);
}

PolynomialFit fit_log_polynomial(const SummationSeries& series, const std::string& statistic, int degree,
                                 const FitOptions& options) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
    const auto points = usable(column(series, statistic), options);
    const auto n = static_cast<std::size_t>(degree) + 1;
    if (points.size() < n + 1) throw std::invalid_argument("not enough checkpoints for the polynomial fit");
    // Normal equations, scaled by powers of the largest log B for conditioning.
    const double scale = std::log(static_cast<double>(points.back().bound));
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double b = static_cast<double>(points[i].bound);
        const double t = std::log(b) / scale;
        const double w = i + 2 >= points.size() ? 2.0 : 1.0;
        const double y = points[i].value / b;
        std::vector<double> basis(n, 1.0);
        for (std::size_t k = 1; k < n; ++k) basis[k] = basis[k - 1] * t;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m[r][c] += w * basis[r] * basis[c];
            m[r][n] += w * basis[r] * y;
        }
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        if (std::abs(m[col][col]) < 1e-300) throw std::invalid_argument("singular polynomial fit");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    PolynomialFit out;
    for (std::size_t k = 0; k < n; ++k) {
        out.coefficients.push_back(m[k][n] / m[k][k] / std::pow(scale, static_cast<double>(k)));
    }
    out.leading = out.coefficients.back();
    out.first_bound = points.front().bound;
    out.last_bound = points.back().bound;
    return out;
}

MeanGenusFit mean_genus_exponent(const SummationSeries& series, const FitOptions& options) {
    std::vector<FitPoint> means;
    for (const auto& cp : series.checkpoints) {
        if (cp.count > 0) {
            means.push_back({cp.bound, static_cast<double>(cp.genus_sum) / static_cast<double>(cp.count)});
        }
    }
    MeanGenusFit out;
    out.fit = loglog_fit(means, options, 0.0);
    out.predicted = rho(series.group, DegreeOracle::rationals()) - omega(series.group, DegreeOracle::rationals());
    return out;
}

ZeroDensityReport zero_density_report(const SummationSeries& series, std::int64_t genus, int max_omega) {
    ZeroDensityReport report;
    report.genus = genus;
    for (const auto& cp : series.checkpoints) {
        DensityRow row;
        row.bound = cp.bound;
        row.count = cp.count;
        if (cp.count > 0) {
            const double n = static_cast<double>(cp.count);
            const auto it = cp.genus_histogram.find(genus);
            row.genus_proportion = it == cp.genus_histogram.end() ? 0.0 : static_cast<double>(it->second) / n;
            std::int64_t running = 0;
            for (int r = 0; r <= max_omega; ++r) {
                const auto o = cp.omega_histogram.find(r);
                if (o != cp.omega_histogram.end()) running += o->second;
                row.omega_at_most.push_back(static_cast<double>(running) / n);
            }
        } else {
            row.omega_at_most.assign(static_cast<std::size_t>(max_omega) + 1, 0.0);
        }
        if (!report.rows.empty() && report.rows.back().count > 0 && row.genus_proportion > report.rows.back().genus_proportion) {
            report.inversions.push_back(row.bound);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Rational delta_p_prediction(const FiniteAbelianGroup& group, std::int64_t p) {
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (group.order() % p == 0) throw std::invalid_argument("p divides |G|; wild primes are excluded");
    const std::int64_t t = group.torsion_count(p - 1);
    return Rational(t - 1, p + t - 1);
}

RamificationFrequency ramification_frequency(const SummationSeries& series, std::int64_t p) {
    const Checkpoint& cp = series.final();
    const auto it = cp.ramified_prime_counts.find(p);
    if (it == cp.ramified_prime_counts.end()) throw std::invalid_argument("prime " + std::to_string(p) + " was not tracked");
    RamificationFrequency f;
    f.p = p;
    f.empirical = cp.count == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(cp.count);
    f.predicted = boost::rational_cast<double>(delta_p_prediction(series.group, p));
    f.relative_error = f.predicted == 0 ? std::abs(f.empirical) : std::abs(f.empirical - f.predicted) / f.predicted;
    return f;
}

// Normalization for k = Q (class number 1, residue of zeta at s = 1 equal to 1).
//
// Sum over surjections of genus numbers: each term is e_inf prod e_p / (|G| iota).
// Replace 1/iota by the average over eps in Z^x / Z^{xe} of the indicator
// "eps is a local norm everywhere"; the average brings 1/[Z^x : Z^{xe}], and
// when 8 does not divide e only eps = 1 survives in the leading term.
// Poisson summation on the ideles modulo Q^x then gives
//   1/|G|                 from the genus denominator,
//   1/|Hom(Z^x, G)|       = 1/|G[2]| from the global units,
//   1/|G| per finite v in S, cancelling the |G| unramified twists that the
//                         local sum at v runs over,
// and the Tauberian step turns (s - 1)^{-rho} into B (log B)^{rho-1} / (rho-1)!.
// Places outside S are accounted for by the Euler product, whose factor at q
// is the local sum at q divided by |G|, so the constant does not depend on S.
double constant_normalization(const FiniteAbelianGroup& group, std::int64_t rho_value, std::size_t finite_places) {
    double factorial = 1;
    for (std::int64_t i = 2; i < rho_value; ++i) factorial *= static_cast<double>(i);
    const double units_index = group.exponent() % 2 == 0 ? 2.0 : 1.0;
    const double g = static_cast<double>(group.order());
    return 1.0 / (factorial * static_cast<double>(group.torsion_count(2)) * std::pow(g, static_cast<double>(finite_places) + 1) *
                  units_index);
}

ConstantPrediction predict_leading_constant(const FiniteAbelianGroup& group, const LocalConditionSet& conditions,
                                            std::int64_t truncation) {
    if (group.is_trivial()) throw std::invalid_argument("constant prediction needs a nontrivial group");
    const std::int64_t e = group.exponent();
    if (sha_omega_unit_classes(e).unsupported) {
        throw std::domain_error("8 divides the exponent: the unit obstruction case is not supported");
    }
    const Rational rho_q = rho(group, DegreeOracle::rationals());
    if (rho_q.denominator() != 1) throw std::logic_error("rho over Q must be an integer");

    ConstantPrediction out;
    out.rho = rho_q.numerator();
    out.truncation = truncation;
    std::set<std::int64_t> s_places;
    for (const i64 p : primes_up_to(group.order() * group.order())) s_places.insert(p);
    for (const auto& [p, c] : conditions.finite()) s_places.insert(p);
    out.bad_primes.assign(s_places.begin(), s_places.end());
    if (truncation <= out.bad_primes.back()) throw std::invalid_argument("truncation must exceed every prime of S");

    out.normalization = constant_normalization(group, out.rho, s_places.size());

    const std::int64_t g2 = group.torsion_count(2);
    out.archimedean_sum = conditions.infinity().kind == ConditionKind::Split ? 1.0 : static_cast<double>(2 * g2 - 1);

    double finite = 1.0;
    for (const std::int64_t p : out.bad_primes) {
        const int level = (p == 2 ? 2 : 1) + valuation(e, p);
        const LocalCondition* c = conditions.at(p);
        const bool split = c != nullptr && c->kind == ConditionKind::Split;
        double sum = 0;
        for (const auto& entry : local_character_table(p, level, group)) {
            if (!conditions.admits_local(p, entry.character)) continue;
            const double twists = split ? 1.0 : static_cast<double>(group.order());
            sum += twists * static_cast<double>(entry.ramification_index) /
                   std::pow(static_cast<double>(p), entry.conductor_exponent);
        }
        finite *= sum * std::pow(1.0 - 1.0 / static_cast<double>(p), static_cast<double>(out.rho));
    }
    out.finite_sum = finite;

    std::map<std::int64_t, std::int64_t> s_by_gcd;
    for (const std::int64_t d : divisors(e)) s_by_gcd[d] = closed_form_F(d, d, group);
    long double product = 1.0L;
    std::int64_t next_mark = 1000;
    for (const i64 q : primes_up_to(truncation)) {
        while (q > next_mark) {
            out.truncation_history.emplace_back(next_mark, static_cast<double>(product));
            next_mark *= 10;
        }
        if (s_places.count(q) != 0) continue;
        const std::int64_t s = s_by_gcd[std::gcd(e, q - 1)];
        const long double inv = 1.0L / static_cast<long double>(q);
        product *= (1.0L + static_cast<long double>(s) * inv) * std::pow(1.0L - inv, static_cast<long double>(out.rho));
    }
    if (next_mark <= truncation) out.truncation_history.emplace_back(next_mark, static_cast<double>(product));
    out.euler_product = static_cast<double>(product);

    out.labelled = out.normalization * out.archimedean_sum * out.finite_sum * out.euler_product;
    try {
        out.automorphisms = automorphism_count(group);
    } catch (const std::length_error&) {
        out.automorphisms = 0;
    }
    out.fields = out.automorphisms > 0 ? out.labelled / static_cast<double>(out.automorphisms) : 0.0;
    return out;
}

std::vector<ConstantRatioRow> constant_ratio_report(const SummationSeries& series, const ConstantPrediction& prediction,
                                                    std::int64_t min_bound) {
    std::vector<ConstantRatioRow> rows;
    for (const auto& cp : series.checkpoints) {
        if (cp.bound < std::max<std::int64_t>(min_bound, 3)) continue;
        const double b = static_cast<double>(cp.bound);
        ConstantRatioRow row;
        row.bound = cp.bound;
        row.empirical = static_cast<double>(cp.genus_sum) / (b * std::pow(std::log(b), static_cast<double>(prediction.rho - 1)));
        row.ratio = row.empirical > 0 ? prediction.labelled / row.empirical : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace genuslab
