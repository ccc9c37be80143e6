// genuslab command line: enumeration, fits and the side oracles.

#include "genuslab/asymptotics.hpp"
#include "genuslab/enumerator.hpp"
#include "genuslab/exponents.hpp"
#include "genuslab/forms.hpp"
#include "genuslab/frobenian.hpp"
#include "genuslab/series_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace genuslab;
using nlohmann::json;

namespace {

json rational_json(const Rational& r) {
    if (r.denominator() == 1) return r.numerator();
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

// Tables go out as CSV when --csv is given, else as a JSON array of rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void print_csv(std::ostream& os) const {
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                if (row[i].is_string()) {
                    os << row[i].get<std::string>();
                } else {
                    os << row[i].dump();
                }
            }
            os << '\n';
        }
    }
    [[nodiscard]] json to_json() const {
        json out = json::array();
        for (const auto& row : rows) {
            json r = json::object();
            for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
            out.push_back(r);
        }
        return out;
    }
};

LocalConditionSet load_conditions(const std::string& path) {
    return path.empty() ? LocalConditionSet{} : LocalConditionSet::load(path);
}

// One rational per invariant factor; "1" entries are kept.
DualTuple parse_dual(const std::string& text) {
    DualTuple x;
    if (text.empty()) return x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto one = SubgroupOfQStar::parse(item);
        x.push_back(one.is_trivial() ? Rational(1) : one.generators().front());
    }
    return x;
}

Table checkpoint_table(const SummationSeries& s) {
    Table t{{"bound", "count", "ram_weight_sum", "genus_sum", "narrow_genus_sum", "mean_genus"}, {}};
    for (const auto& cp : s.checkpoints) {
        const double mean = cp.count ? static_cast<double>(cp.genus_sum) / static_cast<double>(cp.count) : 0.0;
        t.rows.push_back({cp.bound, cp.count, cp.ram_weight_sum, cp.genus_sum, cp.narrow_genus_sum, mean});
    }
    return t;
}

json fit_json(const FitResult& f) {
    return {{"exponent", f.exponent},
            {"constant", f.constant},
            {"residual", f.residual},
            {"two_point_exponent", f.two_point_exponent},
            {"first_bound", f.first_bound},
            {"last_bound", f.last_bound},
            {"points", f.points}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genuslab: genus numbers of abelian extensions of Q"};
    app.require_subcommand(1);
    app.fallthrough();  // --csv may follow the subcommand
    bool csv = false;
    app.add_flag("--csv", csv, "emit plot-ready CSV tables instead of JSON");

    // enumerate
    auto* en = app.add_subcommand("enumerate", "enumerate G-extensions by conductor");
    std::string en_group, en_conditions, en_out, en_records, en_cache;
    std::int64_t en_bound = 0, en_max_bound = 100'000'000;
    unsigned en_threads = 1;
    std::size_t en_max_records = 20'000'000;
    double en_budget = 0;
    std::vector<std::int64_t> en_checkpoints, en_tracked;
    en->add_option("--group", en_group, "invariant factors, e.g. 2,2")->required();
    en->add_option("--bound", en_bound, "conductor bound B")->required()->check(CLI::PositiveNumber);
    en->add_option("--conditions", en_conditions, "local conditions file")->check(CLI::ExistingFile);
    en->add_option("--out", en_out, "write the series JSON here (default: stdout)");
    en->add_option("--records", en_records, "write one CSV row per extension");
    en->add_option("--threads", en_threads, "worker threads (0: all cores)");
    en->add_option("--checkpoints", en_checkpoints, "explicit checkpoint bounds")->delimiter(',');
    en->add_option("--track", en_tracked, "primes whose ramification is counted")->delimiter(',');
    en->add_option("--sieve-cache", en_cache, "binary base-prime cache file");
    en->add_option("--max-bound", en_max_bound, "refuse bounds above this");
    en->add_option("--max-records", en_max_records, "stop once this many records are held");
    en->add_option("--time-budget", en_budget, "seconds before stopping early (0: none)");

    // frobmean
    auto* fm = app.add_subcommand("frobmean", "empirical mean of s_{x,H} + 1 over primes");
    std::string fm_group, fm_subgroup, fm_x, fm_degrees;
    std::int64_t fm_qmax = 1'000'000;
    unsigned fm_threads = 1;
    fm->add_option("--group", fm_group, "H as invariant factors")->required();
    fm->add_option("--subgroup", fm_subgroup, "generators of A in Q^x, e.g. -1 or 2,-3/5");
    fm->add_option("--x", fm_x, "one rational per invariant factor of H");
    fm->add_option("--qmax", fm_qmax, "largest prime sampled");
    fm->add_option("--degrees", fm_degrees, "degree table for the prediction")->check(CLI::ExistingFile);
    fm->add_option("--threads", fm_threads, "worker threads");

    // fit
    auto* fit = app.add_subcommand("fit", "fit S(B) ~ c B (log B)^(r-1)");
    std::string fit_series, fit_stat = "genus_sum";
    std::int64_t fit_min = 1000;
    int fit_degree = -1;
    fit->add_option("--series", fit_series, "series JSON")->required()->check(CLI::ExistingFile);
    fit->add_option("--stat", fit_stat, "count, ram_weight_sum, genus_sum, narrow_genus_sum or mean_genus");
    fit->add_option("--min-bound", fit_min, "ignore checkpoints below this");
    fit->add_option("--poly-degree", fit_degree, "also fit S/B as a polynomial of this degree in log B");

    // density
    auto* dens = app.add_subcommand("density", "share of extensions with a given genus number");
    std::string dens_series;
    std::int64_t dens_genus = 1;
    int dens_omega = 4;
    dens->add_option("--series", dens_series, "series JSON")->required()->check(CLI::ExistingFile);
    dens->add_option("--genus", dens_genus, "genus number g");
    dens->add_option("--max-omega", dens_omega, "largest omega in the cumulative shares");

    // predict
    auto* pr = app.add_subcommand("predict", "predicted leading constant of the genus sum");
    std::string pr_group, pr_conditions, pr_series;
    std::int64_t pr_qmax = 1'000'000;
    pr->add_option("--group", pr_group, "invariant factors")->required();
    pr->add_option("--qmax", pr_qmax, "Euler product truncation");
    pr->add_option("--conditions", pr_conditions, "local conditions file")->check(CLI::ExistingFile);
    pr->add_option("--series", pr_series, "compare with an enumerated series")->check(CLI::ExistingFile);

    // oracle
    auto* orc = app.add_subcommand("oracle", "class group genus numbers from reduced forms");
    std::int64_t orc_dmax = 10'000;
    unsigned orc_threads = 1;
    bool orc_json = false;
    orc->add_option("--dmax", orc_dmax, "all fundamental D in (-dmax, 0)");
    orc->add_option("--threads", orc_threads, "worker threads");
    orc->add_flag("--json", orc_json, "JSON summary instead of the CSV table");

    // exponents
    auto* ex = app.add_subcommand("exponents", "rho and omega for a group and a degree oracle");
    std::string ex_group, ex_degrees;
    bool ex_minus_one = false;
    ex->add_option("--group", ex_group, "invariant factors")->required();
    ex->add_option("--degrees", ex_degrees, "file of 'd degree' lines")->check(CLI::ExistingFile);
    ex->add_flag("--minus-one", ex_minus_one, "k = Q with A = <-1>");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*en) {
            const auto group = FiniteAbelianGroup::parse(en_group);
            const auto conditions = load_conditions(en_conditions);
            EnumerationOptions options;
            options.threads = en_threads;
            options.checkpoints = en_checkpoints;
            options.tracked_primes = en_tracked;
            options.sieve_cache = en_cache;
            options.max_bound = en_max_bound;
            options.max_records = en_max_records;
            if (en_budget > 0) {
                options.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(en_budget * 1000));
            }
            std::vector<ExtensionRecord> records;
            const auto series = enumerate(group, en_bound, conditions, options, en_records.empty() ? nullptr : &records);
            if (!en_records.empty()) {
                std::ofstream os(en_records);
                if (!os) throw std::runtime_error("cannot write " + en_records);
                write_records_csv(os, records);
            }
            if (!en_out.empty()) save_series(en_out, series);
            if (csv) {
                checkpoint_table(series).print_csv(std::cout);
            } else if (en_out.empty()) {
                std::cout << series_to_json(series) << '\n';
            } else {
                const auto& f = series.final();
                emit({{"group", group.literal()},
                      {"bound", series.bound},
                      {"complete", series.complete},
                      {"covered_bound", series.covered_bound},
                      {"count", f.count},
                      {"genus_sum", f.genus_sum},
                      {"narrow_genus_sum", f.narrow_genus_sum},
                      {"records", records.size()},
                      {"series", en_out}});
            }
            if (!series.complete) std::cerr << "warning: enumeration stopped early: " << series.stop_reason << '\n';
        } else if (*fm) {
            const auto group = FiniteAbelianGroup::parse(fm_group);
            const auto a = SubgroupOfQStar::parse(fm_subgroup);
            std::optional<DegreeOracle> oracle;
            if (!fm_degrees.empty()) oracle = DegreeOracle::load(fm_degrees);
            const auto mean = frobenian_mean_empirical(group, a, parse_dual(fm_x), fm_qmax,
                                                       oracle ? &*oracle : nullptr, fm_threads);
            json j = {{"group", group.literal()},
                      {"subgroup", a.to_string()},
                      {"empirical", mean.empirical},
                      {"samples", mean.samples},
                      {"q_max", mean.q_max}};
            j["predicted"] = mean.has_prediction ? json(to_double(mean.predicted)) : json(nullptr);
            if (mean.has_prediction) j["predicted_exact"] = rational_json(mean.predicted);
            if (csv) {
                Table t{{"group", "subgroup", "q_max", "samples", "empirical", "predicted"}, {}};
                t.rows.push_back({group.literal(), a.to_string(), mean.q_max, mean.samples, mean.empirical, j["predicted"]});
                t.print_csv(std::cout);
            } else {
                emit(j);
            }
        } else if (*fit) {
            const auto series = load_series(fit_series);
            FitOptions options;
            options.min_bound = fit_min;
            json j = {{"group", series.group.literal()}, {"statistic", fit_stat}};
            const Rational r = rho(series.group, DegreeOracle::rationals());
            const Rational w = omega(series.group, DegreeOracle::rationals());
            if (fit_stat == "mean_genus") {
                const auto m = mean_genus_exponent(series, options);
                j["fit"] = fit_json(m.fit);
                j["predicted_exponent"] = rational_json(m.predicted);
            } else {
                j["fit"] = fit_json(fit_exponent(series, fit_stat, options));
                if (fit_stat == "count") j["predicted_exponent"] = rational_json(w);
                if (fit_stat == "genus_sum" || fit_stat == "narrow_genus_sum" || fit_stat == "ram_weight_sum") {
                    j["predicted_exponent"] = rational_json(r);
                }
                if (fit_degree >= 0) {
                    const auto poly = fit_log_polynomial(series, fit_stat, fit_degree, options);
                    j["polynomial"] = {{"degree", fit_degree}, {"coefficients", poly.coefficients}, {"leading", poly.leading}};
                }
            }
            if (csv) {
                Table t{{"bound", "log_log_bound", "log_value_over_bound"}, {}};
                for (const auto& cp : series.checkpoints) {
                    if (cp.bound < fit_min) continue;
                    const double b = static_cast<double>(cp.bound);
                    const double v = fit_stat == "mean_genus"
                                         ? (cp.count ? static_cast<double>(cp.genus_sum) / static_cast<double>(cp.count) * b : 0.0)
                                         : static_cast<double>(cp.statistic(fit_stat));
                    if (v <= 0) continue;
                    t.rows.push_back({cp.bound, std::log(std::log(b)), std::log(v / b)});
                }
                t.print_csv(std::cout);
            } else {
                emit(j);
            }
        } else if (*dens) {
            const auto series = load_series(dens_series);
            const auto report = zero_density_report(series, dens_genus, dens_omega);
            Table t{{"bound", "count", "genus_share"}, {}};
            for (int r = 0; r <= dens_omega; ++r) t.columns.push_back("omega_le_" + std::to_string(r));
            for (const auto& row : report.rows) {
                std::vector<json> cells = {row.bound, row.count, row.genus_proportion};
                for (const double x : row.omega_at_most) cells.emplace_back(x);
                t.rows.push_back(std::move(cells));
            }
            if (csv) {
                t.print_csv(std::cout);
            } else {
                json ram = json::array();
                for (const auto p : series.tracked_primes) {
                    if (series.group.order() % p == 0 || p > 50) continue;
                    const auto f = ramification_frequency(series, p);
                    ram.push_back({{"p", p}, {"empirical", f.empirical}, {"predicted", f.predicted},
                                   {"relative_error", f.relative_error}});
                }
                emit({{"group", series.group.literal()},
                      {"genus", dens_genus},
                      {"rows", t.to_json()},
                      {"inversions", report.inversions},
                      {"ramification", ram}});
            }
        } else if (*pr) {
            const auto group = FiniteAbelianGroup::parse(pr_group);
            const auto conditions = load_conditions(pr_conditions);
            const auto c = predict_leading_constant(group, conditions, pr_qmax);
            json j = {{"group", group.literal()},
                      {"rho", c.rho},
                      {"truncation", c.truncation},
                      {"bad_primes", c.bad_primes},
                      {"normalization", c.normalization},
                      {"archimedean_sum", c.archimedean_sum},
                      {"finite_sum", c.finite_sum},
                      {"euler_product", c.euler_product},
                      {"labelled", c.labelled},
                      {"fields", c.fields},
                      {"automorphisms", c.automorphisms}};
            json history = json::array();
            for (const auto& [mark, value] : c.truncation_history) history.push_back({{"q", mark}, {"euler_product", value}});
            j["truncation_history"] = history;
            Table t{{"bound", "empirical", "ratio"}, {}};
            if (!pr_series.empty()) {
                const auto series = load_series(pr_series);
                if (!(series.group == group)) throw std::invalid_argument("series group differs from --group");
                if (series.conditions != conditions.describe()) {
                    throw std::invalid_argument("series conditions differ from --conditions");
                }
                for (const auto& row : constant_ratio_report(series, c)) t.rows.push_back({row.bound, row.empirical, row.ratio});
                j["ratios"] = t.to_json();
            }
            if (csv) {
                if (t.rows.empty()) {
                    Table h{{"q", "euler_product"}, {}};
                    for (const auto& [mark, value] : c.truncation_history) h.rows.push_back({mark, value});
                    h.print_csv(std::cout);
                } else {
                    t.print_csv(std::cout);
                }
            } else {
                emit(j);
            }
        } else if (*orc) {
            const auto rows = forms_oracle_table(orc_dmax, orc_threads);
            std::size_t matches = 0;
            for (const auto& r : rows) matches += r.match ? 1 : 0;
            if (orc_json) {
                emit({{"dmax", orc_dmax}, {"discriminants", rows.size()}, {"matches", matches},
                      {"all_match", matches == rows.size()}});
            } else {
                std::cout << "D,h,genus_forms,genus_furuta,match\n";
                for (const auto& r : rows) {
                    std::cout << r.discriminant << ',' << r.class_number << ',' << r.genus_forms << ','
                              << r.genus_furuta << ',' << (r.match ? "true" : "false") << '\n';
                }
            }
            if (matches != rows.size()) return 2;
        } else if (*ex) {
            const auto group = FiniteAbelianGroup::parse(ex_group);
            const DegreeOracle oracle = !ex_degrees.empty() ? DegreeOracle::load(ex_degrees)
                                        : ex_minus_one      ? DegreeOracle::rationals_minus_one()
                                                            : DegreeOracle::rationals();
            const Rational r = rho(group, oracle);
            const Rational w = omega(group, oracle);
            if (csv) {
                std::cout << "group,oracle,rho,omega\n"
                          << '"' << group.literal() << "\"," << oracle.name() << ',' << rational_json(r).dump() << ','
                          << rational_json(w).dump() << '\n';
            } else {
                emit({{"group", group.literal()},
                      {"oracle", oracle.name()},
                      {"rho", rational_json(r)},
                      {"omega", rational_json(w)},
                      {"rho_integral", r.denominator() == 1}});
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "genuslab: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
