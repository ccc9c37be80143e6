#include "genuslab/series_io.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace genuslab {

namespace {

using nlohmann::json;

json histogram_to_json(const std::map<std::int64_t, std::int64_t>& h) {
    json out = json::object();
    for (const auto& [k, v] : h) out[std::to_string(k)] = v;
    return out;
}

std::map<std::int64_t, std::int64_t> histogram_from_json(const json& j) {
    std::map<std::int64_t, std::int64_t> out;
    for (const auto& [k, v] : j.items()) out[std::stoll(k)] = v.get<std::int64_t>();
    return out;
}

}  // namespace

std::string series_to_json(const SummationSeries& series) {
    json j;
    j["group"] = series.group.literal();
    j["bound"] = series.bound;
    j["conditions"] = series.conditions;
    j["automorphisms"] = series.automorphisms;
    j["tracked_primes"] = series.tracked_primes;
    j["complete"] = series.complete;
    j["covered_bound"] = series.covered_bound;
    if (!series.complete) j["stop_reason"] = series.stop_reason;
    json cps = json::array();
    for (const auto& cp : series.checkpoints) {
        json c;
        c["bound"] = cp.bound;
        c["count"] = cp.count;
        c["ram_weight_sum"] = cp.ram_weight_sum;
        c["genus_sum"] = cp.genus_sum;
        c["narrow_genus_sum"] = cp.narrow_genus_sum;
        c["genus_histogram"] = histogram_to_json(cp.genus_histogram);
        c["omega_histogram"] = histogram_to_json(cp.omega_histogram);
        c["ramified_prime_counts"] = histogram_to_json(cp.ramified_prime_counts);
        cps.push_back(std::move(c));
    }
    j["checkpoints"] = std::move(cps);
    return j.dump(2) + "\n";
}

SummationSeries series_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        SummationSeries s;
        s.group = FiniteAbelianGroup::parse(j.at("group").get<std::string>());
        s.bound = j.at("bound").get<std::int64_t>();
        s.conditions = j.value("conditions", std::string{});
        s.automorphisms = j.value("automorphisms", std::int64_t{0});
        s.tracked_primes = j.value("tracked_primes", std::vector<std::int64_t>{});
        s.complete = j.value("complete", true);
        s.covered_bound = j.value("covered_bound", s.bound);
        s.stop_reason = j.value("stop_reason", std::string{});
        for (const auto& c : j.at("checkpoints")) {
            Checkpoint cp;
            cp.bound = c.at("bound").get<std::int64_t>();
            cp.count = c.at("count").get<std::int64_t>();
            cp.ram_weight_sum = c.at("ram_weight_sum").get<std::int64_t>();
            cp.genus_sum = c.at("genus_sum").get<std::int64_t>();
            cp.narrow_genus_sum = c.at("narrow_genus_sum").get<std::int64_t>();
            cp.genus_histogram = histogram_from_json(c.at("genus_histogram"));
            cp.omega_histogram = histogram_from_json(c.at("omega_histogram"));
            cp.ramified_prime_counts = histogram_from_json(c.at("ramified_prime_counts"));
            s.checkpoints.push_back(std::move(cp));
        }
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
    }
}

void save_series(const std::string& path, const SummationSeries& series) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << series_to_json(series);
}

SummationSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return series_from_json(buf.str());
}

void write_records_csv(std::ostream& os, const std::vector<ExtensionRecord>& records) {
    os << extension_csv_header() << '\n';
    for (const auto& r : records) os << to_csv_row(r) << '\n';
}

}  // namespace genuslab
