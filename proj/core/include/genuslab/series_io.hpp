#pragma once

// JSON form of a summation series and CSV output of extension records.

#include "genuslab/enumerator.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace genuslab {

/// Deterministic JSON (sorted keys, fixed indentation); holds no timing or
/// thread information, so equal series serialize to equal bytes.
std::string series_to_json(const SummationSeries& series);
/// Throws std::invalid_argument on malformed input.
SummationSeries series_from_json(std::string_view text);

void save_series(const std::string& path, const SummationSeries& series);
SummationSeries load_series(const std::string& path);

void write_records_csv(std::ostream& os, const std::vector<ExtensionRecord>& records);

}  // namespace genuslab
