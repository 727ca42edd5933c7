#pragma once

#include <string>

#include <json.hpp>

namespace chainlattice::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Human };

Format parse_format(const std::string& text);

/// Deterministic serialization. A report may carry a "rows" array of flat
/// objects; CSV then has one line per row, otherwise one key,value line per
/// scalar. Human output appends "≈ decimal" to every "p/q" string.
std::string report_emit(const Json& report, Format format);

}  // namespace chainlattice::cli
