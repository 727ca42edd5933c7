#include "report.hpp"

#include <gmpxx.h>

#include <cstdio>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace chainlattice::cli {

Format parse_format(const std::string& text)
{
    if (text == "json") {
        return Format::Json;
    }
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "human") {
        return Format::Human;
    }
    throw std::invalid_argument("unknown format '" + text + "'");
}

namespace {

std::string scalar_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string csv_cell(const Json& v)
{
    std::string s = scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

std::string with_decimal(const std::string& s)
{
    static const std::regex fraction("^-?[0-9]+/[0-9]+$");
    if (!std::regex_match(s, fraction)) {
        return s;
    }
    mpq_class q(s);
    q.canonicalize();
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", q.get_d());
    return s + " (≈ " + buffer + ")";
}

void human_lines(const Json& v, const std::string& indent, std::ostringstream& out)
{
    for (const auto& [key, value] : v.items()) {
        if (value.is_object()) {
            out << indent << key << ":\n";
            human_lines(value, indent + "  ", out);
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            out << indent << key << ":\n";
            std::size_t i = 0;
            for (const auto& row : value) {
                out << indent << "  [" << i++ << "]\n";
                human_lines(row, indent + "    ", out);
            }
        } else if (value.is_string()) {
            out << indent << key << ": " << with_decimal(value.get<std::string>()) << "\n";
        } else {
            out << indent << key << ": " << value.dump() << "\n";
        }
    }
}

}  // namespace

std::string report_emit(const Json& report, Format format)
{
    switch (format) {
    case Format::Json:
        return report.dump(2) + "\n";
    case Format::Human: {
        std::ostringstream out;
        human_lines(report, "", out);
        return out.str();
    }
    case Format::Csv: {
        std::ostringstream out;
        if (report.contains("manifest")) {
            for (const auto& [key, value] : report.at("manifest").items()) {
                out << "# " << key << "=" << scalar_text(value) << "\n";
            }
        }
        if (report.contains("rows") && report.at("rows").is_array() && !report.at("rows").empty()) {
            const Json& rows = report.at("rows");
            bool first = true;
            for (const auto& [key, value] : rows.front().items()) {
                out << (first ? "" : ",") << key;
                first = false;
            }
            out << "\n";
            for (const auto& row : rows) {
                first = true;
                for (const auto& [key, value] : row.items()) {
                    out << (first ? "" : ",") << csv_cell(value);
                    first = false;
                }
                out << "\n";
            }
            return out.str();
        }
        out << "key,value\n";
        for (const auto& [key, value] : report.items()) {
            if (key == "manifest") {
                continue;
            }
            out << key << "," << csv_cell(value) << "\n";
        }
        return out.str();
    }
    }
    return {};
}

}  // namespace chainlattice::cli
