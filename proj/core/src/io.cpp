#include "chainlattice/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chainlattice/errors.hpp"

namespace chainlattice {

using Json = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Json parse_json(std::string_view text, const char* what)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(std::string(what) + ": malformed JSON", line, column);
    }
}

[[noreturn]] void shape_error(const std::string& message)
{
    throw ParseError(message);
}

const Json& member(const Json& object, const char* key, const char* what)
{
    if (!object.is_object() || !object.contains(key)) {
        shape_error(std::string(what) + ": missing member \"" + key + "\"");
    }
    return object.at(key);
}

int int_member(const Json& object, const char* key, const char* what)
{
    const Json& v = member(object, key, what);
    if (!v.is_number_integer()) {
        shape_error(std::string(what) + ": \"" + key + "\" must be an integer");
    }
    return v.get<int>();
}

int checked_n(int n, const char* what)
{
    if (n < 0) {
        shape_error(std::string(what) + ": n must be non-negative");
    }
    require_envelope(n, what);
    return n;
}

Json family_json(const Family& F)
{
    auto codes = F.codes();
    std::sort(codes.begin(), codes.end(), [&](SubsetCode a, SubsetCode b) {
        return lex_less(Subset{F.n(), a}, Subset{F.n(), b});
    });
    Json sets = Json::array();
    for (SubsetCode c : codes) {
        Json set = Json::array();
        for (SubsetCode r = c; r != 0; r &= r - 1) {
            set.push_back(std::countr_zero(r) + 1);
        }
        sets.push_back(std::move(set));
    }
    Json out;
    out["n"] = F.n();
    out["sets"] = std::move(sets);
    return out;
}

Family family_of_json(const Json& j)
{
    const char* what = "family";
    const int n = checked_n(int_member(j, "n", what), what);
    const Json& sets = member(j, "sets", what);
    if (!sets.is_array()) {
        shape_error("family: \"sets\" must be an array");
    }
    Family F(n);
    std::size_t index = 0;
    for (const Json& set : sets) {
        if (!set.is_array()) {
            shape_error("family: set #" + std::to_string(index + 1) + " is not an array");
        }
        SubsetCode code = 0;
        int previous = 0;
        for (const Json& e : set) {
            if (!e.is_number_integer()) {
                shape_error("family: set #" + std::to_string(index + 1) + " has a non-integer element");
            }
            const int x = e.get<int>();
            if (x < 1 || x > n) {
                shape_error("family: element " + std::to_string(x) + " outside [1, " + std::to_string(n) + "]");
            }
            if (x <= previous) {
                shape_error("family: set #" + std::to_string(index + 1) + " is not strictly increasing");
            }
            previous = x;
            code |= SubsetCode{1} << (x - 1);
        }
        if (!F.insert(code)) {
            shape_error("family: duplicate set {" + format_subset(code) + "}");
        }
        ++index;
    }
    return F;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const std::string s(text);
    const bool wellFormed = !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) {
        return (ch >= '0' && ch <= '9') || ch == '/' || ch == '-';
    }) && std::count(s.begin(), s.end(), '/') <= 1 && s.back() != '/' && s.front() != '/';
    Rational q;
    if (!wellFormed || q.set_str(s, 10) != 0) {
        throw ParseError("malformed rational '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw ParseError("rational with zero denominator '" + s + "'");
    }
    q.canonicalize();
    return q;
}

Family family_from_json(std::string_view text)
{
    return family_of_json(parse_json(text, "family"));
}

std::string family_to_json(const Family& F)
{
    return dump(family_json(F));
}

Family family_from_text(std::string_view text, int n)
{
    Family F(n);
    std::size_t line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line;
        std::string_view raw = text.substr(start, end - start);
        const auto first = raw.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && raw[first] != '#') {
            const auto last = raw.find_last_not_of(" \t\r");
            const std::string_view body = raw.substr(first, last - first + 1);
            SubsetCode code = 0;
            try {
                code = parse_subset(body, n);
            } catch (const ParseError& e) {
                throw ParseError(std::string("family text: ") + e.what(), line, first + 1);
            }
            if (!F.insert(code)) {
                throw ParseError("family text: duplicate set", line, first + 1);
            }
        }
        start = end + 1;
    }
    return F;
}

std::string family_to_text(const Family& F)
{
    auto codes = F.codes();
    std::sort(codes.begin(), codes.end(), [&](SubsetCode a, SubsetCode b) {
        return lex_less(Subset{F.n(), a}, Subset{F.n(), b});
    });
    std::string out;
    for (SubsetCode c : codes) {
        out += format_subset(c);
        out += '\n';
    }
    return out;
}

Family family_from_any(std::string_view text, std::optional<int> n)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return family_from_json(text);
    }
    if (!n) {
        throw ParseError("plain-text family needs the ground-set size n");
    }
    return family_from_text(text, *n);
}

SCD scd_from_json(std::string_view text)
{
    const Json j = parse_json(text, "scd");
    const int n = checked_n(int_member(j, "n", "scd"), "scd");
    const Json& chains = member(j, "chains", "scd");
    if (!chains.is_array()) {
        shape_error("scd: \"chains\" must be an array");
    }
    std::vector<std::vector<SubsetCode>> out;
    for (const Json& chain : chains) {
        if (!chain.is_array()) {
            shape_error("scd: every chain must be an array of codes");
        }
        std::vector<SubsetCode> codes;
        for (const Json& c : chain) {
            if (!c.is_number_unsigned()) {
                shape_error("scd: subset codes must be non-negative integers");
            }
            codes.push_back(c.get<SubsetCode>());
        }
        out.push_back(std::move(codes));
    }
    try {
        return SCD(n, std::move(out));
    } catch (const DomainError& e) {
        throw ParseError(std::string("scd: ") + e.what());
    }
}

std::string scd_to_json(const SCD& X)
{
    Json out;
    out["n"] = X.n();
    Json chains = Json::array();
    for (const auto& chain : X.chains()) {
        chains.push_back(chain);
    }
    out["chains"] = std::move(chains);
    return dump(out);
}

MeasuredSubhypergraph msh_from_json(std::string_view text)
{
    const char* what = "measured subhypergraph";
    const Json j = parse_json(text, what);
    const int n = checked_n(int_member(j, "n", what), what);
    const int d = int_member(j, "d", what);
    const int k = int_member(j, "k", what);
    if (d < 1 || d > n + 1 || k < 1) {
        shape_error("measured subhypergraph: need 1 <= d <= n+1 and k >= 1");
    }
    MeasuredSubhypergraph f(n, d, k);
    if (j.contains("default")) {
        const Json& def = j.at("default");
        if (def.is_string() && def.get<std::string>() == "zero") {
            // zero default
        } else if (def.is_object() && def.contains("family")) {
            const Family F = family_of_json(def.at("family"));
            if (F.n() != n) {
                shape_error("measured subhypergraph: default family has a different n");
            }
            f = MeasuredSubhypergraph::indicator(F, d, k);
        } else {
            shape_error("measured subhypergraph: \"default\" must be \"zero\" or {\"family\": ...}");
        }
    }
    if (j.contains("edges")) {
        const Json& edges = j.at("edges");
        if (!edges.is_array()) {
            shape_error("measured subhypergraph: \"edges\" must be an array");
        }
        for (const Json& edge : edges) {
            const Json& chain = member(edge, "chain", what);
            const Json& measure = member(edge, "measure", what);
            if (!chain.is_array() || !measure.is_string()) {
                shape_error("measured subhypergraph: edge needs \"chain\": [codes] and \"measure\": \"p/q\"");
            }
            std::vector<SubsetCode> codes;
            for (const Json& c : chain) {
                if (!c.is_number_unsigned()) {
                    shape_error("measured subhypergraph: subset codes must be non-negative integers");
                }
                codes.push_back(c.get<SubsetCode>());
            }
            try {
                f.set(codes, parse_rational(measure.get<std::string>()));
            } catch (const DomainError& e) {
                throw ParseError(std::string("measured subhypergraph: ") + e.what());
            }
        }
    }
    return f;
}

std::string msh_to_json(const MeasuredSubhypergraph& f)
{
    Json out;
    out["n"] = f.n();
    out["d"] = f.d();
    out["k"] = f.k();
    if (f.default_family()) {
        Json def;
        def["family"] = family_json(*f.default_family());
        out["default"] = std::move(def);
    } else {
        out["default"] = "zero";
    }
    Json edges = Json::array();
    for (const auto& [key, value] : f.explicit_values()) {
        Json edge;
        edge["chain"] = key;
        edge["measure"] = value.get_str();
        edges.push_back(std::move(edge));
    }
    out["edges"] = std::move(edges);
    return dump(out);
}

GridFamily grid_from_json(std::string_view text)
{
    const char* what = "grid family";
    const Json j = parse_json(text, what);
    const int m = int_member(j, "m", what);
    const int d = int_member(j, "d", what);
    GridConvention convention = GridConvention::ZeroBased;
    if (j.contains("convention")) {
        if (!j.at("convention").is_string()) {
            shape_error("grid family: \"convention\" must be a string");
        }
        try {
            convention = parse_grid_convention(j.at("convention").get<std::string>());
        } catch (const DomainError& e) {
            throw ParseError(std::string("grid family: ") + e.what());
        }
    }
    if (m < 1 || d < 1) {
        shape_error("grid family: m and d must be positive");
    }
    GridFamily F(m, d, convention);
    const Json& points = member(j, "points", what);
    if (!points.is_array()) {
        shape_error("grid family: \"points\" must be an array");
    }
    for (const Json& p : points) {
        if (!p.is_array()) {
            shape_error("grid family: every point must be an array");
        }
        GridPoint point;
        for (const Json& x : p) {
            if (!x.is_number_integer()) {
                shape_error("grid family: coordinates must be integers");
            }
            point.push_back(x.get<int>());
        }
        if (!F.in_range(point)) {
            shape_error("grid family: point outside the coordinate range");
        }
        if (!F.insert(point)) {
            shape_error("grid family: duplicate point");
        }
    }
    return F;
}

std::string grid_to_json(const GridFamily& F)
{
    Json out;
    out["m"] = F.m();
    out["d"] = F.d();
    out["convention"] = to_string(F.convention());
    Json points = Json::array();
    for (const auto& p : F.points()) {
        points.push_back(p);
    }
    out["points"] = std::move(points);
    return dump(out);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace chainlattice
