#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "chainlattice/grid.hpp"
#include "chainlattice/lattice.hpp"
#include "chainlattice/measured.hpp"
#include "chainlattice/scd.hpp"

namespace chainlattice {

// JSON readers throw ParseError with 1-based line/column for syntax errors
// and for members of the wrong shape.

/// {"n": 4, "sets": [[1,2],[1,2,3]]}: 1-based elements, strictly increasing
/// within a set, no repeated sets.
Family family_from_json(std::string_view text);
std::string family_to_json(const Family& F);

/// One set per line as "1,2,3"; "-" is the empty set; blank lines and lines
/// starting with '#' are skipped.
Family family_from_text(std::string_view text, int n);
std::string family_to_text(const Family& F);

/// JSON when the first non-blank character is '{', plain text otherwise
/// (which then needs n).
Family family_from_any(std::string_view text, std::optional<int> n);

/// {"n": 4, "chains": [[codes...], ...]}
SCD scd_from_json(std::string_view text);
std::string scd_to_json(const SCD& X);

/// {"n","d","k","default": "zero" | {"family": {...}}, "edges": [{"chain": [codes], "measure": "p/q"}]}
MeasuredSubhypergraph msh_from_json(std::string_view text);
std::string msh_to_json(const MeasuredSubhypergraph& f);

/// {"m","d","convention": "zeroBased"|"oneBased","points": [[...], ...]}
GridFamily grid_from_json(std::string_view text);
std::string grid_to_json(const GridFamily& F);

/// Rational from "p/q" or "p"; ParseError otherwise.
Rational parse_rational(std::string_view text);

/// Reads a whole file; ParseError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace chainlattice
