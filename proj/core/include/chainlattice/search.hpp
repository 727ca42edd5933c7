#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlattice/lattice.hpp"

namespace chainlattice {

enum class SearchMode { Exhaustive, ExhaustiveCanonical, LocalSearch };

const char* to_string(SearchMode mode);
SearchMode parse_search_mode(const std::string& text);

struct SearchConfig {
    int n = 4;
    int k = 2;
    std::size_t M = 0;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t restarts = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t witnessCap = 16;
    /// Local search: swap attempts per restart and tabu window length.
    std::uint64_t movesPerRestart = 2000;
    int tabu = 8;
};

struct SearchResult {
    BigInt minValue;
    BigInt centeredValue;
    /// No family beat the centered one (for exhaustive runs: the minimum is attained by it).
    bool conjectureHolds = true;
    std::vector<Family> witnesses;
    bool exhaustive = false;
    std::uint64_t familiesExamined = 0;
};

/// Minimum of c_k over families of size M. Exhaustive modes are exact;
/// LocalSearch returns an upper bound.
SearchResult ck_min(const SearchConfig& config);

struct VerifyRow {
    std::size_t M = 0;
    BigInt minValue;
    BigInt centeredValue;
    bool holds = true;
    std::vector<Family> witnesses;
};

struct VerifyReport {
    int n = 0;
    int k = 0;
    SearchMode mode = SearchMode::Exhaustive;
    std::vector<VerifyRow> rows;
    bool allHold = true;
};

/// Exhaustive minima for every M in [0, 2^n]. n <= 4 for every k; n = 5 for
/// k = 2 through the orbit-reduced sweep.
VerifyReport verify_conjecture_range(int n, int k, std::size_t witnessCap = 16);

/// x * floor(1 + n/2), the pair count of the centered family of size N + x.
std::uint64_t kleitman_pairs_value(int n, std::uint64_t x);

/// Seeded hill climbing over single swaps with restarts.
SearchResult local_search(const SearchConfig& config);

/// Number of k-chains of F ∪ {X} that contain X.
std::uint64_t chain_degree(const Family& F, SubsetCode X, int k);

/// Minimum image of F under ground-set permutations, comparing membership
/// vectors as 2^n-bit integers. n <= 8.
Family canonical_form(const Family& F);

}  // namespace chainlattice
