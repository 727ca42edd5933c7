#pragma once

// Slow, deliberately naive reference implementations. They share no code
// with the library beyond the Family container and subset codes.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "chainlattice/lattice.hpp"

namespace oracle {

using chainlattice::Family;
using chainlattice::SubsetCode;

bool strict_subset(SubsetCode a, SubsetCode b);

/// k-chains of F by recursive tuple enumeration.
std::uint64_t count_chains(const Family& F, int k);

/// Every k-chain of F as an increasing tuple.
std::vector<std::vector<SubsetCode>> all_chains(const Family& F, int k);

/// Chains of F of any length >= 1 (all nested tuples).
std::vector<std::vector<SubsetCode>> all_chains_any_length(const Family& F);

/// Product of inverse binomials, evaluated with mpz binomials.
mpq_class weight(int n, const std::vector<SubsetCode>& chain);

/// W_a(F) by explicit enumeration of all (k)-chains and their step sizes.
mpq_class weighted_sum(const Family& F, const std::vector<int>& a);

/// All SCDs of P(n) as exact covers of P(n) by symmetric skipless chains.
/// Each SCD is returned as a chain id per subset code.
std::vector<std::vector<int>> all_scds(int n);

/// Fraction of all SCDs containing the chain.
mpq_class scd_fraction(int n, const std::vector<SubsetCode>& chain);

/// Centered-family definition checked pairwise.
bool is_centered(const Family& ambient, const Family& F);

/// Lexicographic comparison through sorted element lists.
bool lex_less(int n, SubsetCode a, SubsetCode b);

/// Number of k-chains of P_{n,j} containing A, by full enumeration.
std::uint64_t degree(int n, SubsetCode A, int j, int k);

/// Minimum of c_k over all families of size M, n <= 3 (at most 2^8 families).
std::uint64_t min_chains(int n, int k, std::size_t M);

/// Grid points (as flat coordinate vectors) and a k-chain count by subsets.
std::uint64_t grid_chains(const std::vector<std::vector<int>>& points, int k);

/// Number of chains of steps >= a inside a skipless chain of p sets.
std::uint64_t path_chains(int p, const std::vector<int>& a);

}  // namespace oracle
