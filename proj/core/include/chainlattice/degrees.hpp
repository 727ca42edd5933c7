#pragma once

#include "chainlattice/chains.hpp"
#include "chainlattice/lattice.hpp"

namespace chainlattice {

/// Layer range of P_{n,j}: pMinus = ceil((n-j+1)/2), pPlus = ceil((n+j-1)/2).
struct LevelBounds {
    int pMinus = 0;
    int pPlus = 0;
};

LevelBounds level_bounds(int n, int j);

/// Number of k-chains of P_{n,j} through A, counted by dynamic programming
/// over the sets below and above A.
BigInt degree_brute(int n, SubsetCode A, int j, int k);

/// The closed form: sum over split points q and admissible steps of
/// |A|_(a_1+...+a_{q-1}) (n-|A|)_(a_q+...+a_{k-1}) / prod a_i!.
BigInt degree_formula(int n, SubsetCode A, int j, int k);

struct MaxDegree {
    BigInt delta;
    SubsetCode argmax = 0;
};

/// Delta_{j,k} of the hypergraph of k-chains in P_{n,j}. The witness is
/// {1, ..., s} for the lowest level s attaining the maximum.
MaxDegree max_degree(int j, int k, int n);

/// Step vector with entries floor/ceil((j-1)/(k-1)) summing to j-1,
/// non-decreasing. Requires j >= k >= 2.
StepVector balanced_steps(int j, int k);

struct DegreeSandwich {
    BigInt lower;
    BigInt upper;
};

/// lower = (pPlus)_(j-1) / prod a*_i! and upper = n^k * lower, with a* the
/// balanced steps.
DegreeSandwich degree_sandwich(int n, int j, int k);

}  // namespace chainlattice
