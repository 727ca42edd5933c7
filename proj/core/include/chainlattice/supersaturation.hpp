#pragma once

#include <optional>
#include <vector>

#include "chainlattice/chains.hpp"
#include "chainlattice/lattice.hpp"
#include "chainlattice/measured.hpp"

namespace chainlattice {

/// The chain order on Phi*(F, a): centered_chain_less restricted to the
/// chains of F with exact steps a.
struct ChainOrder {
    Family context;
    StepVector steps;
};

/// Throws DomainError unless both chains lie in Phi*(context, steps).
bool chain_less(const Chain& A, const Chain& B, const ChainOrder& order);

/// c[f, F, a]: pushes the measure of f on Phi*(F ∩ host, a) onto the earliest
/// chains, preserving its total there.
MeasuredSubhypergraph compress(const MeasuredSubhypergraph& f, const Family& F, const StepVector& a);

bool is_compressed(const MeasuredSubhypergraph& f, const Family& F, const StepVector& a);

/// Compressed with respect to (ambient, a) for every step vector a.
bool is_completely_compressed(const MeasuredSubhypergraph& f, const Family& ambient);

/// Compresses every exact step class of the ambient family in one pass.
MeasuredSubhypergraph fully_compress(const MeasuredSubhypergraph& f, const Family& ambient);

struct GoodnessReport {
    bool good = true;
    std::optional<StepVector> witness;
    Rational lhs;
    Rational rhs;
};

/// Checks sum_{Phi(P', a)} w f >= W_a(G_Q) for every step vector a that can
/// make the right side positive. On failure reports the first violating a.
GoodnessReport is_q_good(const MeasuredSubhypergraph& f, std::size_t Q, const Family& ambient);
GoodnessReport is_q_good(const MeasuredSubhypergraph& f, std::size_t Q);

/// The greedy measure on P' = P_{n,d} \ C matching the weighted totals of
/// f_{G_M} in every exact step class and compressed in each. Throws
/// InfeasibleError when P' cannot supply a class's weight.
MeasuredSubhypergraph hat_f(const Family& C, std::size_t M, int d, int k);

/// s/(kn): the lower bound on c_k(F) - c_k(G_M) that the greedy argument
/// yields when F misses s sets of the middle layers.
Rational missing_sets_bound(std::size_t s, int k, int n);

struct SupersatCheck {
    Rational lhs;
    Rational rhs;
    bool ok = false;
};

/// W_a(F) against W_a(G_|F|).
SupersatCheck verify_supersat(const Family& F, const StepVector& a);

/// min(n+1, floor(10 k sqrt(n ln n))).
int d_param(int n, int k);

/// Composition codes: a step vector (a_1, ..., a_r) with sum s is encoded as
/// the s-bit integer whose binary string is "1 0^{a_1-1} 1 0^{a_2-1} ...".
/// Every step vector of sum at most n gets a distinct code in [1, 2^n).
std::uint32_t composition_code(const StepVector& a);
StepVector composition_from_code(std::uint32_t code);

/// For every composition code, n! times the total weight of Phi*(F, a).
/// One pass over all chains of F; n <= 20.
std::vector<unsigned __int128> scaled_step_profile(const Family& F);

}  // namespace chainlattice
