#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chainlattice/lattice.hpp"

namespace chainlattice {

enum class Direction { Down, Up };

const char* to_string(Direction d);

/// Successive set-difference sizes a_1, ..., a_{k-1} of a k-chain; all >= 1.
class StepVector {
public:
    StepVector() = default;
    explicit StepVector(std::vector<int> entries);
    /// (1, ..., 1) with `length` entries.
    static StepVector ones(std::size_t length);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    std::span<const int> entries() const { return entries_; }
    int sum() const;
    /// Chain length k = size() + 1.
    int chain_length() const { return static_cast<int>(entries_.size()) + 1; }

    /// Componentwise a <= b on vectors of equal length.
    bool dominated_by(const StepVector& other) const;

    /// "1,2"; "()" for the empty vector.
    std::string str() const;
    static StepVector parse(std::string_view text);

    auto operator<=>(const StepVector&) const = default;

private:
    std::vector<int> entries_;
};

/// All step vectors of the given length whose entries sum to at most maxSum,
/// ordered by (sum, lexicographic).
std::vector<StepVector> step_vectors(std::size_t length, int maxSum);

/// Strictly nested list of subsets A_1 < ... < A_l of [n], l >= 1.
class Chain {
public:
    Chain() = default;
    Chain(int n, std::vector<SubsetCode> sets);

    int n() const { return n_; }
    std::size_t size() const { return sets_.size(); }
    std::span<const SubsetCode> sets() const { return sets_; }
    SubsetCode operator[](std::size_t i) const { return sets_[i]; }
    SubsetCode bottom() const { return sets_.front(); }
    SubsetCode top() const { return sets_.back(); }

    StepVector steps() const;
    int height() const;
    /// max(||A_l| - n/2|, ||A_1| - n/2|).
    LevelDistance distance() const;
    /// Down iff the top is at least as far from n/2 as the bottom.
    Direction direction() const;

    /// Whether every set of the chain is a member of F.
    bool inside(const Family& F) const;

    /// "1,2 < 1,2,3"; the empty set prints as "-".
    std::string str() const;
    static Chain parse(std::string_view text, int n);

    auto operator<=>(const Chain&) const = default;

private:
    int n_ = 0;
    std::vector<SubsetCode> sets_;
};

struct ChainStats {
    StepVector steps;
    int height = 0;
    LevelDistance distance;
    Direction direction = Direction::Down;
};

ChainStats chain_stats(const Chain& c);

/// Probability that a uniformly random SCD of P(n) contains the chain.
Rational weight(const Chain& c);

/// The weight product evaluated with the formula of the given orientation,
/// regardless of the chain's own classification.
Rational weight_as(const Chain& c, Direction orientation);

/// Weight of any chain whose member sizes are `sizes` (strictly increasing).
Rational weight_of_sizes(int n, std::span<const int> sizes);

/// n! * weight as an exact integer. Valid for n <= 20.
std::uint64_t scaled_weight(int n, std::span<const int> sizes);

/// Number of k-chains A_1 < ... < A_k with every A_i in F.
BigInt count_k_chains(const Family& F, int k);

/// The centered chain order: compare chains by the CenteredOrderKey of their
/// latest element, then by their key lists sorted latest-first.
bool centered_chain_less(int n, std::span<const SubsetCode> a, std::span<const SubsetCode> b);

/// Sort key realising centered_chain_less; compare with operator<.
std::vector<CenteredOrderKey> chain_order_key(int n, std::span<const SubsetCode> sets);

using ChainVisitor = std::function<void(std::span<const SubsetCode>)>;

/// Visits Phi*(F, a) lazily in depth-first order.
void for_each_phi_star(const Family& F, const StepVector& a, const ChainVisitor& visit);

/// Visits Phi(F, a) (steps at least a) lazily in depth-first order.
void for_each_phi(const Family& F, const StepVector& a, const ChainVisitor& visit);

/// Visits every k-chain of F.
void for_each_k_chain(const Family& F, int k, const ChainVisitor& visit);

/// Phi*(F, a) sorted by the centered chain order.
std::vector<Chain> enumerate_phi_star(const Family& F, const StepVector& a);

/// Phi(F, a) grouped by exact step vector (ascending), each group in chain order.
std::vector<Chain> enumerate_phi(const Family& F, const StepVector& a);

/// W_a(F): total weight of Phi(F, a).
Rational weighted_sum(const Family& F, const StepVector& a);

/// Minimum number of k-chains with steps at least a inside any chain of p sets
/// (attained by a skipless chain).
BigInt path_chain_count(int p, const StepVector& a);

/// w(B) / w(A) for same-step chains with d(A) > d(B).
Rational ratio_same_steps(const Chain& A, const Chain& B);

}  // namespace chainlattice
