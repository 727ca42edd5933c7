#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chainlattice/chains.hpp"
#include "chainlattice/lattice.hpp"

namespace chainlattice {

/// A partition of P(n) into symmetric skipless chains.
class SymmetricChainDecomposition {
public:
    SymmetricChainDecomposition() = default;

    /// Validates every SCD invariant; throws DomainError on violation.
    SymmetricChainDecomposition(int n, std::vector<std::vector<SubsetCode>> chains);

    int n() const { return n_; }
    std::size_t chain_count() const { return chains_.size(); }
    std::span<const std::vector<SubsetCode>> chains() const { return chains_; }
    Chain chain(std::size_t id) const { return Chain(n_, chains_[id]); }
    /// Id of the chain holding `code`.
    std::uint32_t chain_of(SubsetCode code) const { return index_[code]; }

    bool operator==(const SymmetricChainDecomposition& other) const
    {
        return n_ == other.n_ && chains_ == other.chains_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<SubsetCode>> chains_;
    std::vector<std::uint32_t> index_;
};

using SCD = SymmetricChainDecomposition;

/// The bracket-matching construction: members are ')' and non-members '(';
/// the chain through A toggles the unmatched positions left to right.
SCD dbtk_scd(int n);

/// The dbtk chain containing A, computed in O(n).
Chain chain_through(int n, SubsetCode A);

/// Lowest set of the dbtk chain through A; equal bottoms <=> same chain.
SubsetCode dbtk_bottom(int n, SubsetCode A);

/// Whether a single chain of X holds every set of c.
bool contains_chain(const SCD& X, const Chain& c);

/// Image of X under the ground-set permutation i -> perm[i] (0-based).
SCD permuted_scd(const SCD& X, std::span<const int> perm);

/// Applies a 0-based element permutation to a subset code.
SubsetCode permute_code(SubsetCode code, std::span<const int> perm);

/// dbtk_scd(n) relabelled by a uniformly random permutation of [n].
SCD sample_scd(int n, std::uint64_t seed);

/// Calls visit once for every SCD of P(n); n <= 4.
void for_each_scd(int n, const std::function<void(const SCD&)>& visit);

std::vector<SCD> enumerate_all_scds(int n);

struct McWeight {
    Rational frequency;
    double standard_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

/// Fraction of `trials` permuted-dbtk SCDs containing c, with the binomial
/// standard error of that fraction. Trials are split into fixed blocks with
/// their own streams, so the result does not depend on `workers`.
McWeight mc_weight(const Chain& c, std::uint64_t trials, std::uint64_t seed, int workers = 1);

}  // namespace chainlattice
