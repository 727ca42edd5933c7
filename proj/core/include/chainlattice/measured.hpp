#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "chainlattice/chains.hpp"
#include "chainlattice/lattice.hpp"

namespace chainlattice {

/// All A with ceil((n-d+1)/2) <= |A| <= ceil((n+d-1)/2); 1 <= d <= n+1.
Family middle_layers(int n, int d);

/// Assignment of measures in [0,1] to the k-chains of the middle-layer
/// hypergraph P_{n,d}. Chains not stored explicitly take the default: zero, or
/// the indicator of a family.
class MeasuredSubhypergraph {
public:
    using Key = std::vector<SubsetCode>;

    MeasuredSubhypergraph() = default;
    /// Zero default.
    MeasuredSubhypergraph(int n, int d, int k);
    /// Characteristic function of F (restricted to P_{n,d}).
    static MeasuredSubhypergraph indicator(const Family& F, int d, int k);

    int n() const { return n_; }
    int d() const { return d_; }
    int k() const { return k_; }
    const Family& host() const { return host_; }
    /// The family behind the indicator default, if any.
    const std::optional<Family>& default_family() const { return defaultFamily_; }
    const std::map<Key, Rational>& explicit_values() const { return explicit_; }

    /// Whether `sets` is a k-chain of the host.
    bool is_edge(std::span<const SubsetCode> sets) const;

    Rational measure(std::span<const SubsetCode> sets) const;
    /// Default measure ignoring explicit overrides.
    int default_measure(std::span<const SubsetCode> sets) const;

    /// Stores a measure; values equal to the default are dropped.
    void set(std::span<const SubsetCode> sets, const Rational& value);

    /// |f|: the sum of all measures.
    Rational size() const;

    /// Sum of w(e) f(e) over e in Phi(P' ∩ host, a).
    Rational weighted_measure(const Family& ambient, const StepVector& a) const;

    bool operator==(const MeasuredSubhypergraph& other) const;

private:
    int n_ = 0;
    int d_ = 0;
    int k_ = 0;
    Family host_;
    std::optional<Family> defaultFamily_;
    std::map<Key, Rational> explicit_;
};

inline Rational size_of(const MeasuredSubhypergraph& f) { return f.size(); }

}  // namespace chainlattice
