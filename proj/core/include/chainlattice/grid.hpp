#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainlattice/lattice.hpp"

namespace chainlattice {

/// Coordinates run over 0..m-1 (ZeroBased) or 1..m (OneBased).
enum class GridConvention { ZeroBased, OneBased };

const char* to_string(GridConvention c);
GridConvention parse_grid_convention(const std::string& text);

using GridPoint = std::vector<int>;

/// A subset of [m]^d, stored densely in mixed radix.
class GridFamily {
public:
    GridFamily() = default;
    GridFamily(int m, int d, GridConvention convention);

    int m() const { return m_; }
    int d() const { return d_; }
    GridConvention convention() const { return convention_; }
    std::size_t size() const { return size_; }
    std::size_t volume() const { return member_.size(); }

    /// Whether the point lies in the coordinate range of the convention.
    bool in_range(const GridPoint& p) const;
    bool contains(const GridPoint& p) const;
    /// Throws DomainError for out-of-range points; returns false if present.
    bool insert(const GridPoint& p);
    bool erase(const GridPoint& p);

    std::size_t index_of(const GridPoint& p) const;
    GridPoint point_at(std::size_t index) const;
    /// Members in increasing index order.
    std::vector<GridPoint> points() const;

    bool operator==(const GridFamily& other) const = default;

private:
    int m_ = 0;
    int d_ = 0;
    GridConvention convention_ = GridConvention::ZeroBased;
    std::vector<char> member_;
    std::size_t size_ = 0;
};

/// Number of k-sets of members totally ordered by the componentwise order.
BigInt grid_count_chains(const GridFamily& F, int k);

/// The first Q points ordered by distance of the coordinate sum from the
/// middle of the sum range, larger sums first on ties, then lexicographically.
GridFamily m_centered_family(int m, int d, std::size_t Q, GridConvention convention);

/// Whether F satisfies the m-centered condition.
bool is_m_centered(const GridFamily& F);

struct CounterexampleSide {
    GridConvention convention = GridConvention::ZeroBased;
    bool representable = false;
    std::size_t sizeF = 0;
    std::size_t sizeFPrime = 0;
    BigInt chainsF;
    BigInt chainsFPrime;
    bool improves = false;
};

struct CounterexampleReport {
    int m = 16;
    int d = 2;
    int k = 2;
    std::vector<CounterexampleSide> sides;
    bool confirmed = false;
};

/// F = {a in [16]^2 : |a1 + a2 - 16| <= 5}, F' = F - (5,6) + (10,0), under
/// both conventions.
CounterexampleReport counterexample_check();

}  // namespace chainlattice
