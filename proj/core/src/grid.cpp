#include "chainlattice/grid.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "chainlattice/errors.hpp"

namespace chainlattice {

const char* to_string(GridConvention c)
{
    return c == GridConvention::ZeroBased ? "zeroBased" : "oneBased";
}

GridConvention parse_grid_convention(const std::string& text)
{
    if (text == "zeroBased") {
        return GridConvention::ZeroBased;
    }
    if (text == "oneBased") {
        return GridConvention::OneBased;
    }
    throw DomainError("unknown grid convention '" + text + "'");
}

GridFamily::GridFamily(int m, int d, GridConvention convention) : m_(m), d_(d), convention_(convention)
{
    if (m < 1 || d < 1) {
        throw DomainError("grid: m and d must be positive");
    }
    std::size_t volume = 1;
    for (int i = 0; i < d; ++i) {
        if (volume > (std::size_t{1} << 26) / static_cast<std::size_t>(m)) {
            throw ResourceError("grid: m^d exceeds 2^26 points");
        }
        volume *= static_cast<std::size_t>(m);
    }
    member_.assign(volume, 0);
}

bool GridFamily::in_range(const GridPoint& p) const
{
    if (p.size() != static_cast<std::size_t>(d_)) {
        return false;
    }
    const int lo = convention_ == GridConvention::ZeroBased ? 0 : 1;
    return std::all_of(p.begin(), p.end(), [&](int x) { return x >= lo && x < lo + m_; });
}

std::size_t GridFamily::index_of(const GridPoint& p) const
{
    if (!in_range(p)) {
        throw DomainError("grid: point outside the coordinate range");
    }
    const int lo = convention_ == GridConvention::ZeroBased ? 0 : 1;
    std::size_t index = 0;
    for (int x : p) {
        index = index * static_cast<std::size_t>(m_) + static_cast<std::size_t>(x - lo);
    }
    return index;
}

GridPoint GridFamily::point_at(std::size_t index) const
{
    const int lo = convention_ == GridConvention::ZeroBased ? 0 : 1;
    GridPoint p(static_cast<std::size_t>(d_));
    for (int i = d_; i-- > 0;) {
        p[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(m_)) + lo;
        index /= static_cast<std::size_t>(m_);
    }
    return p;
}

bool GridFamily::contains(const GridPoint& p) const
{
    return in_range(p) && member_[index_of(p)] != 0;
}

bool GridFamily::insert(const GridPoint& p)
{
    char& slot = member_[index_of(p)];
    if (slot != 0) {
        return false;
    }
    slot = 1;
    ++size_;
    return true;
}

bool GridFamily::erase(const GridPoint& p)
{
    char& slot = member_[index_of(p)];
    if (slot == 0) {
        return false;
    }
    slot = 0;
    --size_;
    return true;
}

std::vector<GridPoint> GridFamily::points() const
{
    std::vector<GridPoint> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
        if (member_[i] != 0) {
            out.push_back(point_at(i));
        }
    }
    return out;
}

namespace {

bool dominates(const GridPoint& lower, const GridPoint& upper)
{
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] > upper[i]) {
            return false;
        }
    }
    return true;
}

int coordinate_sum(const GridPoint& p)
{
    return std::accumulate(p.begin(), p.end(), 0);
}

/// Twice the middle of the coordinate-sum range.
int twice_center(int m, int d, GridConvention c)
{
    return c == GridConvention::ZeroBased ? d * (m - 1) : d * (m + 1);
}

std::tuple<int, int, GridPoint> centered_rank(const GridPoint& p, int center2)
{
    const int s = coordinate_sum(p);
    return {std::abs(2 * s - center2), -s, p};
}

}  // namespace

BigInt grid_count_chains(const GridFamily& F, int k)
{
    if (k < 1) {
        throw DomainError("grid_count_chains: k must be positive");
    }
    // Sum-then-lex order is a linear extension: comparability only points forward.
    auto points = F.points();
    std::stable_sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
        return std::make_pair(coordinate_sum(a), a) < std::make_pair(coordinate_sum(b), b);
    });
    const std::size_t count = points.size();
    std::vector<BigInt> ending(count, BigInt(1));
    for (int t = 2; t <= k; ++t) {
        std::vector<BigInt> next(count, BigInt(0));
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (dominates(points[j], points[i])) {
                    next[i] += ending[j];
                }
            }
        }
        ending = std::move(next);
    }
    BigInt total = 0;
    for (const auto& v : ending) {
        total += v;
    }
    return total;
}

GridFamily m_centered_family(int m, int d, std::size_t Q, GridConvention convention)
{
    GridFamily out(m, d, convention);
    if (Q > out.volume()) {
        throw DomainError("m_centered_family: Q exceeds m^d");
    }
    const int center2 = twice_center(m, d, convention);
    std::vector<std::tuple<int, int, GridPoint>> ranked;
    ranked.reserve(out.volume());
    for (std::size_t i = 0; i < out.volume(); ++i) {
        ranked.push_back(centered_rank(out.point_at(i), center2));
    }
    std::sort(ranked.begin(), ranked.end());
    for (std::size_t i = 0; i < Q; ++i) {
        out.insert(std::get<2>(ranked[i]));
    }
    return out;
}

bool is_m_centered(const GridFamily& F)
{
    const int center2 = twice_center(F.m(), F.d(), F.convention());
    // Worst member against best non-member under (distance, larger sum first).
    std::pair<int, int> worstIn{-1, 0};
    std::pair<int, int> bestOut{1 << 30, 0};
    bool anyIn = false;
    bool anyOut = false;
    for (std::size_t i = 0; i < F.volume(); ++i) {
        const GridPoint p = F.point_at(i);
        const int s = coordinate_sum(p);
        const std::pair<int, int> key{std::abs(2 * s - center2), -s};
        if (F.contains(p)) {
            worstIn = anyIn ? std::max(worstIn, key) : key;
            anyIn = true;
        } else {
            bestOut = anyOut ? std::min(bestOut, key) : key;
            anyOut = true;
        }
    }
    return !anyIn || !anyOut || worstIn <= bestOut;
}

CounterexampleReport counterexample_check()
{
    CounterexampleReport report;
    const GridPoint removed{5, 6};
    const GridPoint added{10, 0};
    for (GridConvention c : {GridConvention::ZeroBased, GridConvention::OneBased}) {
        CounterexampleSide side;
        side.convention = c;
        GridFamily F(report.m, report.d, c);
        for (std::size_t i = 0; i < F.volume(); ++i) {
            const GridPoint p = F.point_at(i);
            if (std::abs(coordinate_sum(p) - 16) <= 5) {
                F.insert(p);
            }
        }
        side.sizeF = F.size();
        side.chainsF = grid_count_chains(F, report.k);
        side.representable = F.in_range(removed) && F.in_range(added) && F.contains(removed) && !F.contains(added);
        if (side.representable) {
            GridFamily G = F;
            G.erase(removed);
            G.insert(added);
            side.sizeFPrime = G.size();
            side.chainsFPrime = grid_count_chains(G, report.k);
            side.improves = side.chainsFPrime < side.chainsF;
        }
        report.confirmed = report.confirmed || side.improves;
        report.sides.push_back(std::move(side));
    }
    return report;
}

}  // namespace chainlattice
