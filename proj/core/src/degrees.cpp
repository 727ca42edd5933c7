#include "chainlattice/degrees.hpp"

#include <algorithm>

#include "chainlattice/errors.hpp"

namespace chainlattice {

LevelBounds level_bounds(int n, int j)
{
    if (n < 0 || j < 1 || j > n + 1) {
        throw DomainError("level_bounds: j must lie in [1, n+1]");
    }
    return {(n - j + 2) / 2, (n + j) / 2};
}

namespace {

LevelBounds require_vertex(int n, SubsetCode A, int j, int k)
{
    if (k < 1) {
        throw DomainError("degree: k must be positive");
    }
    require_envelope(n, "degree");
    const LevelBounds b = level_bounds(n, j);
    const int s = cardinality(A);
    if (A > full_set(n) || s < b.pMinus || s > b.pPlus) {
        throw DomainError("degree: vertex " + format_subset(A) + " is outside P_{n,j}");
    }
    return b;
}

// chains[t]: number of t-chains hanging strictly below `top` inside the cube
// of subsets of `top`, restricted to sizes >= floorSize.
std::vector<unsigned __int128> chains_below(SubsetCode top, int floorSize, int maxLength)
{
    std::vector<unsigned __int128> totals(static_cast<std::size_t>(maxLength) + 1, 0);
    totals[0] = 1;
    if (maxLength == 0) {
        return totals;
    }
    // Compact the cube of `top` to indices 0 .. 2^m - 1.
    std::vector<SubsetCode> bits;
    for (SubsetCode r = top; r != 0; r &= r - 1) {
        bits.push_back(r & (~r + 1));
    }
    const int m = static_cast<int>(bits.size());
    const std::size_t cube = std::size_t{1} << m;
    const std::size_t topIndex = cube - 1;
    // ending[x]: chains of the current length whose largest set is x (x != top).
    std::vector<unsigned __int128> ending(cube, 0);
    for (std::size_t x = 0; x < topIndex; ++x) {
        ending[x] = std::popcount(x) >= floorSize ? 1 : 0;
    }
    for (int t = 1;; ++t) {
        unsigned __int128 sum = 0;
        for (std::size_t x = 0; x < topIndex; ++x) {
            sum += ending[x];
        }
        totals[static_cast<std::size_t>(t)] = sum;
        if (t == maxLength) {
            break;
        }
        std::vector<unsigned __int128> next(cube, 0);
        for (std::size_t x = 0; x < topIndex; ++x) {
            if (std::popcount(x) < floorSize) {
                continue;
            }
            unsigned __int128 acc = 0;
            for (std::size_t y = (x - 1) & x;; y = (y - 1) & x) {
                acc += ending[y];
                if (y == 0) {
                    break;
                }
            }
            if (x != 0) {
                next[x] = acc;
            }
        }
        ending = std::move(next);
    }
    return totals;
}

BigInt to_big(unsigned __int128 v)
{
    BigInt out = BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    out <<= 64;
    out += BigInt(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return out;
}

// Sum over step vectors of the given length with sum <= limit of
// size_(sum) / prod a_i!.
BigInt anchored_count(int size, int length, int limit)
{
    BigInt total = 0;
    for (const auto& a : step_vectors(static_cast<std::size_t>(length), limit)) {
        BigInt term = falling_factorial(size, a.sum());
        for (int ai : a.entries()) {
            term /= factorial(ai);
        }
        total += term;
    }
    return total;
}

}  // namespace

BigInt degree_brute(int n, SubsetCode A, int j, int k)
{
    const LevelBounds b = require_vertex(n, A, j, k);
    const auto below = chains_below(A, b.pMinus, k - 1);
    // Supersets of A are complements of subsets of the complement of A.
    const auto above = chains_below(full_set(n) & ~A, n - b.pPlus, k - 1);
    unsigned __int128 total = 0;
    for (int q = 1; q <= k; ++q) {
        total += below[static_cast<std::size_t>(q - 1)] * above[static_cast<std::size_t>(k - q)];
    }
    return to_big(total);
}

BigInt degree_formula(int n, SubsetCode A, int j, int k)
{
    const LevelBounds b = require_vertex(n, A, j, k);
    const int s = cardinality(A);
    BigInt total = 0;
    for (int q = 1; q <= k; ++q) {
        total += anchored_count(s, q - 1, s - b.pMinus) * anchored_count(n - s, k - q, b.pPlus - s);
    }
    return total;
}

MaxDegree max_degree(int j, int k, int n)
{
    const LevelBounds b = level_bounds(n, j);
    MaxDegree best;
    bool first = true;
    for (int s = b.pMinus; s <= b.pPlus; ++s) {
        const SubsetCode vertex = full_set(s);
        BigInt value = degree_formula(n, vertex, j, k);
        if (first || value > best.delta) {
            best.delta = value;
            best.argmax = vertex;
            first = false;
        }
    }
    return best;
}

StepVector balanced_steps(int j, int k)
{
    if (k < 2 || j < k) {
        throw DomainError("balanced_steps: requires j >= k >= 2");
    }
    const int base = (j - 1) / (k - 1);
    const int extra = (j - 1) % (k - 1);
    std::vector<int> entries(static_cast<std::size_t>(k - 1), base);
    for (int i = 0; i < extra; ++i) {
        entries[static_cast<std::size_t>(k - 2 - i)] += 1;
    }
    return StepVector(std::move(entries));
}

DegreeSandwich degree_sandwich(int n, int j, int k)
{
    const StepVector a = balanced_steps(j, k);
    const LevelBounds b = level_bounds(n, j);
    DegreeSandwich out;
    out.lower = falling_factorial(b.pPlus, j - 1);
    for (int ai : a.entries()) {
        out.lower /= factorial(ai);
    }
    BigInt power = 1;
    for (int i = 0; i < k; ++i) {
        power *= n;
    }
    out.upper = power * out.lower;
    return out;
}

}  // namespace chainlattice
