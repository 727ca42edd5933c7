#include "chainlattice/scd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include "chainlattice/errors.hpp"
#include "chainlattice/rng.hpp"

namespace chainlattice {

SymmetricChainDecomposition::SymmetricChainDecomposition(int n, std::vector<std::vector<SubsetCode>> chains)
    : n_(n), chains_(std::move(chains))
{
    require_envelope(n, "SCD");
    const std::uint64_t universe = std::uint64_t{1} << n;
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    index_.assign(universe, kUnset);
    for (std::size_t id = 0; id < chains_.size(); ++id) {
        const auto& chain = chains_[id];
        if (chain.empty()) {
            throw DomainError("SCD: empty chain");
        }
        const int bottom = cardinality(chain.front());
        const int top = cardinality(chain.back());
        if (bottom + top != n) {
            throw DomainError("SCD: chain " + std::to_string(id) + " is not symmetric");
        }
        for (std::size_t i = 0; i < chain.size(); ++i) {
            const SubsetCode c = chain[i];
            if (c >= universe) {
                throw DomainError("SCD: set outside P(n)");
            }
            if (i > 0 && ((chain[i - 1] & ~c) != 0 || cardinality(c) != cardinality(chain[i - 1]) + 1)) {
                throw DomainError("SCD: chain " + std::to_string(id) + " is not skipless");
            }
            if (index_[c] != kUnset) {
                throw DomainError("SCD: chains overlap");
            }
            index_[c] = static_cast<std::uint32_t>(id);
        }
    }
    if (std::find(index_.begin(), index_.end(), kUnset) != index_.end()) {
        throw DomainError("SCD: chains do not cover P(n)");
    }
    if (chains_.size() != binomial(n, n / 2)) {
        throw DomainError("SCD: wrong number of chains");
    }
}

namespace {

struct Bracketing {
    SubsetCode matchedMembers = 0;
    std::array<int, 32> unmatched{};
    int unmatchedCount = 0;
};

Bracketing bracket(int n, SubsetCode A)
{
    Bracketing b;
    std::array<int, 32> open{};
    int depth = 0;
    for (int pos = 0; pos < n; ++pos) {
        if ((A >> pos) & 1u) {
            if (depth > 0) {
                --depth;
                b.matchedMembers |= SubsetCode{1} << pos;
            } else {
                b.unmatched[static_cast<std::size_t>(b.unmatchedCount++)] = pos;
            }
        } else {
            open[static_cast<std::size_t>(depth++)] = pos;
        }
    }
    // Remaining open brackets follow every unmatched ')'.
    for (int i = 0; i < depth; ++i) {
        b.unmatched[static_cast<std::size_t>(b.unmatchedCount++)] = open[static_cast<std::size_t>(i)];
    }
    return b;
}

void require_scd_range(int n, const char* what)
{
    if (n < 1) {
        throw DomainError(std::string(what) + ": n must be at least 1");
    }
    require_envelope(n, what);
}

}  // namespace

SubsetCode dbtk_bottom(int n, SubsetCode A)
{
    return bracket(n, A).matchedMembers;
}

Chain chain_through(int n, SubsetCode A)
{
    if (n < 0 || n > 31 || (n < 32 && A >= (std::uint64_t{1} << n))) {
        throw DomainError("chain_through: code outside P(n)");
    }
    const Bracketing b = bracket(n, A);
    std::vector<SubsetCode> sets;
    sets.reserve(static_cast<std::size_t>(b.unmatchedCount) + 1);
    SubsetCode current = b.matchedMembers;
    sets.push_back(current);
    for (int i = 0; i < b.unmatchedCount; ++i) {
        current |= SubsetCode{1} << b.unmatched[static_cast<std::size_t>(i)];
        sets.push_back(current);
    }
    return Chain(n, std::move(sets));
}

SCD dbtk_scd(int n)
{
    require_scd_range(n, "dbtk_scd");
    const std::uint64_t universe = std::uint64_t{1} << n;
    std::vector<std::vector<SubsetCode>> chains;
    chains.reserve(binomial(n, n / 2));
    for (std::uint64_t code = 0; code < universe; ++code) {
        const auto A = static_cast<SubsetCode>(code);
        if (dbtk_bottom(n, A) == A) {
            const Chain c = chain_through(n, A);
            chains.emplace_back(c.sets().begin(), c.sets().end());
        }
    }
    return SCD(n, std::move(chains));
}

bool contains_chain(const SCD& X, const Chain& c)
{
    if (X.n() != c.n()) {
        throw DomainError("contains_chain: ground-set sizes differ");
    }
    const std::uint32_t id = X.chain_of(c.bottom());
    return std::all_of(c.sets().begin(), c.sets().end(), [&](SubsetCode s) { return X.chain_of(s) == id; });
}

SubsetCode permute_code(SubsetCode code, std::span<const int> perm)
{
    SubsetCode out = 0;
    for (SubsetCode rest = code; rest != 0; rest &= rest - 1) {
        out |= SubsetCode{1} << perm[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    return out;
}

namespace {

void require_permutation(int n, std::span<const int> perm)
{
    if (perm.size() != static_cast<std::size_t>(n)) {
        throw DomainError("permutation has the wrong length");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
            throw DomainError("not a permutation of the ground set");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
}

}  // namespace

SCD permuted_scd(const SCD& X, std::span<const int> perm)
{
    require_permutation(X.n(), perm);
    std::vector<std::vector<SubsetCode>> chains;
    chains.reserve(X.chain_count());
    for (const auto& chain : X.chains()) {
        std::vector<SubsetCode> image;
        image.reserve(chain.size());
        for (SubsetCode c : chain) {
            image.push_back(permute_code(c, perm));
        }
        chains.push_back(std::move(image));
    }
    return SCD(X.n(), std::move(chains));
}

SCD sample_scd(int n, std::uint64_t seed)
{
    Rng rng = make_stream(seed, 0);
    const auto perm = random_permutation(rng, n);
    return permuted_scd(dbtk_scd(n), perm);
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace {

struct ScdSearch {
    int n;
    const std::function<void(const SCD&)>& visit;
    std::uint32_t covered = 0;
    std::uint32_t all = 0;
    std::vector<std::vector<SubsetCode>> chains;
    std::vector<SubsetCode> path;

    void place()
    {
        if (covered == all) {
            visit(SCD(n, chains));
            return;
        }
        // The lowest uncovered set must start its chain.
        SubsetCode start = 0;
        int startSize = n + 1;
        for (SubsetCode c = 0; c <= full_set(n); ++c) {
            if ((covered >> c & 1u) == 0 && cardinality(c) < startSize) {
                start = c;
                startSize = cardinality(c);
            }
        }
        if (2 * startSize > n) {
            return;
        }
        path.assign(1, start);
        covered |= 1u << start;
        grow(n - startSize);
        covered &= ~(1u << start);
    }

    void grow(int topSize)
    {
        const SubsetCode last = path.back();
        if (cardinality(last) == topSize) {
            chains.push_back(path);
            const std::vector<SubsetCode> saved = path;
            place();
            path = saved;
            chains.pop_back();
            return;
        }
        for (int e = 0; e < n; ++e) {
            const SubsetCode next = last | (SubsetCode{1} << e);
            if (next == last || ((covered >> next) & 1u) != 0) {
                continue;
            }
            covered |= 1u << next;
            path.push_back(next);
            grow(topSize);
            path.pop_back();
            covered &= ~(1u << next);
        }
    }
};

}  // namespace

void for_each_scd(int n, const std::function<void(const SCD&)>& visit)
{
    if (n < 1) {
        throw DomainError("enumerate_all_scds: n must be at least 1");
    }
    if (n > 4) {
        throw ResourceError("enumerate_all_scds: exhaustive enumeration is limited to n <= 4");
    }
    ScdSearch search{n, visit, 0, 0, {}, {}};
    search.all = static_cast<std::uint32_t>((std::uint64_t{1} << (std::uint64_t{1} << n)) - 1);
    search.place();
}

std::vector<SCD> enumerate_all_scds(int n)
{
    std::vector<SCD> out;
    for_each_scd(n, [&](const SCD& x) { out.push_back(x); });
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo

McWeight mc_weight(const Chain& c, std::uint64_t trials, std::uint64_t seed, int workers)
{
    if (trials == 0) {
        throw DomainError("mc_weight: trials must be positive");
    }
    const int n = c.n();
    require_scd_range(n, "mc_weight");

    std::vector<SubsetCode> bottoms;
    if (n <= 20) {
        bottoms.resize(std::size_t{1} << n);
        for (std::size_t code = 0; code < bottoms.size(); ++code) {
            bottoms[code] = dbtk_bottom(n, static_cast<SubsetCode>(code));
        }
    }
    auto bottom_of = [&](SubsetCode code) { return bottoms.empty() ? dbtk_bottom(n, code) : bottoms[code]; };

    constexpr std::uint64_t kBlock = 1 << 16;
    const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
    const std::vector<SubsetCode> sets(c.sets().begin(), c.sets().end());

    auto run_block = [&](std::uint64_t block) {
        Rng rng = make_stream(seed, block);
        const std::uint64_t begin = block * kBlock;
        const std::uint64_t count = std::min(kBlock, trials - begin);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::vector<int> inverse(static_cast<std::size_t>(n));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            for (int i = 0; i < n; ++i) {
                perm[static_cast<std::size_t>(i)] = i;
            }
            shuffle_in_place(rng, std::span<int>(perm));
            for (int i = 0; i < n; ++i) {
                inverse[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
            }
            // c lies in perm(X) iff perm^{-1}(c) lies in X.
            const SubsetCode first = bottom_of(permute_code(sets.front(), inverse));
            bool inside = true;
            for (std::size_t i = 1; i < sets.size() && inside; ++i) {
                inside = bottom_of(permute_code(sets[i], inverse)) == first;
            }
            hits += inside ? 1 : 0;
        }
        return hits;
    };

    const int threads = std::max(1, std::min<int>(workers, static_cast<int>(blocks)));
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(threads), 0);
    if (threads == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            partial[0] += run_block(b);
        }
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = static_cast<std::uint64_t>(w); b < blocks;
                     b += static_cast<std::uint64_t>(threads)) {
                    partial[static_cast<std::size_t>(w)] += run_block(b);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    McWeight out;
    out.trials = trials;
    for (auto h : partial) {
        out.hits += h;
    }
    out.frequency = Rational(BigInt(static_cast<unsigned long>(out.hits)), BigInt(static_cast<unsigned long>(trials)));
    out.frequency.canonicalize();
    const double f = static_cast<double>(out.hits) / static_cast<double>(trials);
    out.standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
    return out;
}

}  // namespace chainlattice
