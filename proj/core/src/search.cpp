#include "chainlattice/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "chainlattice/chains.hpp"
#include "chainlattice/errors.hpp"
#include "chainlattice/rng.hpp"
#include "chainlattice/scd.hpp"

namespace chainlattice {

const char* to_string(SearchMode mode)
{
    switch (mode) {
    case SearchMode::Exhaustive:
        return "exhaustive";
    case SearchMode::ExhaustiveCanonical:
        return "exhaustiveCanonical";
    case SearchMode::LocalSearch:
        return "localSearch";
    }
    return "?";
}

SearchMode parse_search_mode(const std::string& text)
{
    if (text == "exhaustive") {
        return SearchMode::Exhaustive;
    }
    if (text == "exhaustiveCanonical" || text == "canonical") {
        return SearchMode::ExhaustiveCanonical;
    }
    if (text == "localSearch" || text == "local") {
        return SearchMode::LocalSearch;
    }
    throw DomainError("unknown search mode '" + text + "'");
}

namespace {

// ---------------------------------------------------------------------------
// Families of P(n), n <= 5, as 2^n-bit masks over subset codes.

using Mask = std::uint32_t;

struct SmallLattice {
    int n;
    int universe;
    std::array<Mask, 32> strictSub{};
    std::array<Mask, 32> subsetOrSelf{};
    std::vector<std::array<std::uint8_t, 32>> perms;

    explicit SmallLattice(int size) : n(size), universe(1 << size)
    {
        for (int x = 0; x < universe; ++x) {
            for (int y = 0; y < universe; ++y) {
                if ((y & ~x) == 0) {
                    subsetOrSelf[static_cast<std::size_t>(x)] |= Mask{1} << y;
                    if (y != x) {
                        strictSub[static_cast<std::size_t>(x)] |= Mask{1} << y;
                    }
                }
            }
        }
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do {
            std::array<std::uint8_t, 32> image{};
            for (int code = 0; code < universe; ++code) {
                image[static_cast<std::size_t>(code)] =
                    static_cast<std::uint8_t>(permute_code(static_cast<SubsetCode>(code), p));
            }
            perms.push_back(image);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    Mask full_mask() const { return universe == 32 ? ~Mask{0} : ((Mask{1} << universe) - 1); }

    std::uint64_t count(Mask family, int k) const
    {
        if (k == 1) {
            return static_cast<std::uint64_t>(std::popcount(family));
        }
        if (k == 2) {
            std::uint64_t total = 0;
            for (Mask rest = family; rest != 0; rest &= rest - 1) {
                total += static_cast<std::uint64_t>(
                    std::popcount(family & strictSub[static_cast<std::size_t>(std::countr_zero(rest))]));
            }
            return total;
        }
        std::array<std::uint64_t, 32> ending{};
        for (Mask rest = family; rest != 0; rest &= rest - 1) {
            ending[static_cast<std::size_t>(std::countr_zero(rest))] = 1;
        }
        for (int t = 2; t <= k; ++t) {
            std::array<std::uint64_t, 32> next{};
            for (Mask rest = family; rest != 0; rest &= rest - 1) {
                const auto x = static_cast<std::size_t>(std::countr_zero(rest));
                std::uint64_t acc = 0;
                for (Mask below = family & strictSub[x]; below != 0; below &= below - 1) {
                    acc += ending[static_cast<std::size_t>(std::countr_zero(below))];
                }
                next[x] = acc;
            }
            ending = next;
        }
        std::uint64_t total = 0;
        for (Mask rest = family; rest != 0; rest &= rest - 1) {
            total += ending[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        return total;
    }

    Mask image(Mask family, const std::array<std::uint8_t, 32>& perm) const
    {
        Mask out = 0;
        for (Mask rest = family; rest != 0; rest &= rest - 1) {
            out |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(rest))];
        }
        return out;
    }

    Mask canonical(Mask family) const
    {
        Mask best = family;
        for (const auto& perm : perms) {
            best = std::min(best, image(family, perm));
        }
        return best;
    }

    Family to_family(Mask family) const
    {
        Family out(n);
        for (Mask rest = family; rest != 0; rest &= rest - 1) {
            out.insert(static_cast<SubsetCode>(std::countr_zero(rest)));
        }
        return out;
    }
};

/// Smallest `cap` canonical witnesses seen so far.
struct WitnessSet {
    std::size_t cap;
    std::set<Mask> items;

    void add(Mask canonical)
    {
        if (cap == 0) {
            return;
        }
        if (items.size() == cap && canonical >= *items.rbegin()) {
            return;
        }
        items.insert(canonical);
        if (items.size() > cap) {
            items.erase(std::prev(items.end()));
        }
    }
};

struct SweepEntry {
    std::uint64_t minValue = std::numeric_limits<std::uint64_t>::max();
    WitnessSet witnesses;
    std::uint64_t examined = 0;
};

void offer(const SmallLattice& lattice, SweepEntry& entry, Mask family, std::uint64_t value)
{
    if (value > entry.minValue) {
        return;
    }
    if (value < entry.minValue) {
        entry.minValue = value;
        entry.witnesses.items.clear();
    }
    entry.witnesses.add(lattice.canonical(family));
}

/// Minima for every M over all families of P(n), n <= 4.
std::vector<SweepEntry> sweep_small(int n, int k, std::size_t cap)
{
    const SmallLattice lattice(n);
    std::vector<SweepEntry> entries(static_cast<std::size_t>(lattice.universe) + 1);
    for (auto& e : entries) {
        e.witnesses.cap = cap;
    }
    const std::uint64_t total = std::uint64_t{1} << lattice.universe;
    for (std::uint64_t raw = 0; raw < total; ++raw) {
        const auto family = static_cast<Mask>(raw);
        auto& entry = entries[static_cast<std::size_t>(std::popcount(family))];
        ++entry.examined;
        offer(lattice, entry, family, lattice.count(family, k));
    }
    return entries;
}

/// Minimum for one M over all families of P(n), n <= 4, via fixed-popcount successors.
SweepEntry sweep_small_fixed(int n, int k, std::size_t M, std::size_t cap)
{
    const SmallLattice lattice(n);
    SweepEntry entry;
    entry.witnesses.cap = cap;
    if (M == 0) {
        entry.examined = 1;
        offer(lattice, entry, 0, 0);
        return entry;
    }
    const std::uint64_t limit = std::uint64_t{1} << lattice.universe;
    std::uint64_t family = (std::uint64_t{1} << M) - 1;
    while (family < limit) {
        ++entry.examined;
        offer(lattice, entry, static_cast<Mask>(family), lattice.count(static_cast<Mask>(family), k));
        const std::uint64_t lowest = family & (~family + 1);
        const std::uint64_t ripple = family + lowest;
        family = (((ripple ^ family) >> 2) / lowest) | ripple;
    }
    return entry;
}

/// n = 5, k = 2. A family splits into L (sets avoiding element 5) and H
/// (sets containing it, stored without 5). Only S_4-orbit representatives of L
/// are visited; every H is visited. c_2 = c_2(L) + c_2(H) + sum_{A in H} |L ∩ P(A)|.
std::vector<SweepEntry> sweep_five_pairs(std::size_t cap)
{
    const SmallLattice four(4);
    const SmallLattice five(5);
    constexpr std::uint32_t kHalves = 1u << 16;
    std::vector<std::uint32_t> pairs4(kHalves);
    for (std::uint32_t h = 0; h < kHalves; ++h) {
        pairs4[h] = static_cast<std::uint32_t>(four.count(h, 2));
    }
    std::vector<SweepEntry> entries(33);
    for (auto& e : entries) {
        e.witnesses.cap = cap;
    }
    std::array<std::uint32_t, 33> minima{};
    minima.fill(std::numeric_limits<std::uint32_t>::max());

    for (std::uint32_t low = 0; low < kHalves; ++low) {
        if (four.canonical(low) != low) {
            continue;
        }
        std::array<std::uint32_t, 16> below{};
        for (std::size_t a = 0; a < 16; ++a) {
            below[a] = static_cast<std::uint32_t>(std::popcount(low & four.subsetOrSelf[a]));
        }
        std::array<std::uint32_t, 256> crossLow{};
        std::array<std::uint32_t, 256> crossHigh{};
        for (std::uint32_t b = 1; b < 256; ++b) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(b));
            crossLow[b] = crossLow[b & (b - 1)] + below[bit];
            crossHigh[b] = crossHigh[b & (b - 1)] + below[bit + 8];
        }
        const std::uint32_t base = pairs4[low];
        const int lowSize = std::popcount(low);
        for (std::uint32_t high = 0; high < kHalves; ++high) {
            const std::uint32_t value = base + pairs4[high] + crossLow[high & 255u] + crossHigh[high >> 8];
            const auto M = static_cast<std::size_t>(lowSize + std::popcount(high));
            ++entries[M].examined;
            if (value <= minima[M]) {
                minima[M] = value;
                offer(five, entries[M], low | (high << 16), value);
            }
        }
    }
    return entries;
}

std::vector<Family> witness_families(const SmallLattice& lattice, const WitnessSet& set)
{
    std::vector<Family> out;
    for (Mask m : set.items) {
        out.push_back(lattice.to_family(m));
    }
    return out;
}

BigInt centered_value(int n, int k, std::size_t M)
{
    return count_k_chains(centered_family(n, M), k);
}

void require_config(const SearchConfig& c)
{
    if (c.n < 1 || c.k < 1) {
        throw DomainError("search: n and k must be positive");
    }
    require_envelope(c.n, "search");
    if (c.n < 31 && c.M > (std::size_t{1} << c.n)) {
        throw DomainError("search: M exceeds 2^n");
    }
}

SearchResult finish(const SearchConfig& c, std::uint64_t minValue, std::vector<Family> witnesses,
                    std::uint64_t examined, bool exhaustive)
{
    SearchResult r;
    r.minValue = BigInt(static_cast<unsigned long>(minValue));
    r.centeredValue = centered_value(c.n, c.k, c.M);
    r.conjectureHolds = !(r.minValue < r.centeredValue);
    r.witnesses = std::move(witnesses);
    r.exhaustive = exhaustive;
    r.familiesExamined = examined;
    return r;
}

// ---------------------------------------------------------------------------
// Degrees inside a family, used by local search.

/// totals[t]: number of t-chains among marked cube indices (t = 0 gives 1).
std::vector<std::uint64_t> chains_in_cube(const std::vector<char>& marked, int maxLength)
{
    std::vector<std::uint64_t> totals(static_cast<std::size_t>(maxLength) + 1, 0);
    totals[0] = 1;
    if (maxLength == 0) {
        return totals;
    }
    const std::size_t cube = marked.size();
    std::vector<std::uint64_t> ending(cube, 0);
    for (std::size_t x = 0; x < cube; ++x) {
        ending[x] = marked[x] ? 1 : 0;
    }
    for (int t = 1;; ++t) {
        totals[static_cast<std::size_t>(t)] = std::accumulate(ending.begin(), ending.end(), std::uint64_t{0});
        if (t == maxLength) {
            break;
        }
        std::vector<std::uint64_t> next(cube, 0);
        for (std::size_t x = 1; x < cube; ++x) {
            if (!marked[x]) {
                continue;
            }
            std::uint64_t acc = 0;
            for (std::size_t y = (x - 1) & x;; y = (y - 1) & x) {
                acc += ending[y];
                if (y == 0) {
                    break;
                }
            }
            next[x] = acc;
        }
        ending = std::move(next);
    }
    return totals;
}

}  // namespace

std::uint64_t chain_degree(const Family& F, SubsetCode X, int k)
{
    if (k < 1) {
        throw DomainError("chain_degree: k must be positive");
    }
    const int n = F.n();
    if (X > full_set(n)) {
        throw DomainError("chain_degree: set outside P(n)");
    }
    const SubsetCode comp = full_set(n) & ~X;
    auto deposit = [](SubsetCode pattern, std::size_t index) {
        SubsetCode out = 0;
        int i = 0;
        for (SubsetCode r = pattern; r != 0; r &= r - 1, ++i) {
            if ((index >> i) & 1u) {
                out |= r & (~r + 1);
            }
        }
        return out;
    };
    const std::size_t downCube = std::size_t{1} << cardinality(X);
    const std::size_t upCube = std::size_t{1} << cardinality(comp);
    if (k == 2) {
        std::uint64_t count = 0;
        for (std::size_t x = 0; x + 1 < downCube; ++x) {
            count += F.contains(deposit(X, x)) ? 1 : 0;
        }
        for (std::size_t y = 1; y < upCube; ++y) {
            count += F.contains(X | deposit(comp, y)) ? 1 : 0;
        }
        return count;
    }
    std::vector<char> down(downCube, 0);
    for (std::size_t x = 0; x + 1 < downCube; ++x) {
        down[x] = F.contains(deposit(X, x)) ? 1 : 0;
    }
    std::vector<char> up(upCube, 0);
    for (std::size_t y = 1; y < upCube; ++y) {
        up[y] = F.contains(X | deposit(comp, y)) ? 1 : 0;
    }
    const auto below = chains_in_cube(down, k - 1);
    const auto above = chains_in_cube(up, k - 1);
    std::uint64_t total = 0;
    for (int q = 1; q <= k; ++q) {
        total += below[static_cast<std::size_t>(q - 1)] * above[static_cast<std::size_t>(k - q)];
    }
    return total;
}

Family canonical_form(const Family& F)
{
    const int n = F.n();
    if (n > 8) {
        throw ResourceError("canonical_form: n! permutations are limited to n <= 8");
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const auto codes = F.codes();
    Family best = F;
    auto greater_than = [](const Family& a, const Family& b) {
        const auto wa = a.words();
        const auto wb = b.words();
        for (std::size_t i = wa.size(); i-- > 0;) {
            if (wa[i] != wb[i]) {
                return wa[i] > wb[i];
            }
        }
        return false;
    };
    do {
        Family image(n);
        for (SubsetCode c : codes) {
            image.insert(permute_code(c, perm));
        }
        if (greater_than(best, image)) {
            best = std::move(image);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

SearchResult ck_min(const SearchConfig& config)
{
    require_config(config);
    if (config.mode == SearchMode::LocalSearch) {
        return local_search(config);
    }
    if (config.n <= 4) {
        const SmallLattice lattice(config.n);
        const SweepEntry e = sweep_small_fixed(config.n, config.k, config.M, config.witnessCap);
        return finish(config, e.minValue, witness_families(lattice, e.witnesses), e.examined, true);
    }
    if (config.n == 5 && config.mode == SearchMode::ExhaustiveCanonical) {
        if (config.k != 2) {
            throw ResourceError("search: the n = 5 canonical sweep supports k = 2 only");
        }
        const auto entries = sweep_five_pairs(config.witnessCap);
        const SweepEntry& e = entries[config.M];
        return finish(config, e.minValue, witness_families(SmallLattice(5), e.witnesses), e.examined, true);
    }
    throw ResourceError("search: exhaustive enumeration is limited to n <= 4 (n = 5, k = 2 with mode "
                        "exhaustiveCanonical); use localSearch");
}

VerifyReport verify_conjecture_range(int n, int k, std::size_t witnessCap)
{
    if (n < 1 || k < 1) {
        throw DomainError("verify: n and k must be positive");
    }
    VerifyReport report;
    report.n = n;
    report.k = k;
    std::vector<SweepEntry> entries;
    if (n <= 4) {
        entries = sweep_small(n, k, witnessCap);
    } else if (n == 5 && k == 2) {
        report.mode = SearchMode::ExhaustiveCanonical;
        entries = sweep_five_pairs(witnessCap);
    } else {
        throw ResourceError("verify: exhaustive range verification is limited to n <= 4, or n = 5 with k = 2");
    }
    const SmallLattice lattice(n);
    for (std::size_t M = 0; M < entries.size(); ++M) {
        VerifyRow row;
        row.M = M;
        row.minValue = BigInt(static_cast<unsigned long>(entries[M].minValue));
        row.centeredValue = centered_value(n, k, M);
        row.holds = row.minValue == row.centeredValue;
        row.witnesses = witness_families(lattice, entries[M].witnesses);
        report.allHold = report.allHold && row.holds;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::uint64_t kleitman_pairs_value(int n, std::uint64_t x)
{
    if (n < 0 || n > 62) {
        throw DomainError("kleitman_pairs_value: n out of range");
    }
    const std::uint64_t N = binomial(n, n / 2);
    if (n + 1 < 2 || N + x > sigma(n, std::min(2, n + 1))) {
        throw DomainError("kleitman_pairs_value: requires binom(n, n/2) + x <= Sigma(n, 2)");
    }
    return x * static_cast<std::uint64_t>(1 + n / 2);
}

// ---------------------------------------------------------------------------
// Local search

namespace {

struct RestartOutcome {
    std::uint64_t value = 0;
    Family family;
    std::uint64_t moves = 0;
};

RestartOutcome run_restart(const SearchConfig& c, std::uint64_t index, std::uint64_t moves)
{
    Rng rng = make_stream(c.seed, index);
    const auto universe = static_cast<std::size_t>(std::uint64_t{1} << c.n);
    std::vector<SubsetCode> order(universe);
    std::iota(order.begin(), order.end(), SubsetCode{0});
    shuffle_in_place(rng, std::span<SubsetCode>(order));
    std::vector<SubsetCode> members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c.M));
    std::vector<SubsetCode> outside(order.begin() + static_cast<std::ptrdiff_t>(c.M), order.end());
    std::sort(members.begin(), members.end());
    std::sort(outside.begin(), outside.end());
    Family F = Family::from_codes(c.n, members);

    std::uint64_t value = count_k_chains(F, c.k).get_ui();
    RestartOutcome best{value, F, 0};
    if (members.empty() || outside.empty()) {
        return best;
    }
    std::deque<SubsetCode> tabu;
    auto is_tabu = [&](SubsetCode s) { return std::find(tabu.begin(), tabu.end(), s) != tabu.end(); };
    std::uint64_t accepted = 0;
    for (std::uint64_t step = 0; step < moves; ++step) {
        const auto i = static_cast<std::size_t>(uniform_below(rng, members.size()));
        const auto j = static_cast<std::size_t>(uniform_below(rng, outside.size()));
        const SubsetCode A = members[i];
        const SubsetCode B = outside[j];
        if (is_tabu(A) || is_tabu(B)) {
            continue;
        }
        const std::uint64_t lost = chain_degree(F, A, c.k);
        F.erase(A);
        const std::uint64_t gained = chain_degree(F, B, c.k);
        if (gained > lost) {
            F.insert(A);
            continue;
        }
        F.insert(B);
        members[i] = B;
        outside[j] = A;
        value = value - lost + gained;
        for (SubsetCode s : {A, B}) {
            tabu.push_back(s);
            if (tabu.size() > static_cast<std::size_t>(std::max(c.tabu, 0))) {
                tabu.pop_front();
            }
        }
        ++accepted;
        if (accepted % 1000 == 0 && count_k_chains(F, c.k).get_ui() != value) {
            throw std::logic_error("local search: incremental chain count diverged from recount");
        }
        if (value < best.value) {
            best.value = value;
            best.family = F;
        }
    }
    best.moves = accepted;
    return best;
}

}  // namespace

SearchResult local_search(const SearchConfig& config)
{
    require_config(config);
    if (config.n > 16) {
        throw ResourceError("local search: supported for n <= 16");
    }
    // c_k <= (k+1)^n must fit the 64-bit incremental counter.
    if (static_cast<double>(config.n) * std::log2(static_cast<double>(config.k) + 1.0) >= 63.0) {
        throw ResourceError("local search: chain counts may exceed 64 bits");
    }
    const std::uint64_t runs = std::max<std::uint64_t>(config.restarts, 1);
    const std::uint64_t moves = config.restarts == 0 ? 0 : config.movesPerRestart;
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(runs));

    const int threads = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(config.workers, 1)), 1, runs));
    auto work = [&](int worker) {
        for (std::uint64_t r = static_cast<std::uint64_t>(worker); r < runs; r += static_cast<std::uint64_t>(threads)) {
            outcomes[static_cast<std::size_t>(r)] = run_restart(config, r, moves);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    std::uint64_t bestValue = std::numeric_limits<std::uint64_t>::max();
    for (const auto& o : outcomes) {
        bestValue = std::min(bestValue, o.value);
    }
    std::vector<Family> witnesses;
    for (const auto& o : outcomes) {
        if (o.value != bestValue || witnesses.size() >= config.witnessCap) {
            continue;
        }
        Family w = config.n <= 8 ? canonical_form(o.family) : o.family;
        if (std::find(witnesses.begin(), witnesses.end(), w) == witnesses.end()) {
            witnesses.push_back(std::move(w));
        }
    }
    SearchResult r = finish(config, bestValue, std::move(witnesses), runs, false);
    return r;
}

}  // namespace chainlattice
