#include "chainlattice/chains.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>

#include "chainlattice/errors.hpp"

namespace chainlattice {

const char* to_string(Direction d)
{
    return d == Direction::Down ? "down" : "up";
}

// ---------------------------------------------------------------------------
// StepVector

StepVector::StepVector(std::vector<int> entries) : entries_(std::move(entries))
{
    for (int e : entries_) {
        if (e < 1) {
            throw DomainError("StepVector: entries must be positive");
        }
    }
}

StepVector StepVector::ones(std::size_t length)
{
    return StepVector(std::vector<int>(length, 1));
}

int StepVector::sum() const
{
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool StepVector::dominated_by(const StepVector& other) const
{
    if (size() != other.size()) {
        return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (entries_[i] > other.entries_[i]) {
            return false;
        }
    }
    return true;
}

std::string StepVector::str() const
{
    if (entries_.empty()) {
        return "()";
    }
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += std::to_string(entries_[i]);
    }
    return out;
}

StepVector StepVector::parse(std::string_view text)
{
    std::vector<int> entries;
    if (text == "()" || text.empty()) {
        return StepVector{};
    }
    while (true) {
        const auto comma = text.find(',');
        std::string_view token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size() || value < 1) {
            throw ParseError("invalid step size '" + std::string(token) + "'");
        }
        entries.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return StepVector(std::move(entries));
}

std::vector<StepVector> step_vectors(std::size_t length, int maxSum)
{
    std::vector<StepVector> out;
    if (maxSum < static_cast<int>(length)) {
        return out;
    }
    std::vector<int> current(length, 1);
    for (int total = static_cast<int>(length); total <= maxSum; ++total) {
        // Compositions of `total` into `length` positive parts, lexicographic.
        std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
            if (pos + 1 == length) {
                current[pos] = remaining;
                out.emplace_back(current);
                return;
            }
            const int slots = static_cast<int>(length - pos - 1);
            for (int v = 1; v <= remaining - slots; ++v) {
                current[pos] = v;
                rec(pos + 1, remaining - v);
            }
        };
        if (length == 0) {
            if (total == 0) {
                out.emplace_back();
            }
            continue;
        }
        rec(0, total);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chain

Chain::Chain(int n, std::vector<SubsetCode> sets) : n_(n), sets_(std::move(sets))
{
    if (n < 0 || n > 31) {
        throw DomainError("Chain: ground-set size out of range");
    }
    if (sets_.empty()) {
        throw DomainError("Chain: a chain needs at least one set");
    }
    const std::uint64_t universe = std::uint64_t{1} << n;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i] >= universe) {
            throw DomainError("Chain: set outside P(" + std::to_string(n) + ")");
        }
        if (i > 0) {
            const SubsetCode lo = sets_[i - 1];
            const SubsetCode hi = sets_[i];
            if ((lo & ~hi) != 0 || lo == hi) {
                throw DomainError("Chain: sets are not strictly nested");
            }
        }
    }
}

StepVector Chain::steps() const
{
    std::vector<int> out;
    out.reserve(sets_.size() - 1);
    for (std::size_t i = 1; i < sets_.size(); ++i) {
        out.push_back(cardinality(sets_[i] & ~sets_[i - 1]));
    }
    return StepVector(std::move(out));
}

int Chain::height() const
{
    return cardinality(top() & ~bottom());
}

LevelDistance Chain::distance() const
{
    return std::max(LevelDistance::of(n_, cardinality(top())), LevelDistance::of(n_, cardinality(bottom())));
}

Direction Chain::direction() const
{
    return LevelDistance::of(n_, cardinality(top())) >= LevelDistance::of(n_, cardinality(bottom()))
               ? Direction::Down
               : Direction::Up;
}

bool Chain::inside(const Family& F) const
{
    return std::all_of(sets_.begin(), sets_.end(), [&](SubsetCode c) { return F.contains(c); });
}

std::string Chain::str() const
{
    std::string out;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i != 0) {
            out += " < ";
        }
        out += format_subset(sets_[i]);
    }
    return out;
}

Chain Chain::parse(std::string_view text, int n)
{
    std::vector<SubsetCode> sets;
    while (true) {
        const auto lt = text.find('<');
        sets.push_back(parse_subset(text.substr(0, lt), n));
        if (lt == std::string_view::npos) {
            break;
        }
        text.remove_prefix(lt + 1);
    }
    try {
        return Chain(n, std::move(sets));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

ChainStats chain_stats(const Chain& c)
{
    return ChainStats{c.steps(), c.height(), c.distance(), c.direction()};
}

// ---------------------------------------------------------------------------
// Weights

namespace {

std::vector<int> sizes_of(std::span<const SubsetCode> sets)
{
    std::vector<int> sizes(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        sizes[i] = cardinality(sets[i]);
    }
    return sizes;
}

Direction direction_of_sizes(int n, std::span<const int> sizes)
{
    return LevelDistance::of(n, sizes.back()) >= LevelDistance::of(n, sizes.front()) ? Direction::Down
                                                                                     : Direction::Up;
}

Rational weight_with(int n, std::span<const int> sizes, Direction orientation)
{
    BigInt denominator = 1;
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        if (orientation == Direction::Down) {
            denominator *= big_binomial(sizes[i], sizes[i - 1]);
        } else {
            denominator *= big_binomial(n - sizes[i - 1], n - sizes[i]);
        }
    }
    Rational w(BigInt(1), denominator);
    w.canonicalize();
    return w;
}

const std::array<std::uint64_t, 21>& factorials_u64()
{
    static const auto table = [] {
        std::array<std::uint64_t, 21> t{};
        t[0] = 1;
        for (std::size_t i = 1; i < t.size(); ++i) {
            t[i] = t[i - 1] * i;
        }
        return t;
    }();
    return table;
}

}  // namespace

Rational weight_of_sizes(int n, std::span<const int> sizes)
{
    if (sizes.empty()) {
        throw DomainError("weight: empty chain");
    }
    return weight_with(n, sizes, direction_of_sizes(n, sizes));
}

Rational weight(const Chain& c)
{
    const auto sizes = sizes_of(c.sets());
    return weight_with(c.n(), sizes, c.direction());
}

Rational weight_as(const Chain& c, Direction orientation)
{
    const auto sizes = sizes_of(c.sets());
    return weight_with(c.n(), sizes, orientation);
}

std::uint64_t scaled_weight(int n, std::span<const int> sizes)
{
    if (n > 20) {
        throw DomainError("scaled_weight: n! exceeds 64 bits for n > 20");
    }
    const auto& fact = factorials_u64();
    std::uint64_t product = 1;
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        product *= fact[static_cast<std::size_t>(sizes[i] - sizes[i - 1])];
    }
    // Downward: n!/|A_l|! * |A_1|! * prod a_i!; upward mirrors through complements.
    const bool down = direction_of_sizes(n, sizes) == Direction::Down;
    const int outer = down ? sizes.back() : n - sizes.front();
    const int inner = down ? sizes.front() : n - sizes.back();
    return fact[static_cast<std::size_t>(n)] / fact[static_cast<std::size_t>(outer)] *
           fact[static_cast<std::size_t>(inner)] * product;
}

// ---------------------------------------------------------------------------
// Counting

namespace {

template <class T>
T count_with(const Family& F, int k)
{
    const std::size_t universe = static_cast<std::size_t>(F.universe());
    const int n = F.n();
    std::vector<T> ending(universe, T(0));
    F.for_each([&](SubsetCode c) { ending[c] = T(1); });
    std::vector<T> below(universe);
    for (int j = 1; j < k; ++j) {
        below = ending;
        for (int bit = 0; bit < n; ++bit) {
            const std::size_t mask = std::size_t{1} << bit;
            for (std::size_t s = 0; s < universe; ++s) {
                if ((s & mask) != 0) {
                    below[s] += below[s ^ mask];
                }
            }
        }
        for (std::size_t s = 0; s < universe; ++s) {
            ending[s] = F.contains(static_cast<SubsetCode>(s)) ? T(below[s] - ending[s]) : T(0);
        }
    }
    T total(0);
    for (const T& v : ending) {
        total += v;
    }
    return total;
}

BigInt to_big(unsigned __int128 v)
{
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    BigInt out = hi;
    out <<= 64;
    out += BigInt(static_cast<unsigned long>(lo));
    return out;
}

}  // namespace

BigInt count_k_chains(const Family& F, int k)
{
    if (k < 1) {
        throw DomainError("count_k_chains: k must be positive");
    }
    const int n = F.n();
    if (k > n + 1 || F.size() < static_cast<std::size_t>(k)) {
        return 0;
    }
    // Every intermediate value is bounded by the number of chains of P(n) of
    // the current length, at most (k+1)^n.
    const double bits = n * std::log2(static_cast<double>(k + 1));
    if (bits < 63.0) {
        return BigInt(static_cast<unsigned long>(count_with<std::uint64_t>(F, k)));
    }
    if (bits < 127.0) {
        return to_big(count_with<unsigned __int128>(F, k));
    }
    return count_with<BigInt>(F, k);
}

// ---------------------------------------------------------------------------
// Chain order

std::vector<CenteredOrderKey> chain_order_key(int n, std::span<const SubsetCode> sets)
{
    std::vector<CenteredOrderKey> keys;
    keys.reserve(sets.size());
    for (SubsetCode c : sets) {
        keys.push_back(centered_key(n, c));
    }
    std::sort(keys.begin(), keys.end(), std::greater<>{});
    return keys;
}

bool centered_chain_less(int n, std::span<const SubsetCode> a, std::span<const SubsetCode> b)
{
    return chain_order_key(n, a) < chain_order_key(n, b);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

/// Calls fn(extra) for every subset `extra` of `free` with exactly `count` elements.
template <class Fn>
void for_each_subset_of_size(SubsetCode free, int count, Fn&& fn)
{
    std::array<SubsetCode, 32> bits{};
    int m = 0;
    for (SubsetCode f = free; f != 0; f &= f - 1) {
        bits[static_cast<std::size_t>(m++)] = f & (~f + 1);
    }
    if (count > m || count < 0) {
        return;
    }
    if (count == 0) {
        fn(SubsetCode{0});
        return;
    }
    // Gosper's hack over m-bit index masks.
    std::uint64_t index = (std::uint64_t{1} << count) - 1;
    const std::uint64_t limit = std::uint64_t{1} << m;
    while (index < limit) {
        SubsetCode extra = 0;
        for (std::uint64_t r = index; r != 0; r &= r - 1) {
            extra |= bits[static_cast<std::size_t>(std::countr_zero(r))];
        }
        fn(extra);
        const std::uint64_t lowest = index & (~index + 1);
        const std::uint64_t ripple = index + lowest;
        index = (((ripple ^ index) >> 2) / lowest) | ripple;
    }
}

struct Walker {
    const Family& F;
    std::span<const int> steps;
    bool exact;
    const ChainVisitor& visit;
    std::vector<SubsetCode> current;
    SubsetCode fullMask;

    void extend(std::size_t depth)
    {
        if (depth == steps.size()) {
            visit(current);
            return;
        }
        const SubsetCode last = current.back();
        const SubsetCode free = fullMask & ~last;
        const int available = cardinality(free);
        int needAfter = 0;
        for (std::size_t i = depth + 1; i < steps.size(); ++i) {
            needAfter += steps[i];
        }
        const int lo = steps[depth];
        const int hi = exact ? lo : available - needAfter;
        for (int t = lo; t <= hi; ++t) {
            for_each_subset_of_size(free, t, [&](SubsetCode extra) {
                const SubsetCode next = last | extra;
                if (F.contains(next)) {
                    current.push_back(next);
                    extend(depth + 1);
                    current.pop_back();
                }
            });
        }
    }
};

void walk(const Family& F, std::span<const int> steps, bool exact, const ChainVisitor& visit)
{
    int total = 0;
    for (int s : steps) {
        total += s;
    }
    if (total > F.n()) {
        return;
    }
    Walker w{F, steps, exact, visit, {}, full_set(F.n())};
    w.current.reserve(steps.size() + 1);
    F.for_each([&](SubsetCode start) {
        if (cardinality(start) + total > F.n()) {
            return;
        }
        w.current.assign(1, start);
        w.extend(0);
    });
}

}  // namespace

void for_each_phi_star(const Family& F, const StepVector& a, const ChainVisitor& visit)
{
    walk(F, a.entries(), true, visit);
}

void for_each_phi(const Family& F, const StepVector& a, const ChainVisitor& visit)
{
    walk(F, a.entries(), false, visit);
}

void for_each_k_chain(const Family& F, int k, const ChainVisitor& visit)
{
    if (k < 1) {
        throw DomainError("for_each_k_chain: k must be positive");
    }
    const std::vector<int> ones(static_cast<std::size_t>(k - 1), 1);
    walk(F, ones, false, visit);
}

namespace {

std::vector<Chain> sorted_chains(int n, std::vector<Chain> chains)
{
    std::vector<std::pair<std::vector<CenteredOrderKey>, std::size_t>> keyed;
    keyed.reserve(chains.size());
    for (std::size_t i = 0; i < chains.size(); ++i) {
        keyed.emplace_back(chain_order_key(n, chains[i].sets()), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Chain> out;
    out.reserve(chains.size());
    for (const auto& [key, index] : keyed) {
        out.push_back(std::move(chains[index]));
    }
    return out;
}

}  // namespace

std::vector<Chain> enumerate_phi_star(const Family& F, const StepVector& a)
{
    std::vector<Chain> chains;
    for_each_phi_star(F, a, [&](std::span<const SubsetCode> sets) {
        chains.emplace_back(F.n(), std::vector<SubsetCode>(sets.begin(), sets.end()));
    });
    return sorted_chains(F.n(), std::move(chains));
}

std::vector<Chain> enumerate_phi(const Family& F, const StepVector& a)
{
    std::vector<std::pair<StepVector, std::vector<Chain>>> groups;
    std::vector<Chain> all;
    for_each_phi(F, a, [&](std::span<const SubsetCode> sets) {
        all.emplace_back(F.n(), std::vector<SubsetCode>(sets.begin(), sets.end()));
    });
    std::stable_sort(all.begin(), all.end(), [](const Chain& x, const Chain& y) { return x.steps() < y.steps(); });
    std::vector<Chain> out;
    out.reserve(all.size());
    std::size_t begin = 0;
    while (begin < all.size()) {
        std::size_t end = begin;
        const StepVector s = all[begin].steps();
        while (end < all.size() && all[end].steps() == s) {
            ++end;
        }
        std::vector<Chain> group(std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(begin)),
                                 std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(end)));
        for (auto& c : sorted_chains(F.n(), std::move(group))) {
            out.push_back(std::move(c));
        }
        begin = end;
    }
    return out;
}

Rational weighted_sum(const Family& F, const StepVector& a)
{
    const int n = F.n();
    std::vector<int> sizes;
    if (n <= 20) {
        unsigned __int128 total = 0;
        for_each_phi(F, a, [&](std::span<const SubsetCode> sets) {
            sizes.resize(sets.size());
            for (std::size_t i = 0; i < sets.size(); ++i) {
                sizes[i] = cardinality(sets[i]);
            }
            total += scaled_weight(n, sizes);
        });
        Rational out(to_big(total), factorial(n));
        out.canonicalize();
        return out;
    }
    Rational total = 0;
    for_each_phi(F, a, [&](std::span<const SubsetCode> sets) {
        sizes.resize(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            sizes[i] = cardinality(sets[i]);
        }
        total += weight_of_sizes(n, sizes);
    });
    return total;
}

BigInt path_chain_count(int p, const StepVector& a)
{
    if (p < 0) {
        throw DomainError("path_chain_count: negative path length");
    }
    // placements[x]: ways to place the chain prefix with its last set at position x.
    std::vector<BigInt> placements(static_cast<std::size_t>(p), BigInt(1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<BigInt> next(static_cast<std::size_t>(p), BigInt(0));
        BigInt running = 0;
        for (int x = 0; x < p; ++x) {
            const int source = x - a[i];
            if (source >= 0) {
                running += placements[static_cast<std::size_t>(source)];
            }
            next[static_cast<std::size_t>(x)] = running;
        }
        placements = std::move(next);
    }
    BigInt total = 0;
    for (const auto& v : placements) {
        total += v;
    }
    return total;
}

Rational ratio_same_steps(const Chain& A, const Chain& B)
{
    if (A.n() != B.n()) {
        throw DomainError("ratio_same_steps: chains over different ground sets");
    }
    if (A.steps() != B.steps()) {
        throw DomainError("ratio_same_steps: step vectors differ");
    }
    if (!(A.distance() > B.distance())) {
        throw DomainError("ratio_same_steps: requires d(A) > d(B)");
    }
    return weight(B) / weight(A);
}

}  // namespace chainlattice
