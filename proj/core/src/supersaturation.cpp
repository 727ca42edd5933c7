#include "chainlattice/supersaturation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "chainlattice/errors.hpp"

namespace chainlattice {

namespace {

void require_phi_star_member(const Chain& c, const ChainOrder& order)
{
    if (c.n() != order.context.n() || !c.inside(order.context) || c.steps() != order.steps) {
        throw DomainError("chain_less: chain " + c.str() + " is not in Phi*(F, " + order.steps.str() + ")");
    }
}

void require_steps(const MeasuredSubhypergraph& f, const StepVector& a)
{
    if (a.size() + 1 != static_cast<std::size_t>(f.k())) {
        throw DomainError("step vector " + a.str() + " does not describe " + std::to_string(f.k()) + "-chains");
    }
}

using Key = MeasuredSubhypergraph::Key;

void sort_by_chain_order(int n, std::vector<Key>& keys)
{
    std::vector<std::pair<std::vector<CenteredOrderKey>, std::size_t>> keyed;
    keyed.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        keyed.emplace_back(chain_order_key(n, keys[i]), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Key> out;
    out.reserve(keys.size());
    for (const auto& entry : keyed) {
        out.push_back(std::move(keys[entry.second]));
    }
    keys = std::move(out);
}

std::vector<Key> sorted_phi_star(const Family& F, const StepVector& a)
{
    std::vector<Key> keys;
    for_each_phi_star(F, a, [&](std::span<const SubsetCode> sets) { keys.emplace_back(sets.begin(), sets.end()); });
    sort_by_chain_order(F.n(), keys);
    return keys;
}

// Rewrites f on `ordered` as 1...1, x, 0...0 with the same total.
void compress_class(MeasuredSubhypergraph& f, const std::vector<Key>& ordered)
{
    Rational total = 0;
    for (const auto& key : ordered) {
        total += f.measure(key);
    }
    for (const auto& key : ordered) {
        if (total >= 1) {
            f.set(key, Rational(1));
            total -= 1;
        } else {
            f.set(key, total);
            total = 0;
        }
    }
}

bool class_is_compressed(const MeasuredSubhypergraph& f, const std::vector<Key>& ordered)
{
    bool tail = false;
    for (const auto& key : ordered) {
        const Rational m = f.measure(key);
        if (tail) {
            if (m != 0) {
                return false;
            }
        } else if (m != 1) {
            tail = true;
        }
    }
    return true;
}

std::map<StepVector, std::vector<Key>> chains_by_steps(const Family& F, int k)
{
    std::map<StepVector, std::vector<Key>> groups;
    std::vector<int> steps(static_cast<std::size_t>(k - 1));
    for_each_k_chain(F, k, [&](std::span<const SubsetCode> sets) {
        for (std::size_t i = 1; i < sets.size(); ++i) {
            steps[i - 1] = cardinality(sets[i]) - cardinality(sets[i - 1]);
        }
        groups[StepVector(steps)].emplace_back(sets.begin(), sets.end());
    });
    for (auto& [steps_, keys] : groups) {
        sort_by_chain_order(F.n(), keys);
    }
    return groups;
}

int height_of(const Family& F)
{
    return F.empty() ? 0 : F.max_size() - F.min_size();
}

const std::array<std::uint64_t, 21>& factorial_table()
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

BigInt to_big(unsigned __int128 v)
{
    const auto high = static_cast<std::uint64_t>(v >> 64);
    const auto low = static_cast<std::uint64_t>(v);
    BigInt out = BigInt(static_cast<unsigned long>(high));
    out <<= 64;
    out += BigInt(static_cast<unsigned long>(low));
    return out;
}

std::uint64_t scaled_of(int n, std::span<const SubsetCode> sets)
{
    std::array<int, 32> sizes{};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        sizes[i] = cardinality(sets[i]);
    }
    return scaled_weight(n, std::span<const int>(sizes.data(), sets.size()));
}

}  // namespace

bool chain_less(const Chain& A, const Chain& B, const ChainOrder& order)
{
    require_phi_star_member(A, order);
    require_phi_star_member(B, order);
    return centered_chain_less(A.n(), A.sets(), B.sets());
}

MeasuredSubhypergraph compress(const MeasuredSubhypergraph& f, const Family& F, const StepVector& a)
{
    require_steps(f, a);
    MeasuredSubhypergraph out = f;
    compress_class(out, sorted_phi_star(F & f.host(), a));
    return out;
}

bool is_compressed(const MeasuredSubhypergraph& f, const Family& F, const StepVector& a)
{
    require_steps(f, a);
    return class_is_compressed(f, sorted_phi_star(F & f.host(), a));
}

bool is_completely_compressed(const MeasuredSubhypergraph& f, const Family& ambient)
{
    for (const auto& [steps, keys] : chains_by_steps(ambient & f.host(), f.k())) {
        if (!class_is_compressed(f, keys)) {
            return false;
        }
    }
    return true;
}

MeasuredSubhypergraph fully_compress(const MeasuredSubhypergraph& f, const Family& ambient)
{
    MeasuredSubhypergraph out = f;
    for (const auto& [steps, keys] : chains_by_steps(ambient & f.host(), f.k())) {
        compress_class(out, keys);
    }
    return out;
}

GoodnessReport is_q_good(const MeasuredSubhypergraph& f, std::size_t Q, const Family& ambient)
{
    if (ambient.n() != f.n()) {
        throw DomainError("is_q_good: ground-set sizes differ");
    }
    const Family G = centered_family(f.n(), Q);
    const Family inside = ambient & f.host();
    const int bound = std::max(height_of(inside), height_of(G));
    GoodnessReport report;
    for (const auto& a : step_vectors(static_cast<std::size_t>(f.k() - 1), bound)) {
        Rational rhs = weighted_sum(G, a);
        if (rhs == 0) {
            continue;
        }
        Rational lhs = f.weighted_measure(inside, a);
        if (lhs < rhs) {
            report.good = false;
            report.witness = a;
            report.lhs = lhs;
            report.rhs = rhs;
            return report;
        }
    }
    return report;
}

GoodnessReport is_q_good(const MeasuredSubhypergraph& f, std::size_t Q)
{
    return is_q_good(f, Q, f.host());
}

MeasuredSubhypergraph hat_f(const Family& C, std::size_t M, int d, int k)
{
    const int n = C.n();
    if (n > 20) {
        throw ResourceError("hat_f: supported for n <= 20");
    }
    MeasuredSubhypergraph out(n, d, k);
    const Family& host = out.host();
    if (!C.is_subset_of(host)) {
        throw DomainError("hat_f: C must lie inside P_{n,d}");
    }
    if (M < 1 || M > host.size()) {
        throw DomainError("hat_f: M must lie in [1, |P_{n,d}|]");
    }
    const int r = threshold_layers(n, M);
    if (!C.empty()) {
        if (r < 2 || !C.is_subset_of(middle_layers(n, r - 1))) {
            throw DomainError("hat_f: C must lie inside P_{n,r-1} with r = " + std::to_string(r));
        }
        if (C.size() > binomial(n, (n + r) / 2)) {
            throw DomainError("hat_f: |C| exceeds binom(n, floor((n+r)/2))");
        }
    }
    const Family G = centered_family(n, M) & host;
    const Family allowed = host - C;

    for (const auto& a : step_vectors(static_cast<std::size_t>(k - 1), d - 1)) {
        unsigned __int128 target = 0;
        for_each_phi_star(G, a, [&](std::span<const SubsetCode> sets) { target += scaled_of(n, sets); });
        if (target == 0) {
            continue;
        }
        for (const auto& key : sorted_phi_star(allowed, a)) {
            const std::uint64_t s = scaled_of(n, key);
            if (target >= s) {
                out.set(key, Rational(1));
                target -= s;
            } else {
                Rational part(to_big(target), BigInt(static_cast<unsigned long>(s)));
                part.canonicalize();
                out.set(key, part);
                target = 0;
            }
            if (target == 0) {
                break;
            }
        }
        if (target != 0) {
            Rational missing(to_big(target), factorial(n));
            missing.canonicalize();
            throw InfeasibleError("hat_f: P' lacks chains with steps " + a.str() + "; weight " + missing.get_str() +
                                  " of the centered total is unmatched");
        }
    }
    return out;
}

Rational missing_sets_bound(std::size_t s, int k, int n)
{
    if (k < 1 || n < 1) {
        throw DomainError("missing_sets_bound: k and n must be positive");
    }
    Rational out(BigInt(static_cast<unsigned long>(s)), BigInt(k) * n);
    out.canonicalize();
    return out;
}

SupersatCheck verify_supersat(const Family& F, const StepVector& a)
{
    SupersatCheck out;
    out.lhs = weighted_sum(F, a);
    out.rhs = weighted_sum(centered_family(F.n(), F.size()), a);
    out.ok = out.lhs >= out.rhs;
    return out;
}

int d_param(int n, int k)
{
    if (n < 1 || k < 1) {
        throw DomainError("d_param: n and k must be positive");
    }
    const double raw = 10.0 * k * std::sqrt(n * std::log(static_cast<double>(n)));
    const auto d = static_cast<long long>(std::floor(raw));
    return static_cast<int>(std::clamp<long long>(d, 1, n + 1));
}

std::uint32_t composition_code(const StepVector& a)
{
    if (a.sum() > 31) {
        throw DomainError("composition_code: step sum exceeds 31");
    }
    std::uint32_t code = 0;
    for (int t : a.entries()) {
        code = (code << t) | (std::uint32_t{1} << (t - 1));
    }
    return code;
}

StepVector composition_from_code(std::uint32_t code)
{
    std::vector<int> parts;
    int pending = 0;
    for (int bit = 31; bit >= 0; --bit) {
        const bool one = ((code >> bit) & 1u) != 0;
        if (one) {
            if (pending > 0) {
                parts.push_back(pending);
            }
            pending = 1;
        } else if (pending > 0) {
            ++pending;
        }
    }
    if (pending > 0) {
        parts.push_back(pending);
    }
    return StepVector(std::move(parts));
}

namespace {

struct ProfileWalker {
    const Family& F;
    int n;
    SubsetCode fullMask;
    const std::array<std::uint64_t, 21>& fact;
    std::vector<unsigned __int128>& profile;
    int firstSize = 0;

    void record(std::uint32_t code, int lastSize, std::uint64_t stepProduct)
    {
        const bool down = LevelDistance::of(n, lastSize) >= LevelDistance::of(n, firstSize);
        const int outer = down ? lastSize : n - firstSize;
        const int inner = down ? firstSize : n - lastSize;
        profile[code] += static_cast<unsigned __int128>(fact[static_cast<std::size_t>(n)] /
                                                        fact[static_cast<std::size_t>(outer)] *
                                                        fact[static_cast<std::size_t>(inner)]) *
                         stepProduct;
    }

    void extend(SubsetCode last, std::uint32_t code, std::uint64_t stepProduct)
    {
        record(code, cardinality(last), stepProduct);
        const SubsetCode free = fullMask & ~last;
        for (SubsetCode extra = free; extra != 0; extra = (extra - 1) & free) {
            const SubsetCode next = last | extra;
            if (F.contains(next)) {
                const int t = cardinality(extra);
                extend(next, (code << t) | (std::uint32_t{1} << (t - 1)),
                       stepProduct * fact[static_cast<std::size_t>(t)]);
            }
        }
    }
};

}  // namespace

std::vector<unsigned __int128> scaled_step_profile(const Family& F)
{
    const int n = F.n();
    if (n > 20) {
        throw ResourceError("scaled_step_profile: supported for n <= 20");
    }
    std::vector<unsigned __int128> profile(static_cast<std::size_t>(F.universe()), 0);
    ProfileWalker walker{F, n, full_set(n), factorial_table(), profile};
    F.for_each([&](SubsetCode start) {
        walker.firstSize = cardinality(start);
        walker.extend(start, 0, 1);
    });
    return profile;
}

}  // namespace chainlattice
