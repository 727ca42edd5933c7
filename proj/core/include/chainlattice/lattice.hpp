#pragma once

// Ground-level arithmetic on the Boolean lattice P(n): subset codes, layers,
// the centered order and the dense Family container used by every module.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace chainlattice {

/// Bit i-1 set <=> element i of [n] is present.
using SubsetCode = std::uint32_t;
using BigInt = mpz_class;
using Rational = mpq_class;

inline int cardinality(SubsetCode code) { return std::popcount(code); }

inline SubsetCode full_set(int n) { return n == 0 ? 0u : (~SubsetCode{0} >> (32 - n)); }

/// A subset code together with the size of its ground set.
struct Subset {
    int n = 0;
    SubsetCode code = 0;
};

// Exact combinatorial numbers. The 64-bit variants are exact for n <= 62.
std::uint64_t binomial(int n, int k);
BigInt big_binomial(int n, int k);
BigInt factorial(int n);
/// s * (s-1) * ... * (s-t+1); zero when t > s.
BigInt falling_factorial(int s, int t);

/// |n/2 - size|, stored doubled so that half-integers stay exact.
class LevelDistance {
public:
    constexpr LevelDistance() = default;
    static constexpr LevelDistance of(int n, int size)
    {
        const int twice = n - 2 * size;
        return LevelDistance(twice < 0 ? -twice : twice);
    }
    static constexpr LevelDistance from_twice(int twice) { return LevelDistance(twice); }

    constexpr int twice() const { return twice_; }
    Rational value() const { return Rational(twice_, 2); }
    /// "3/2", "2", "0".
    std::string str() const;

    constexpr auto operator<=>(const LevelDistance&) const = default;

private:
    constexpr explicit LevelDistance(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// Size of the r largest layers of P(n); 0 <= r <= n+1.
std::uint64_t sigma(int n, int r);

/// The unique r with sigma(n, r-1) < M <= sigma(n, r).
int threshold_layers(int n, std::uint64_t M);

/// A <_lex B: smaller sets first; within a layer the set owning the smallest
/// element of the symmetric difference comes first.
bool lex_less(const Subset& a, const Subset& b);

/// Position of a among the |a|-subsets of [n] in lexicographic order.
std::uint64_t lex_rank(int n, SubsetCode a);

/// Sort key of the centered order: closer to n/2 first, the upper of two
/// equidistant layers first, then lexicographic within the layer.
struct CenteredOrderKey {
    LevelDistance distance;
    int sizeDesc = 0;
    std::uint64_t lexRank = 0;

    auto operator<=>(const CenteredOrderKey&) const = default;
};

CenteredOrderKey centered_key(int n, SubsetCode a);

/// Ordering of layers by (distance from n/2, larger size first).
inline std::pair<int, int> layer_priority(int n, int size)
{
    return {LevelDistance::of(n, size).twice(), -size};
}

/// Dense membership vector over all 2^n subsets with cached cardinality.
class Family {
public:
    Family() = default;
    explicit Family(int n);

    static Family full(int n);
    static Family layer(int n, int size);
    static Family from_codes(int n, std::span<const SubsetCode> codes);

    int n() const { return n_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::uint64_t universe() const { return std::uint64_t{1} << n_; }

    bool contains(SubsetCode code) const
    {
        return code < universe() && ((bits_[code >> 6] >> (code & 63)) & 1u) != 0;
    }
    /// Returns false when the code was already present.
    bool insert(SubsetCode code);
    /// Returns false when the code was absent.
    bool erase(SubsetCode code);

    /// Members in increasing code order.
    std::vector<SubsetCode> codes() const;

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t w = 0; w < bits_.size(); ++w) {
            std::uint64_t word = bits_[w];
            while (word != 0) {
                const int bit = std::countr_zero(word);
                fn(static_cast<SubsetCode>((w << 6) | static_cast<std::size_t>(bit)));
                word &= word - 1;
            }
        }
    }

    bool is_subset_of(const Family& other) const;
    Family operator|(const Family& other) const;
    Family operator&(const Family& other) const;
    /// Set difference this \ other.
    Family operator-(const Family& other) const;

    /// Smallest / largest member cardinality; -1 on an empty family.
    int min_size() const;
    int max_size() const;

    std::span<const std::uint64_t> words() const { return bits_; }

    bool operator==(const Family& other) const { return n_ == other.n_ && bits_ == other.bits_; }

private:
    void require_same_n(const Family& other) const;
    void require_code(SubsetCode code) const;

    int n_ = 0;
    std::size_t size_ = 0;
    std::vector<std::uint64_t> bits_ = std::vector<std::uint64_t>(1, 0);
};

/// Members of `ambient` sorted by CenteredOrderKey.
std::vector<SubsetCode> centered_order(const Family& ambient);

/// G_{P',Q}: the first Q members of P' in centered order.
Family centered_family(const Family& ambient, std::size_t Q);

/// Convenience for G_Q = G_{P(n),Q}.
Family centered_family(int n, std::size_t Q);

/// Whether F (a subfamily of P') is centered in P'.
bool is_centered(const Family& ambient, const Family& F);

/// All sets of size targetLevel containing a member of F. F must lie in a
/// single layer strictly below targetLevel.
Family upper_shadow(const Family& F, int targetLevel);

/// "1,2,5" for {1,2,5}; "-" for the empty set.
std::string format_subset(SubsetCode code);

/// Inverse of format_subset. Elements must be distinct and within [1, n].
SubsetCode parse_subset(std::string_view text, int n);

}  // namespace chainlattice
