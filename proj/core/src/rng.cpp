#include "chainlattice/rng.hpp"

#include <limits>
#include <numeric>

namespace chainlattice {

Rng make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x636c6174u};
    return Rng(seq);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound)
{
    if (bound <= 1) {
        return 0;
    }
    // Rejection on the largest multiple of bound.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    while (true) {
        const std::uint64_t draw = rng();
        if (draw < limit) {
            return draw % bound;
        }
    }
}

std::vector<int> random_permutation(Rng& rng, int n)
{
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(rng, std::span<int>(perm));
    return perm;
}

double uniform_unit(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace chainlattice
