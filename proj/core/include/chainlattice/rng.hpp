#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace chainlattice {

/// Identifier recorded in run manifests.
inline constexpr const char* kRngAlgorithm = "mt19937_64/seed_seq(seed,stream)";

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Worker and block streams are
/// derived this way so results do not depend on the worker count.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Unbiased integer in [0, bound). Implemented locally so that draws are
/// identical across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform permutation of {0, ..., n-1}.
std::vector<int> random_permutation(Rng& rng, int n);

/// Fisher-Yates shuffle with uniform_below.
template <class T>
void shuffle_in_place(Rng& rng, std::span<T> values)
{
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

/// Uniform real in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

}  // namespace chainlattice
