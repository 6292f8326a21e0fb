#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace wealthnet {

/// Random engine used everywhere in the library.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for realization `index` of an experiment seeded with `master`.
///
/// seed_r = splitmix64(master ^ splitmix64(index + 1)). The +1 keeps
/// realization 0 from reusing the bare master seed.
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seed for a sweep value, derived from the value itself so that sweep rows
/// do not depend on their position in the value list.
std::uint64_t sweep_seed(std::uint64_t master, double value) noexcept;

/// Uniform integer in [0, n). n must be positive.
inline std::size_t draw_below(Engine& eng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
}

/// Fair coin from the top bit of one engine draw.
inline bool flip(Engine& eng)
{
    return (eng() >> 63) != 0;
}

}  // namespace wealthnet
