#include "wealthnet/rng.hpp"

#include <bit>

namespace wealthnet {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return splitmix64(master ^ splitmix64(index + 1));
}

std::uint64_t sweep_seed(std::uint64_t master, double value) noexcept
{
    return splitmix64(master ^ splitmix64(std::bit_cast<std::uint64_t>(value)));
}

}  // namespace wealthnet
