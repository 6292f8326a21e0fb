#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wealthnet/exchange.hpp"

namespace wealthnet {

/// Occupation numbers n_k of each integer wealth value at time t.
struct WealthHistogram
{
    std::map<Wealth, std::uint64_t> counts;
    std::uint64_t n = 0;
    std::uint64_t t = 0;

    bool empty() const noexcept { return n == 0; }
    Wealth total_wealth() const noexcept;
};

struct SeriesPoint
{
    std::uint64_t t = 0;
    double entropy = 0.0;
    std::size_t poverty = 0;
};

struct CondensationResult
{
    std::optional<std::uint64_t> t_c;
    std::size_t final_poverty = 0;
    double final_entropy = 0.0;
};

/// -p ln p for an occupation count out of n (0 for count 0).
double entropy_term(std::uint64_t count, std::uint64_t n) noexcept;

/// Shannon entropy S = -sum_k P_k ln P_k over occupied wealth states.
/// Throws std::invalid_argument for an empty histogram.
double shannon_entropy(const WealthHistogram& h);

/// Same as shannon_entropy(histogram(...)) without building the map.
/// `scratch` is reused across calls to avoid reallocations.
double shannon_entropy(std::span<const Wealth> wealth, std::vector<Wealth>& scratch);

/// Entropy of n-1 agents in one state and one agent in another.
double condensation_entropy(std::size_t n);

/// Agents below the minimum allowed stake under `rule`.
std::size_t poverty_count(const PopulationState& state, const ExchangeRule& rule) noexcept;

/// First t with poverty == n-1; otherwise not reached.
CondensationResult detect_condensation(std::span<const SeriesPoint> series, std::size_t n);

WealthHistogram histogram(const PopulationState& state);
WealthHistogram histogram(std::span<const Wealth> wealth, std::uint64_t t = 0);

/// Sums counts of histograms taken at the same time.
WealthHistogram pool(std::span<const WealthHistogram> hists);

}  // namespace wealthnet
