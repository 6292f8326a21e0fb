#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wealthnet/exchange.hpp"
#include "wealthnet/metrics.hpp"
#include "wealthnet/netgen.hpp"

namespace wealthnet {

struct RunParams
{
    Wealth mean_w = 100;
    ExchangeRule rule;
    std::uint64_t mcs_budget = 400000;
    /// Sorted MCS counts at which a histogram is kept. Empty means the final time.
    std::vector<std::uint64_t> snapshot_times;
    /// Entropy/poverty sampling period in MCS; 0 keeps only t=0 and the final time.
    std::uint64_t stride = 500;
    /// Recount the total after every step (slow; for tests).
    bool verify_every_step = false;
};

struct Trajectory
{
    std::vector<SeriesPoint> series;
    std::vector<WealthHistogram> snapshots;
    /// Exact first MCS at which poverty reached n-1.
    std::optional<std::uint64_t> t_c;
    std::uint64_t trades = 0;
    /// Total wealth matched n * mean_w at every recorded time.
    bool conserved = true;
    PopulationState final_state;
};

/// Runs one realization from the uniform initial state w_i = mean_w.
///
/// Once fewer than two agents may trade under bankruptcy the state is
/// absorbing, so the clock jumps straight to the next recording time.
/// Throws std::invalid_argument on unsorted snapshot times, snapshot times
/// past the budget, or an invalid rule.
Trajectory run(const RunParams& params, const Topology& topology, Engine& rng);

}  // namespace wealthnet
