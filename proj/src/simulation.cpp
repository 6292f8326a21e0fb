#include "wealthnet/simulation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace wealthnet {

namespace {

constexpr std::uint64_t never = std::numeric_limits<std::uint64_t>::max();

bool absorbing(const PopulationState& state, const ExchangeRule& rule)
{
    return rule.bankruptcy && state.active_count() < 2;
}

}  // namespace

Trajectory run(const RunParams& params, const Topology& topology, Engine& rng)
{
    params.rule.validate();
    if (params.mean_w < 0)
        throw std::invalid_argument("mean wealth must be non-negative");
    std::vector<std::uint64_t> snaps = params.snapshot_times;
    if (snaps.empty())
        snaps.push_back(params.mcs_budget);
    if (!std::is_sorted(snaps.begin(), snaps.end()))
        throw std::invalid_argument("snapshot times must be sorted");
    if (snaps.back() > params.mcs_budget)
        throw std::invalid_argument("snapshot time beyond the MCS budget");
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

    const std::size_t n = topology.size();
    Trajectory out;
    out.final_state = PopulationState(n, params.mean_w, params.rule);
    PopulationState& state = out.final_state;
    const Wealth expected_total = static_cast<Wealth>(n) * params.mean_w;
    std::vector<Wealth> scratch;

    auto next_series_after = [&](std::uint64_t t) {
        if (params.stride == 0)
            return params.mcs_budget > t ? params.mcs_budget : never;
        const std::uint64_t next = (t / params.stride + 1) * params.stride;
        return std::min(next, params.mcs_budget > t ? params.mcs_budget : never);
    };

    std::size_t snap_idx = 0;
    std::uint64_t next_series = 0;
    auto record = [&]() {
        const std::uint64_t t = state.time();
        if (state.recount() != expected_total)
            out.conserved = false;
        if (t == next_series) {
            out.series.push_back({t, shannon_entropy(state.wealth(), scratch), state.poverty()});
            next_series = next_series_after(t);
        }
        while (snap_idx < snaps.size() && snaps[snap_idx] == t) {
            out.snapshots.push_back(histogram(state));
            ++snap_idx;
        }
    };
    auto next_event = [&]() {
        const std::uint64_t snap = snap_idx < snaps.size() ? snaps[snap_idx] : never;
        return std::min(next_series, snap);
    };

    if (state.poverty() + 1 == n)
        out.t_c = 0;
    record();

    while (state.time() < params.mcs_budget) {
        if (absorbing(state, params.rule)) {
            state.advance(std::min(next_event(), params.mcs_budget) - state.time());
            record();
            continue;
        }
        const std::uint64_t stop = std::min(next_event(), params.mcs_budget);
        while (state.time() < stop) {
            if (step(state, topology, params.rule, rng) == StepOutcome::traded) {
                ++out.trades;
                if (!out.t_c && state.poverty() + 1 == n)
                    out.t_c = state.time();
            }
            if (params.verify_every_step && state.recount() != expected_total)
                out.conserved = false;
            if (absorbing(state, params.rule))
                break;
        }
        if (state.time() == next_event())
            record();
    }
    return out;
}

}  // namespace wealthnet
