#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wealthnet/config.hpp"
#include "wealthnet/fitting.hpp"
#include "wealthnet/metrics.hpp"
#include "wealthnet/netgen.hpp"
#include "wealthnet/simulation.hpp"

namespace wealthnet {

struct RealizationResult
{
    std::uint64_t seed = 0;
    Trajectory trajectory;
    double realized_mean_degree = 0.0;
    std::size_t largest_component = 0;
};

/// One realization: derive the sub-seed, wire a fresh network (unless
/// `shared` is given) and run the dynamics.
RealizationResult run_realization(const SimConfig& config, std::size_t index,
                                  const Topology* shared = nullptr);

/// Realizations one after another. Reference path for the parallel runner.
std::vector<RealizationResult> run_realizations_serial(const SimConfig& config);

/// Realizations spread over OpenMP threads. Output is identical to the
/// serial runner: every realization owns its engine and its result slot.
std::vector<RealizationResult> run_realizations_parallel(const SimConfig& config);

enum class Execution
{
    serial,
    parallel,
};

struct MeanSeriesPoint
{
    std::uint64_t t = 0;
    double entropy = 0.0;
    double poverty = 0.0;
};

struct ExperimentResult
{
    SimConfig config;
    std::vector<RealizationResult> realizations;
    /// Pointwise mean over realizations.
    std::vector<MeanSeriesPoint> series;
    /// Histograms summed over realizations, one per snapshot time.
    std::vector<WealthHistogram> pooled_snapshots;
    double mean_realized_degree = 0.0;
    bool conserved = true;

    std::vector<std::optional<std::uint64_t>> condensation_times() const;
};

/// Aggregates per-realization results in realization order.
ExperimentResult aggregate(const SimConfig& config, std::vector<RealizationResult> runs);

ExperimentResult run_experiment(const SimConfig& config, Execution exec = Execution::parallel);

enum class SweepParam
{
    n,
    dw,
    nu,
    k_max,
};

SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam param) noexcept;

struct SweepRow
{
    double value = 0.0;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    /// Condensation times of the realizations that condensed, in order.
    std::vector<double> t_c;
    double mean_tc = 0.0;
    double std_tc = 0.0;
    double realized_mean_degree = 0.0;
    /// Exponential fit of the final pooled histogram (k_max sweeps).
    std::optional<FitResult> exponential;

    bool complete() const noexcept { return t_c.size() == realizations; }
};

struct SweepResult
{
    SweepParam param = SweepParam::n;
    std::vector<SweepRow> rows;
    /// Log-log fit of mean t_c against N (n sweeps with >= 3 complete rows).
    std::optional<FitResult> scaling;
    std::vector<std::string> warnings;
};

/// Base config with one parameter replaced and the seed re-derived from the
/// value, so a row does not depend on where its value sits in the list.
/// n, dw and nu sweeps measure condensation and force bankruptcy on.
SimConfig sweep_config(const SimConfig& base, SweepParam param, double value);

SweepResult sweep(const SimConfig& base, SweepParam param, std::span<const double> values,
                  Execution exec = Execution::parallel);

}  // namespace wealthnet
