#include "wealthnet/experiment.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace wealthnet {

namespace {

constexpr std::uint64_t network_stream = 0x6e6574776f726bULL;

Topology build_topology(const SimConfig& config, Engine& rng)
{
    if (config.network.fully_connected)
        return fully_connected(config.n);
    const DegreeSequence seq = sample_degree_sequence(config.n, config.network.k_max, rng);
    return wire_network(seq, rng, WiringOptions{config.retry_budget});
}

std::optional<Topology> shared_topology(const SimConfig& config)
{
    if (config.network.fully_connected || !config.single_network)
        return std::nullopt;
    Engine rng(splitmix64(config.seed ^ network_stream));
    return build_topology(config, rng);
}

}  // namespace

RealizationResult run_realization(const SimConfig& config, std::size_t index,
                                  const Topology* shared)
{
    RealizationResult out;
    out.seed = realization_seed(config.seed, index);
    Engine rng(out.seed);
    std::optional<Topology> own;
    if (!shared)
        own = build_topology(config, rng);
    const Topology& topology = shared ? *shared : *own;
    out.realized_mean_degree = topology.mean_degree();
    out.largest_component = components(topology).largest();
    out.trajectory = run(config.run_params(), topology, rng);
    return out;
}

std::vector<RealizationResult> run_realizations_serial(const SimConfig& config)
{
    config.validate();
    const auto shared = shared_topology(config);
    std::vector<RealizationResult> out(config.realizations);
    for (std::size_t r = 0; r < config.realizations; ++r)
        out[r] = run_realization(config, r, shared ? &*shared : nullptr);
    return out;
}

std::vector<RealizationResult> run_realizations_parallel(const SimConfig& config)
{
    config.validate();
    const auto shared = shared_topology(config);
    const Topology* topo = shared ? &*shared : nullptr;
    std::vector<RealizationResult> out(config.realizations);
    const int threads = config.workers > 0 ? static_cast<int>(config.workers) : omp_get_max_threads();
    const auto count = static_cast<std::int64_t>(config.realizations);

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t r = 0; r < count; ++r) {
        try {
            out[static_cast<std::size_t>(r)] = run_realization(config, static_cast<std::size_t>(r), topo);
        } catch (...) {
#pragma omp critical(wealthnet_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

std::vector<std::optional<std::uint64_t>> ExperimentResult::condensation_times() const
{
    std::vector<std::optional<std::uint64_t>> out;
    out.reserve(realizations.size());
    for (const auto& r : realizations)
        out.push_back(r.trajectory.t_c);
    return out;
}

ExperimentResult aggregate(const SimConfig& config, std::vector<RealizationResult> runs)
{
    ExperimentResult out;
    out.config = config;
    out.realizations = std::move(runs);
    if (out.realizations.empty())
        return out;

    const auto& first = out.realizations.front().trajectory;
    out.series.resize(first.series.size());
    for (std::size_t k = 0; k < first.series.size(); ++k)
        out.series[k].t = first.series[k].t;
    std::vector<std::vector<WealthHistogram>> per_time(first.snapshots.size());

    double degree_sum = 0.0;
    for (const auto& r : out.realizations) {
        const auto& tr = r.trajectory;
        if (tr.series.size() != out.series.size() || tr.snapshots.size() != per_time.size())
            throw std::logic_error("realizations recorded different schedules");
        for (std::size_t k = 0; k < tr.series.size(); ++k) {
            out.series[k].entropy += tr.series[k].entropy;
            out.series[k].poverty += static_cast<double>(tr.series[k].poverty);
        }
        for (std::size_t k = 0; k < tr.snapshots.size(); ++k)
            per_time[k].push_back(tr.snapshots[k]);
        degree_sum += r.realized_mean_degree;
        out.conserved = out.conserved && tr.conserved;
    }
    const auto count = static_cast<double>(out.realizations.size());
    for (auto& p : out.series) {
        p.entropy /= count;
        p.poverty /= count;
    }
    for (const auto& hs : per_time)
        out.pooled_snapshots.push_back(pool(hs));
    out.mean_realized_degree = degree_sum / count;
    return out;
}

ExperimentResult run_experiment(const SimConfig& config, Execution exec)
{
    auto runs = exec == Execution::serial ? run_realizations_serial(config)
                                          : run_realizations_parallel(config);
    return aggregate(config, std::move(runs));
}

SweepParam parse_sweep_param(std::string_view name)
{
    if (name == "n")
        return SweepParam::n;
    if (name == "dw")
        return SweepParam::dw;
    if (name == "nu")
        return SweepParam::nu;
    if (name == "kmax")
        return SweepParam::k_max;
    throw std::invalid_argument("sweep parameter must be one of n, dw, nu, kmax");
}

std::string_view to_string(SweepParam param) noexcept
{
    switch (param) {
    case SweepParam::n:
        return "n";
    case SweepParam::dw:
        return "dw";
    case SweepParam::nu:
        return "nu";
    case SweepParam::k_max:
        return "kmax";
    }
    return "unknown";
}

SimConfig sweep_config(const SimConfig& base, SweepParam param, double value)
{
    SimConfig c = base;
    auto as_count = [&](const char* what) {
        if (!(value >= 1.0) || value != std::floor(value))
            throw std::invalid_argument(std::string(what) + " sweep values must be positive integers");
        return static_cast<std::uint64_t>(value);
    };
    switch (param) {
    case SweepParam::n:
        c.n = as_count("n");
        c.rule.bankruptcy = true;
        break;
    case SweepParam::dw:
        if (c.rule.kind != RuleKind::additive)
            throw std::invalid_argument("dw sweeps need the additive rule; sweep nu instead");
        c.rule.c = static_cast<Wealth>(as_count("dw"));
        c.rule.bankruptcy = true;
        break;
    case SweepParam::nu:
        if (c.rule.kind != RuleKind::multiplicative)
            throw std::invalid_argument("nu sweeps need the multiplicative rule");
        c.rule.nu = value;
        c.rule.bankruptcy = true;
        break;
    case SweepParam::k_max:
        c.network.fully_connected = false;
        c.network.k_max = static_cast<std::uint32_t>(as_count("kmax"));
        break;
    }
    c.seed = sweep_seed(base.seed, value);
    c.validate();
    return c;
}

SweepResult sweep(const SimConfig& base, SweepParam param, std::span<const double> values,
                  Execution exec)
{
    SweepResult out;
    out.param = param;
    for (double value : values) {
        const SimConfig c = sweep_config(base, param, value);
        const ExperimentResult res = run_experiment(c, exec);
        SweepRow row;
        row.value = value;
        row.seed = c.seed;
        row.realizations = c.realizations;
        row.realized_mean_degree = res.mean_realized_degree;
        for (const auto& t : res.condensation_times())
            if (t)
                row.t_c.push_back(static_cast<double>(*t));
        if (!row.t_c.empty()) {
            const double m = std::accumulate(row.t_c.begin(), row.t_c.end(), 0.0) /
                             static_cast<double>(row.t_c.size());
            double ss = 0.0;
            for (double t : row.t_c)
                ss += (t - m) * (t - m);
            row.mean_tc = m;
            row.std_tc = row.t_c.size() > 1 ? std::sqrt(ss / static_cast<double>(row.t_c.size() - 1)) : 0.0;
        }
        if (param != SweepParam::k_max && !row.complete())
            out.warnings.push_back(std::string(to_string(param)) + "=" + std::to_string(value) + ": " +
                                   std::to_string(row.realizations - row.t_c.size()) +
                                   " realization(s) did not condense within the budget");
        if (param == SweepParam::k_max && !res.pooled_snapshots.empty()) {
            try {
                row.exponential = fit_exponential(res.pooled_snapshots.back(), {}, static_cast<double>(c.mean_w));
            } catch (const std::invalid_argument&) {
            }
        }
        out.rows.push_back(std::move(row));
    }

    if (param == SweepParam::n) {
        std::vector<ScalingPoint> pts;
        for (const auto& row : out.rows)
            if (row.complete())
                pts.push_back({row.value, row.mean_tc});
        try {
            out.scaling = fit_scaling(pts);
        } catch (const std::invalid_argument& e) {
            out.warnings.push_back(std::string("no scaling fit: ") + e.what());
        }
    }
    return out;
}

}  // namespace wealthnet
