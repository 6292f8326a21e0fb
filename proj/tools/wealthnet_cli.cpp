// Command-line front end: simulate, sweep, tables, network, preset.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wealthnet/bundle.hpp"
#include "wealthnet/config.hpp"
#include "wealthnet/experiment.hpp"
#include "wealthnet/gf.hpp"
#include "wealthnet/netgen.hpp"
#include "wealthnet/presets.hpp"

namespace fs = std::filesystem;
using namespace wealthnet;

namespace {

struct Overrides
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> rule;
    bool bankruptcy = false;
    std::optional<std::uint32_t> kmax;
    bool fully_connected = false;
    std::optional<std::uint64_t> mcs;
    std::optional<std::size_t> realizations;
    std::optional<std::size_t> n;
    std::optional<std::string> snapshots;
    std::optional<std::uint64_t> stride;
    std::optional<std::size_t> workers;
    bool serial = false;

    void attach(CLI::App* app)
    {
        app->add_option("--config", config_path, "flat key = value config file");
        app->add_option("--seed", seed, "master seed");
        app->add_option("--rule", rule, "additive | multiplicative")
            ->check(CLI::IsMember({"additive", "multiplicative"}));
        app->add_flag("--bankruptcy", bankruptcy, "remove agents that can no longer bet");
        auto* k = app->add_option("--kmax", kmax, "random network with degrees uniform in [1, K]");
        auto* fc = app->add_flag("--fully-connected", fully_connected, "every agent linked to every other");
        k->excludes(fc);
        app->add_option("--mcs", mcs, "Monte Carlo step budget");
        app->add_option("--realizations", realizations, "independent realizations");
        app->add_option("--n", n, "number of agents");
        app->add_option("--snapshots", snapshots, "comma-separated snapshot times");
        app->add_option("--stride", stride, "series sampling period (0 = endpoints only)");
        app->add_option("--workers", workers, "OpenMP threads (0 = default)");
        app->add_flag("--serial", serial, "use the serial reference runner");
    }

    SimConfig resolve(SimConfig c = {}) const
    {
        if (!config_path.empty())
            c = load_config(config_path, c);
        if (seed)
            c.seed = *seed;
        if (rule)
            apply_setting(c, "rule", *rule);
        if (bankruptcy)
            c.rule.bankruptcy = true;
        if (kmax) {
            c.network.fully_connected = false;
            c.network.k_max = *kmax;
        }
        if (fully_connected)
            c.network.fully_connected = true;
        if (mcs)
            c.mcs_budget = *mcs;
        if (realizations)
            c.realizations = *realizations;
        if (n)
            c.n = *n;
        if (snapshots)
            c.snapshot_times = parse_u64_list(*snapshots);
        if (stride)
            c.stride = *stride;
        if (workers)
            c.workers = *workers;
        c.validate();
        return c;
    }

    Execution execution() const { return serial ? Execution::serial : Execution::parallel; }
};

void run_tables(const std::vector<std::uint32_t>& kmax, std::size_t s_max, std::size_t rows,
                const std::optional<fs::path>& out_dir)
{
    auto emit = [&](const std::string& file, auto&& writer) {
        if (out_dir) {
            fs::create_directories(*out_dir);
            std::ofstream out(*out_dir / file, std::ios::binary);
            if (!out)
                throw std::runtime_error("cannot write " + (*out_dir / file).string());
            writer(out);
        } else {
            std::cout << "# " << file << '\n';
            writer(std::cout);
        }
    };
    emit("moments.csv", [&](std::ostream& o) { write_moments_csv(o, kmax); });
    emit("fixed_points.csv", [&](std::ostream& o) { write_fixed_point_csv(o, kmax); });
    for (auto k : kmax) {
        const auto table = component_sizes(k, s_max);
        emit("component_sizes_kmax" + std::to_string(k) + ".csv",
             [&](std::ostream& o) { write_component_size_csv(o, table, rows); });
    }
}

void run_components(const SimConfig& c, const fs::path& dir)
{
    std::vector<ComponentStats> stats;
    double degree = 0.0;
    for (std::size_t r = 0; r < c.realizations; ++r) {
        Engine rng(realization_seed(c.seed, r));
        const auto topo = wire_network(sample_degree_sequence(c.n, c.network.k_max, rng), rng,
                                       WiringOptions{c.retry_budget});
        degree += topo.mean_degree();
        stats.push_back(components(topo));
    }
    fs::create_directories(dir);
    std::ofstream out(dir / "components.csv", std::ios::binary);
    write_component_stats_csv(out, stats);
    std::ofstream meta(dir / "meta", std::ios::binary);
    meta << to_key_values(c) << "realized_mean_degree = " << degree / static_cast<double>(c.realizations)
         << '\n'
         << "version = " << version() << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-agent wealth exchange on fully connected and random networks"};
    app.require_subcommand(1);

    Overrides sim_opts;
    std::string sim_out = "out";
    auto* simulate = app.add_subcommand("simulate", "run an experiment and write its output bundle");
    sim_opts.attach(simulate);
    simulate->add_option("--out", sim_out, "output directory");

    Overrides sweep_opts;
    std::string sweep_param;
    std::string sweep_values;
    std::string sweep_out = "out";
    auto* sweep_cmd = app.add_subcommand("sweep", "repeat an experiment over one parameter");
    sweep_opts.attach(sweep_cmd);
    sweep_cmd->add_option("--param", sweep_param, "n | dw | nu | kmax")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    std::vector<std::uint32_t> table_kmax;
    std::size_t s_max = 200;
    std::size_t rows = 20;
    std::optional<std::string> table_out;
    auto* tables = app.add_subcommand("tables", "generating-function tables as CSV");
    tables->add_option("--kmax", table_kmax, "maximum degree (repeatable)")->required();
    tables->add_option("--smax", s_max, "series truncation order");
    tables->add_option("--rows", rows, "component sizes to print");
    tables->add_option("--out", table_out, "directory (default: stdout)");

    std::size_t net_n = 500;
    std::uint32_t net_kmax = 2;
    std::uint64_t net_seed = 1;
    std::string net_edges;
    auto* network = app.add_subcommand("network", "wire one random network and export it");
    network->add_option("--n", net_n, "number of agents");
    network->add_option("--kmax", net_kmax, "maximum degree");
    network->add_option("--seed", net_seed, "seed");
    network->add_option("--edges", net_edges, "edge list file (default: stdout)");

    std::string preset_name;
    std::string preset_out = "out";
    std::optional<std::size_t> preset_realizations;
    std::optional<std::size_t> preset_workers;
    auto* preset = app.add_subcommand("preset", "run the canned configuration behind a figure or table");
    preset->add_option("name", preset_name, "fig1a fig1b fig2 fig3 fig4 fig5 fig7 fig8 fig10 fig11 fig12 tables")
        ->required();
    preset->add_option("--out", preset_out, "output directory");
    preset->add_option("--realizations", preset_realizations, "override realization count");
    preset->add_option("--workers", preset_workers, "OpenMP threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const SimConfig c = sim_opts.resolve();
            const auto result = run_experiment(c, sim_opts.execution());
            write_bundle(sim_out, result);
            std::cerr << "wrote " << sim_out << " (" << c.realizations << " realizations)\n";
        } else if (*sweep_cmd) {
            const SimConfig c = sweep_opts.resolve();
            const auto values = parse_double_list(sweep_values);
            const auto result = sweep(c, parse_sweep_param(sweep_param), values, sweep_opts.execution());
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            write_sweep(sweep_out, result, c);
            write_sweep_csv(std::cout, result);
        } else if (*tables) {
            std::optional<fs::path> dir;
            if (table_out)
                dir = *table_out;
            run_tables(table_kmax, s_max, rows, dir);
        } else if (*network) {
            Engine rng(net_seed);
            const auto topo = wire_network(sample_degree_sequence(net_n, net_kmax, rng), rng);
            std::cerr << "realized mean degree " << topo.mean_degree() << ", largest component "
                      << components(topo).largest() << '\n';
            if (net_edges.empty()) {
                write_edge_list(std::cout, topo);
            } else {
                std::ofstream out(net_edges, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write " + net_edges);
                write_edge_list(out, topo);
            }
        } else if (*preset) {
            const Preset p = figure_preset(preset_name);
            std::cerr << p.name << ": " << p.description << '\n';
            for (auto run : p.runs) {
                if (preset_realizations)
                    run.config.realizations = *preset_realizations;
                if (preset_workers)
                    run.config.workers = *preset_workers;
                const fs::path dir = fs::path(preset_out) / p.name / run.label;
                switch (run.kind) {
                case PresetKind::simulate:
                    write_bundle(dir, run_experiment(run.config));
                    break;
                case PresetKind::sweep: {
                    const auto result = sweep(run.config, run.sweep_param, run.sweep_values);
                    for (const auto& w : result.warnings)
                        std::cerr << "warning: " << w << '\n';
                    write_sweep(dir, result, run.config);
                    break;
                }
                case PresetKind::components:
                    run_components(run.config, dir);
                    break;
                case PresetKind::tables:
                    run_tables(p.table_kmax, 200, 20, dir);
                    break;
                }
                std::cerr << "  wrote " << dir.string() << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
