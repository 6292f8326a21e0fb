#include "wealthnet/presets.hpp"

#include <stdexcept>

namespace wealthnet {

namespace {

// Budget for bankruptcy runs; condensation ends them early.
constexpr std::uint64_t condensation_budget = 100'000'000;

SimConfig base(RuleKind kind, bool bankruptcy)
{
    SimConfig c;
    c.rule.kind = kind;
    c.rule.bankruptcy = bankruptcy;
    return c;
}

SimConfig on_network(SimConfig c, std::uint32_t k_max)
{
    c.network.fully_connected = false;
    c.network.k_max = k_max;
    return c;
}

PresetRun simulate(std::string label, SimConfig c)
{
    return {std::move(label), PresetKind::simulate, std::move(c), SweepParam::n, {}};
}

PresetRun sweep_run(std::string label, SimConfig c, SweepParam p, std::vector<double> values)
{
    return {std::move(label), PresetKind::sweep, std::move(c), p, std::move(values)};
}

const std::vector<std::uint32_t> paper_kmax{2, 3, 4, 20};

}  // namespace

std::vector<std::string> preset_names()
{
    return {"fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5", "fig7", "fig8", "fig10", "fig11", "fig12", "tables"};
}

Preset figure_preset(std::string_view name)
{
    Preset p;
    p.name = std::string(name);
    const std::vector<std::uint64_t> evolution{0, 1000, 10000, 100000, 399000, 399500};

    if (name == "fig1a" || name == "fig1b") {
        const bool additive = name == "fig1a";
        p.description = additive ? "wealth distribution over time, additive, fully connected"
                                 : "wealth distribution over time, multiplicative, fully connected";
        SimConfig c = base(additive ? RuleKind::additive : RuleKind::multiplicative, false);
        c.snapshot_times = evolution;
        p.runs.push_back(simulate(additive ? "additive" : "multiplicative", c));
    } else if (name == "fig2" || name == "fig3") {
        const bool bankruptcy = name == "fig3";
        p.description = bankruptcy ? "entropy and poverty with bankruptcy, fully connected"
                                   : "entropy and poverty without bankruptcy, fully connected";
        for (RuleKind kind : {RuleKind::additive, RuleKind::multiplicative}) {
            SimConfig c = base(kind, bankruptcy);
            if (bankruptcy)
                c.mcs_budget = condensation_budget;
            p.runs.push_back(simulate(kind == RuleKind::additive ? "additive" : "multiplicative", c));
        }
    } else if (name == "fig4") {
        p.description = "condensation time against N with bankruptcy";
        for (RuleKind kind : {RuleKind::additive, RuleKind::multiplicative}) {
            SimConfig c = base(kind, true);
            c.mcs_budget = condensation_budget;
            c.realizations = 50;
            c.stride = 0;
            p.runs.push_back(sweep_run(kind == RuleKind::additive ? "additive" : "multiplicative", c,
                                       SweepParam::n, {100, 200, 400, 800}));
        }
    } else if (name == "fig5") {
        p.description = "condensation time against stake with bankruptcy";
        SimConfig add = base(RuleKind::additive, true);
        add.mcs_budget = condensation_budget;
        add.realizations = 50;
        add.stride = 0;
        std::vector<double> stakes;
        for (int dw = 10; dw <= 100; dw += 2)
            stakes.push_back(dw);
        p.runs.push_back(sweep_run("additive", add, SweepParam::dw, stakes));
        SimConfig mul = base(RuleKind::multiplicative, true);
        mul.mcs_budget = condensation_budget;
        mul.realizations = 50;
        mul.stride = 0;
        p.runs.push_back(sweep_run("multiplicative", mul, SweepParam::nu, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}));
    } else if (name == "fig7" || name == "fig10") {
        const bool additive = name == "fig7";
        p.description = additive ? "entropy and poverty on random networks, additive"
                                 : "entropy and poverty on random networks, multiplicative";
        for (auto k : paper_kmax)
            p.runs.push_back(simulate("kmax" + std::to_string(k),
                                      on_network(base(additive ? RuleKind::additive : RuleKind::multiplicative, false), k)));
    } else if (name == "fig8" || name == "fig11") {
        const bool additive = name == "fig8";
        p.description = additive ? "wealth distribution at t=399000 on random networks, additive"
                                 : "wealth classes at t=399000 on random networks, multiplicative";
        for (auto k : paper_kmax) {
            SimConfig c = on_network(base(additive ? RuleKind::additive : RuleKind::multiplicative, false), k);
            c.mcs_budget = 399000;
            p.runs.push_back(simulate("kmax" + std::to_string(k), c));
        }
    } else if (name == "fig12") {
        p.description = "component size distribution of the random networks";
        for (auto k : paper_kmax) {
            SimConfig c = on_network(base(RuleKind::additive, false), k);
            p.runs.push_back({"kmax" + std::to_string(k), PresetKind::components, c, SweepParam::n, {}});
        }
    } else if (name == "tables") {
        p.description = "generating-function moments, fixed points and component sizes";
        p.table_kmax = paper_kmax;
        p.runs.push_back({"tables", PresetKind::tables, SimConfig{}, SweepParam::n, {}});
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return p;
}

}  // namespace wealthnet
