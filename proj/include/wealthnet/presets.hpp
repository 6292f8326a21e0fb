#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wealthnet/config.hpp"
#include "wealthnet/experiment.hpp"

namespace wealthnet {

enum class PresetKind
{
    simulate,    ///< run_experiment on `config`
    sweep,       ///< sweep `config` over `sweep_values` of `sweep_param`
    components,  ///< wire `config.realizations` networks and pool component sizes
    tables,      ///< generating-function tables for `table_kmax`
};

struct PresetRun
{
    std::string label;
    PresetKind kind = PresetKind::simulate;
    SimConfig config;
    SweepParam sweep_param = SweepParam::n;
    std::vector<double> sweep_values;
};

struct Preset
{
    std::string name;
    std::string description;
    std::vector<PresetRun> runs;
    std::vector<std::uint32_t> table_kmax;
};

/// Canned configuration behind each reproduced figure or table.
/// Throws std::invalid_argument for an unknown name.
Preset figure_preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace wealthnet
