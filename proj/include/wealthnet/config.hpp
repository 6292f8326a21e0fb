#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wealthnet/exchange.hpp"
#include "wealthnet/simulation.hpp"

namespace wealthnet {

struct NetworkSpec
{
    bool fully_connected = true;
    std::uint32_t k_max = 2;
};

/// Every parameter of an experiment. Defaults are the standard scenario:
/// 500 agents holding 100 units each, additive stake 20, 4x10^5 MCS,
/// 100 realizations on a fully connected population.
struct SimConfig
{
    std::size_t n = 500;
    Wealth mean_w = 100;
    ExchangeRule rule;
    NetworkSpec network;
    std::uint64_t mcs_budget = 400000;
    std::size_t realizations = 100;
    std::uint64_t seed = 20130101;
    std::vector<std::uint64_t> snapshot_times;
    std::uint64_t stride = 500;
    /// OpenMP threads for realizations; 0 uses the runtime default.
    std::size_t workers = 0;
    /// Wire one network and reuse it in every realization.
    bool single_network = false;
    std::size_t retry_budget = 12;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;

    RunParams run_params() const;
};

/// Sets one `key = value` field. Throws std::invalid_argument for unknown
/// keys or malformed values.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Reads flat `key = value` lines ('#' starts a comment) on top of `base`.
SimConfig load_config(const std::filesystem::path& path, SimConfig base = {});

/// Resolved configuration in the same `key = value` format.
std::string to_key_values(const SimConfig& config);

std::vector<std::uint64_t> parse_u64_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace wealthnet
