#include "wealthnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wealthnet {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("bad value for '" + std::string(key) + "': '" +
                                    std::string(text) + "'");
    return value;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw std::invalid_argument("bad boolean for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
}

template <class T>
std::vector<T> parse_list(std::string_view text)
{
    std::vector<T> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (!item.empty())
            out.push_back(parse_number<T>("list", item));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> parse_u64_list(std::string_view text)
{
    return parse_list<std::uint64_t>(text);
}

std::vector<double> parse_double_list(std::string_view text)
{
    return parse_list<double>(text);
}

void SimConfig::validate() const
{
    if (n < 2)
        throw std::invalid_argument("n must be at least 2");
    if (mean_w < 1)
        throw std::invalid_argument("mean_w must be at least 1");
    if (realizations < 1)
        throw std::invalid_argument("realizations must be at least 1");
    rule.validate();
    if (!network.fully_connected) {
        if (network.k_max < 1 || network.k_max >= n)
            throw std::invalid_argument("kmax must lie in [1, n-1]");
        if (retry_budget < 1)
            throw std::invalid_argument("retry_budget must be at least 1");
    }
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw std::invalid_argument("snapshot times must be sorted");
    if (!snapshot_times.empty() && snapshot_times.back() > mcs_budget)
        throw std::invalid_argument("snapshot time beyond the MCS budget");
}

RunParams SimConfig::run_params() const
{
    RunParams p;
    p.mean_w = mean_w;
    p.rule = rule;
    p.mcs_budget = mcs_budget;
    p.snapshot_times = snapshot_times;
    p.stride = stride;
    return p;
}

void apply_setting(SimConfig& c, std::string_view key, std::string_view value)
{
    key = trim(key);
    value = trim(value);
    if (key == "n")
        c.n = parse_number<std::size_t>(key, value);
    else if (key == "mean_w")
        c.mean_w = parse_number<Wealth>(key, value);
    else if (key == "rule") {
        if (value == "additive")
            c.rule.kind = RuleKind::additive;
        else if (value == "multiplicative")
            c.rule.kind = RuleKind::multiplicative;
        else
            throw std::invalid_argument("rule must be additive or multiplicative");
    } else if (key == "c")
        c.rule.c = parse_number<Wealth>(key, value);
    else if (key == "nu")
        c.rule.nu = parse_number<double>(key, value);
    else if (key == "bankruptcy")
        c.rule.bankruptcy = parse_bool(key, value);
    else if (key == "network") {
        if (value == "fully-connected")
            c.network.fully_connected = true;
        else if (value == "random")
            c.network.fully_connected = false;
        else
            throw std::invalid_argument("network must be fully-connected or random");
    } else if (key == "kmax") {
        c.network.k_max = parse_number<std::uint32_t>(key, value);
        c.network.fully_connected = false;
    } else if (key == "mcs")
        c.mcs_budget = parse_number<std::uint64_t>(key, value);
    else if (key == "realizations")
        c.realizations = parse_number<std::size_t>(key, value);
    else if (key == "seed")
        c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "snapshots")
        c.snapshot_times = parse_u64_list(value);
    else if (key == "stride")
        c.stride = parse_number<std::uint64_t>(key, value);
    else if (key == "workers")
        c.workers = parse_number<std::size_t>(key, value);
    else if (key == "single_network")
        c.single_network = parse_bool(key, value);
    else if (key == "retry_budget")
        c.retry_budget = parse_number<std::size_t>(key, value);
    else
        throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    }
    return base;
}

std::string to_key_values(const SimConfig& c)
{
    std::ostringstream out;
    out << "n = " << c.n << '\n'
        << "mean_w = " << c.mean_w << '\n'
        << "rule = " << (c.rule.kind == RuleKind::additive ? "additive" : "multiplicative") << '\n'
        << "c = " << c.rule.c << '\n';
    char nu[32];
    const auto written = std::to_chars(nu, nu + sizeof nu, c.rule.nu).ptr;
    out << "nu = " << std::string_view(nu, static_cast<std::size_t>(written - nu)) << '\n'
        << "bankruptcy = " << (c.rule.bankruptcy ? "true" : "false") << '\n'
        << "network = " << (c.network.fully_connected ? "fully-connected" : "random") << '\n';
    if (!c.network.fully_connected)
        out << "kmax = " << c.network.k_max << '\n'
            << "retry_budget = " << c.retry_budget << '\n'
            << "single_network = " << (c.single_network ? "true" : "false") << '\n';
    out << "mcs = " << c.mcs_budget << '\n'
        << "realizations = " << c.realizations << '\n'
        << "seed = " << c.seed << '\n'
        << "stride = " << c.stride << '\n'
        << "snapshots = ";
    for (std::size_t k = 0; k < c.snapshot_times.size(); ++k)
        out << (k ? "," : "") << c.snapshot_times[k];
    out << '\n';
    return out.str();
}

}  // namespace wealthnet
