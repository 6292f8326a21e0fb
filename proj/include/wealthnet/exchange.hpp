#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wealthnet/netgen.hpp"
#include "wealthnet/rng.hpp"

namespace wealthnet {

/// Integer wealth units.
using Wealth = std::int64_t;

enum class RuleKind
{
    additive,
    multiplicative,
};

/// Stake rule of a two-agent fair bet.
///
/// Additive: the stake is the constant `c`. Multiplicative (yard-sale): the
/// stake is round(nu * min(w_i, w_j)). With `bankruptcy` set an agent that
/// can no longer afford the minimum stake is removed from the game for good.
struct ExchangeRule
{
    RuleKind kind = RuleKind::additive;
    Wealth c = 20;
    double nu = 0.2;
    bool bankruptcy = false;

    static ExchangeRule additive(Wealth c, bool bankruptcy = false);
    static ExchangeRule multiplicative(double nu, bool bankruptcy = false);

    /// Throws std::invalid_argument unless c >= 1 (additive) or 0 < nu < 1.
    void validate() const;
};

/// Nearest integer, halves rounded away from zero.
Wealth round_nearest(double x) noexcept;

/// Amount at stake when agents with wealth w_i and w_j meet.
Wealth stake(const ExchangeRule& rule, Wealth w_i, Wealth w_j) noexcept;

/// Poverty predicate shared by bankruptcy and the poverty metric:
/// additive w < c, multiplicative round(nu * w) == 0.
bool is_bankrupt(const ExchangeRule& rule, Wealth w) noexcept;

/// Wealth, bankruptcy flags and the MCS clock of one population.
///
/// Keeps a running poverty count and, when bankruptcy is enabled, a compact
/// list of agents still allowed to trade. The sum of wealth never changes.
class PopulationState
{
public:
    PopulationState() = default;
    PopulationState(std::size_t n, Wealth initial, const ExchangeRule& rule);
    PopulationState(std::vector<Wealth> wealth, const ExchangeRule& rule);

    std::size_t size() const noexcept { return wealth_.size(); }
    std::span<const Wealth> wealth() const noexcept { return wealth_; }
    Wealth wealth(AgentId i) const noexcept { return wealth_[i]; }
    bool bankrupt(AgentId i) const noexcept { return bankrupt_[i] != 0; }
    std::uint64_t time() const noexcept { return t_; }
    Wealth total() const noexcept { return total_; }

    /// Agents currently satisfying is_bankrupt (whether or not flagged).
    std::size_t poverty() const noexcept { return poverty_; }

    /// Agents allowed to trade. Equals size() when bankruptcy is disabled.
    std::size_t active_count() const noexcept;
    AgentId active_at(std::size_t k) const noexcept;

    /// Recomputes the sum of wealth from scratch.
    Wealth recount() const noexcept;

    void advance(std::uint64_t steps = 1) noexcept { t_ += steps; }

    /// Moves `amount` from loser to winner and refreshes both agents'
    /// poverty status and, if enabled, bankruptcy flags.
    void transfer(AgentId loser, AgentId winner, Wealth amount, const ExchangeRule& rule);

private:
    void init(const ExchangeRule& rule);
    void refresh(AgentId i, bool was_poor, const ExchangeRule& rule);
    void retire(AgentId i);

    std::vector<Wealth> wealth_;
    std::vector<std::uint8_t> bankrupt_;
    std::vector<AgentId> active_;
    std::vector<std::uint32_t> slot_;
    std::uint64_t t_ = 0;
    Wealth total_ = 0;
    std::size_t poverty_ = 0;
    bool track_active_ = false;
};

struct AgentPair
{
    AgentId first;
    AgentId second;
};

/// Picks the two agents of one MCS.
///
/// Fully connected: first uniform, second uniform among the others. Explicit
/// network: first uniform, second uniform among its neighbors; none if the
/// first agent is isolated. With bankruptcy enabled the first agent (and, in
/// fully connected mode, the second) is drawn from the non-bankrupt agents
/// only; none if fewer than two remain.
std::optional<AgentPair> select_pair(const Topology& topology, const PopulationState& state,
                                     Engine& rng);

enum class StepOutcome
{
    traded,
    rejected,
    no_pair,
};

/// Settles one bet between i and j without touching the clock.
StepOutcome apply_trade(PopulationState& state, const ExchangeRule& rule, AgentId i, AgentId j,
                        bool i_wins);

/// One Monte Carlo step: select, flip, settle, advance t by one whatever
/// happened.
StepOutcome step(PopulationState& state, const Topology& topology, const ExchangeRule& rule,
                 Engine& rng);

}  // namespace wealthnet
