#include "wealthnet/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wealthnet {

ExchangeRule ExchangeRule::additive(Wealth c, bool bankruptcy)
{
    ExchangeRule rule;
    rule.kind = RuleKind::additive;
    rule.c = c;
    rule.bankruptcy = bankruptcy;
    rule.validate();
    return rule;
}

ExchangeRule ExchangeRule::multiplicative(double nu, bool bankruptcy)
{
    ExchangeRule rule;
    rule.kind = RuleKind::multiplicative;
    rule.nu = nu;
    rule.bankruptcy = bankruptcy;
    rule.validate();
    return rule;
}

void ExchangeRule::validate() const
{
    if (kind == RuleKind::additive && c < 1)
        throw std::invalid_argument("additive stake c must be >= 1");
    if (kind == RuleKind::multiplicative && !(nu > 0.0 && nu < 1.0))
        throw std::invalid_argument("multiplicative rate nu must lie in (0, 1)");
}

Wealth round_nearest(double x) noexcept
{
    return static_cast<Wealth>(std::llround(x));
}

Wealth stake(const ExchangeRule& rule, Wealth w_i, Wealth w_j) noexcept
{
    if (rule.kind == RuleKind::additive)
        return rule.c;
    return round_nearest(rule.nu * static_cast<double>(std::min(w_i, w_j)));
}

bool is_bankrupt(const ExchangeRule& rule, Wealth w) noexcept
{
    if (rule.kind == RuleKind::additive)
        return w < rule.c;
    return round_nearest(rule.nu * static_cast<double>(w)) == 0;
}

PopulationState::PopulationState(std::size_t n, Wealth initial, const ExchangeRule& rule)
    : wealth_(n, initial)
{
    if (initial < 0)
        throw std::invalid_argument("initial wealth must be non-negative");
    init(rule);
}

PopulationState::PopulationState(std::vector<Wealth> wealth, const ExchangeRule& rule)
    : wealth_(std::move(wealth))
{
    if (std::any_of(wealth_.begin(), wealth_.end(), [](Wealth w) { return w < 0; }))
        throw std::invalid_argument("wealth must be non-negative");
    init(rule);
}

void PopulationState::init(const ExchangeRule& rule)
{
    const std::size_t n = wealth_.size();
    total_ = recount();
    bankrupt_.assign(n, 0);
    track_active_ = rule.bankruptcy;
    poverty_ = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (is_bankrupt(rule, wealth_[i]))
            ++poverty_;
    if (!track_active_)
        return;
    slot_.assign(n, 0);
    active_.clear();
    active_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_bankrupt(rule, wealth_[i])) {
            bankrupt_[i] = 1;
            continue;
        }
        slot_[i] = static_cast<std::uint32_t>(active_.size());
        active_.push_back(static_cast<AgentId>(i));
    }
}

std::size_t PopulationState::active_count() const noexcept
{
    return track_active_ ? active_.size() : wealth_.size();
}

AgentId PopulationState::active_at(std::size_t k) const noexcept
{
    return track_active_ ? active_[k] : static_cast<AgentId>(k);
}

Wealth PopulationState::recount() const noexcept
{
    return std::accumulate(wealth_.begin(), wealth_.end(), Wealth{0});
}

void PopulationState::transfer(AgentId loser, AgentId winner, Wealth amount,
                               const ExchangeRule& rule)
{
    const bool loser_was_poor = is_bankrupt(rule, wealth_[loser]);
    const bool winner_was_poor = is_bankrupt(rule, wealth_[winner]);
    wealth_[loser] -= amount;
    wealth_[winner] += amount;
    refresh(loser, loser_was_poor, rule);
    refresh(winner, winner_was_poor, rule);
}

void PopulationState::refresh(AgentId i, bool was_poor, const ExchangeRule& rule)
{
    const bool poor = is_bankrupt(rule, wealth_[i]);
    if (poor != was_poor) {
        if (poor)
            ++poverty_;
        else
            --poverty_;
    }
    if (track_active_ && poor && !bankrupt_[i])
        retire(i);
}

void PopulationState::retire(AgentId i)
{
    bankrupt_[i] = 1;
    const std::uint32_t pos = slot_[i];
    const AgentId last = active_.back();
    active_[pos] = last;
    slot_[last] = pos;
    active_.pop_back();
}

std::optional<AgentPair> select_pair(const Topology& topology, const PopulationState& state,
                                     Engine& rng)
{
    const std::size_t active = state.active_count();
    if (active < 2)
        return std::nullopt;

    const AgentId i = state.active_at(draw_below(rng, active));
    if (topology.is_fully_connected()) {
        // Draw among the remaining active - 1 agents by skipping i's slot.
        std::size_t k = draw_below(rng, active - 1);
        AgentId j = state.active_at(k);
        if (j == i)
            j = state.active_at(active - 1);
        return AgentPair{i, j};
    }

    const auto nb = topology.neighbors(i);
    if (nb.empty())
        return std::nullopt;
    return AgentPair{i, nb[draw_below(rng, nb.size())]};
}

StepOutcome apply_trade(PopulationState& state, const ExchangeRule& rule, AgentId i, AgentId j,
                        bool i_wins)
{
    if (rule.bankruptcy && (state.bankrupt(i) || state.bankrupt(j)))
        return StepOutcome::rejected;
    const Wealth dw = stake(rule, state.wealth(i), state.wealth(j));
    const AgentId winner = i_wins ? i : j;
    const AgentId loser = i_wins ? j : i;
    if (dw <= 0 || state.wealth(loser) < dw)
        return StepOutcome::rejected;
    state.transfer(loser, winner, dw, rule);
    return StepOutcome::traded;
}

StepOutcome step(PopulationState& state, const Topology& topology, const ExchangeRule& rule,
                 Engine& rng)
{
    StepOutcome outcome = StepOutcome::no_pair;
    if (const auto pair = select_pair(topology, state, rng))
        outcome = apply_trade(state, rule, pair->first, pair->second, flip(rng));
    state.advance();
    return outcome;
}

}  // namespace wealthnet
