#include "wealthnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wealthnet {

Wealth WealthHistogram::total_wealth() const noexcept
{
    Wealth total = 0;
    for (const auto& [w, k] : counts)
        total += w * static_cast<Wealth>(k);
    return total;
}

double entropy_term(std::uint64_t count, std::uint64_t n) noexcept
{
    if (count == 0)
        return 0.0;
    const double p = static_cast<double>(count) / static_cast<double>(n);
    return -p * std::log(p);
}

double shannon_entropy(const WealthHistogram& h)
{
    if (h.empty())
        throw std::invalid_argument("entropy of an empty histogram");
    double s = 0.0;
    for (const auto& [w, k] : h.counts)
        s += entropy_term(k, h.n);
    return s;
}

double shannon_entropy(std::span<const Wealth> wealth, std::vector<Wealth>& scratch)
{
    if (wealth.empty())
        throw std::invalid_argument("entropy of an empty population");
    scratch.assign(wealth.begin(), wealth.end());
    std::sort(scratch.begin(), scratch.end());
    const auto n = static_cast<std::uint64_t>(scratch.size());
    double s = 0.0;
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= scratch.size(); ++k) {
        if (k == scratch.size() || scratch[k] != scratch[run_start]) {
            s += entropy_term(k - run_start, n);
            run_start = k;
        }
    }
    return s;
}

double condensation_entropy(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("condensation entropy needs n >= 2");
    const auto nn = static_cast<std::uint64_t>(n);
    return entropy_term(nn - 1, nn) + entropy_term(1, nn);
}

std::size_t poverty_count(const PopulationState& state, const ExchangeRule& rule) noexcept
{
    std::size_t poor = 0;
    for (Wealth w : state.wealth())
        if (is_bankrupt(rule, w))
            ++poor;
    return poor;
}

CondensationResult detect_condensation(std::span<const SeriesPoint> series, std::size_t n)
{
    CondensationResult out;
    for (const auto& p : series) {
        if (p.poverty + 1 == n) {
            out.t_c = p.t;
            break;
        }
    }
    if (!series.empty()) {
        out.final_poverty = series.back().poverty;
        out.final_entropy = series.back().entropy;
    }
    return out;
}

WealthHistogram histogram(const PopulationState& state)
{
    return histogram(state.wealth(), state.time());
}

WealthHistogram histogram(std::span<const Wealth> wealth, std::uint64_t t)
{
    WealthHistogram h;
    h.t = t;
    h.n = wealth.size();
    for (Wealth w : wealth)
        ++h.counts[w];
    return h;
}

WealthHistogram pool(std::span<const WealthHistogram> hists)
{
    WealthHistogram out;
    if (hists.empty())
        return out;
    out.t = hists.front().t;
    for (const auto& h : hists) {
        if (h.t != out.t)
            throw std::invalid_argument("pooling histograms taken at different times");
        out.n += h.n;
        for (const auto& [w, k] : h.counts)
            out.counts[w] += k;
    }
    return out;
}

}  // namespace wealthnet
