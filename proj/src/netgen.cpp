#include "wealthnet/netgen.hpp"

#include <algorithm>

#include <ostream>

#include <stdexcept>
#include <string>

namespace wealthnet {

Topology Topology::fully_connected(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("fully connected topology needs at least 2 agents");
    Topology t;
    t.n_ = n;
    t.fully_connected_ = true;
    return t;
}

Topology Topology::from_neighbor_lists(std::vector<std::vector<AgentId>> lists)
{
    const std::size_t n = lists.size();
    Topology t;
    t.n_ = n;
    t.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& nb = lists[i];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("duplicate edge at agent " + std::to_string(i));
        for (AgentId j : nb) {
            if (j >= n)
                throw std::invalid_argument("neighbor index out of range at agent " + std::to_string(i));
            if (j == i)
                throw std::invalid_argument("self-loop at agent " + std::to_string(i));
        }
        t.offsets_[i + 1] = t.offsets_[i] + nb.size();
    }
    t.targets_.reserve(t.offsets_[n]);
    for (const auto& nb : lists)
        t.targets_.insert(t.targets_.end(), nb.begin(), nb.end());
    for (std::size_t i = 0; i < n; ++i)
        for (AgentId j : t.neighbors(static_cast<AgentId>(i)))
            if (!t.has_edge(j, static_cast<AgentId>(i)))
                throw std::invalid_argument("asymmetric adjacency between " + std::to_string(i) +
                                            " and " + std::to_string(j));
    return t;
}

std::size_t Topology::degree(AgentId i) const noexcept
{
    if (fully_connected_)
        return n_ - 1;
    return offsets_[i + 1] - offsets_[i];
}

double Topology::mean_degree() const noexcept
{
    if (n_ == 0)
        return 0.0;
    return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(n_);
}

std::uint64_t Topology::edge_count() const noexcept
{
    if (fully_connected_)
        return static_cast<std::uint64_t>(n_) * (n_ - 1) / 2;
    return targets_.size() / 2;
}

std::span<const AgentId> Topology::neighbors(AgentId i) const noexcept
{
    if (fully_connected_)
        return {};
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
}

bool Topology::has_edge(AgentId a, AgentId b) const noexcept
{
    if (a >= n_ || b >= n_ || a == b)
        return false;
    if (fully_connected_)
        return true;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

DegreeSequence sample_degree_sequence(std::size_t n, std::uint32_t k_max, Engine& rng)
{
    if (n < 2)
        throw std::invalid_argument("degree sequence needs n >= 2");
    if (k_max < 1)
        throw std::invalid_argument("k_max must be at least 1");
    if (k_max >= n)
        throw std::invalid_argument("k_max must be below n so links can be distinct");
    DegreeSequence seq;
    seq.k_max = k_max;
    seq.assigned.resize(n);
    std::uniform_int_distribution<std::uint32_t> dist(1, k_max);
    for (auto& k : seq.assigned)
        k = dist(rng);
    return seq;
}

Topology wire_network(const DegreeSequence& seq, Engine& rng, const WiringOptions& options)
{
    const std::size_t n = seq.size();
    std::vector<std::vector<AgentId>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        adj[i].reserve(seq.assigned[i]);

    auto linked = [&](std::size_t a, AgentId b) {
        const auto& nb = adj[a];
        return std::find(nb.begin(), nb.end(), b) != nb.end();
    };

    for (std::size_t i = 0; i < n; ++i) {
        while (adj[i].size() < seq.assigned[i]) {
            bool placed = false;
            for (std::size_t attempt = 0; attempt < options.retry_budget; ++attempt) {
                const auto j = static_cast<AgentId>(draw_below(rng, n));
                if (j == i || adj[j].size() >= seq.assigned[j] || linked(i, j))
                    continue;
                adj[i].push_back(j);
                adj[j].push_back(static_cast<AgentId>(i));
                placed = true;
                break;
            }
            if (!placed)
                break;
        }
    }
    return Topology::from_neighbor_lists(std::move(adj));
}

Topology fully_connected(std::size_t n)
{
    return Topology::fully_connected(n);
}

std::size_t ComponentStats::largest() const noexcept
{
    return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

ComponentStats components(const Topology& topology)
{
    ComponentStats stats;
    const std::size_t n = topology.size();
    if (topology.is_fully_connected()) {
        stats.sizes = {n};
        stats.chi_emp[n] = 1.0;
        return stats;
    }

    std::vector<bool> seen(n, false);
    std::vector<AgentId> frontier;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        seen[root] = true;
        frontier.assign(1, static_cast<AgentId>(root));
        std::size_t size = 0;
        while (!frontier.empty()) {
            const AgentId v = frontier.back();
            frontier.pop_back();
            ++size;
            for (AgentId w : topology.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    frontier.push_back(w);
                }
            }
        }
        stats.sizes.push_back(size);
    }

    std::size_t counted = 0;
    for (std::size_t s : stats.sizes) {
        if (s == 1) {
            ++stats.isolated;
            continue;
        }
        stats.chi_emp[s] += 1.0;
        ++counted;
    }
    for (auto& [s, f] : stats.chi_emp)
        f /= static_cast<double>(counted);
    return stats;
}

std::map<std::size_t, double> pooled_chi(std::span<const ComponentStats> stats)
{
    std::map<std::size_t, double> pooled;
    double total = 0.0;
    for (const auto& st : stats)
        for (std::size_t s : st.sizes)
            if (s >= 2) {
                pooled[s] += 1.0;
                total += 1.0;
            }
    if (total > 0.0)
        for (auto& [s, f] : pooled)
            f /= total;
    return pooled;
}

void write_edge_list(std::ostream& out, const Topology& topology)
{
    const std::size_t n = topology.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (topology.is_fully_connected()) {
            for (std::size_t j = i + 1; j < n; ++j)
                out << i << ' ' << j << '\n';
            continue;
        }
        for (AgentId j : topology.neighbors(static_cast<AgentId>(i)))
            if (j > i)
                out << i << ' ' << j << '\n';
    }
}

}  // namespace wealthnet
