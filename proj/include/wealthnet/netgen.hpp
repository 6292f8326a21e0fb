#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "wealthnet/rng.hpp"

namespace wealthnet {

using AgentId = std::uint32_t;

/// Target degree per agent, each in [1, k_max].
struct DegreeSequence
{
    std::vector<std::uint32_t> assigned;
    std::uint32_t k_max = 0;

    std::size_t size() const noexcept { return assigned.size(); }
};

/// Undirected simple graph over n agents.
///
/// Fully connected topologies store no adjacency; every agent has degree n-1.
/// Explicit topologies keep sorted neighbor lists in CSR form. Instances are
/// immutable once built.
class Topology
{
public:
    static Topology fully_connected(std::size_t n);

    /// Builds an explicit topology from per-agent neighbor lists.
    /// Throws std::invalid_argument on self-loops, duplicates, out-of-range
    /// indices or asymmetric adjacency.
    static Topology from_neighbor_lists(std::vector<std::vector<AgentId>> lists);

    bool is_fully_connected() const noexcept { return fully_connected_; }
    std::size_t size() const noexcept { return n_; }
    std::size_t degree(AgentId i) const noexcept;
    double mean_degree() const noexcept;
    std::uint64_t edge_count() const noexcept;

    /// Explicit mode only; empty span in fully connected mode.
    std::span<const AgentId> neighbors(AgentId i) const noexcept;

    bool has_edge(AgentId a, AgentId b) const noexcept;

private:
    Topology() = default;

    std::size_t n_ = 0;
    bool fully_connected_ = false;
    std::vector<std::size_t> offsets_;
    std::vector<AgentId> targets_;
};

/// Knobs for the stub-matching procedure.
struct WiringOptions
{
    /// Consecutive rejected candidate draws after which a stub is abandoned.
    std::size_t retry_budget = 12;
};

/// Draws n degrees independently and uniformly from {1, ..., k_max}.
/// Requires n >= 2 and 1 <= k_max <= n-1.
DegreeSequence sample_degree_sequence(std::size_t n, std::uint32_t k_max, Engine& rng);

/// Sequential stub matching in agent index order.
///
/// Agent i draws candidates uniformly from all agents; a candidate is
/// accepted if it is not i, not already linked to i and still below its own
/// quota. After `retry_budget` consecutive rejections the stub (and the rest
/// of agent i's quota) is abandoned, so realized degrees never exceed the
/// assigned ones.
Topology wire_network(const DegreeSequence& seq, Engine& rng, const WiringOptions& options = {});

/// Complete graph on n >= 2 agents.
Topology fully_connected(std::size_t n);

struct ComponentStats
{
    /// One entry per connected component, in order of lowest member index.
    std::vector<std::size_t> sizes;
    /// Fraction of components of each size, over components with s >= 2.
    std::map<std::size_t, double> chi_emp;
    std::size_t isolated = 0;

    std::size_t largest() const noexcept;
};

/// Connected components by iterative depth-first traversal.
ComponentStats components(const Topology& topology);

/// Component-size frequencies pooled over several networks (s >= 2 only).
std::map<std::size_t, double> pooled_chi(std::span<const ComponentStats> stats);

/// Writes `i j` per line, 0-based, i < j, lexicographically sorted.
void write_edge_list(std::ostream& out, const Topology& topology);

}  // namespace wealthnet
