#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csr/model.hpp"

namespace csr {

inline constexpr std::uint64_t default_state_budget = 1'000'000;

/// Explicit solution graph: all solutions in lexicographic order, edges
/// between solutions at hamming distance one, edge weight = weight of the
/// changed vertex.
struct SolutionGraph {
    std::vector<Assignment> solutions;
    std::vector<std::pair<int, int>> edges; // u < v, solution indices
    std::vector<int> changed_vertex;        // per edge
    std::vector<weight_t> edge_weights;     // per edge

    int find(const Assignment& f) const; // -1 if absent
    std::vector<std::vector<std::pair<int, int>>> adjacency() const; // (neighbor, edge)
    std::vector<int> component_ids() const;
};

/// All solutions, each once, lexicographic in the value vector. Throws
/// budget_exceeded when k^n > limit; never truncates.
std::vector<Assignment> enumerate_solutions(const CspInstance& csp, std::uint64_t limit);

SolutionGraph build_solution_graph(const CspInstance& csp, const std::vector<weight_t>& weights,
                                   std::uint64_t limit);

bool is_reconfigurable(const ReconfigInstance& inst, std::uint64_t limit);

/// Minimum total edge weight of a source->target walk; nullopt = +infinity.
std::optional<weight_t> shortest_reconfiguration(const ReconfigInstance& inst,
                                                 std::uint64_t limit);

/// Witness walk (list of solutions, source first). BFS when shortest=false,
/// Dijkstra with lowest-index predecessor tie-breaking otherwise. nullopt
/// when not reconfigurable.
std::optional<std::vector<Assignment>> oracle_walk(const ReconfigInstance& inst,
                                                   std::uint64_t limit, bool shortest);

} // namespace csr
