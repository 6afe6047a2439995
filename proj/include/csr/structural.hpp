#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csr/model.hpp"
#include "csr/oracle.hpp"
#include "csr/reduce.hpp"

namespace csr {

/// Vertex cover of size <= budget by pick-an-edge branching, or nullopt.
std::optional<std::vector<int>> find_vertex_cover(const Hypergraph& graph, int budget);
/// Minimum cover by iterating the budget upward.
std::vector<int> minimum_vertex_cover(const Hypergraph& graph);

/// Substitution J|h: fixes h on its domain S and projects every constraint
/// onto the rest; `consistent` additionally certifies that h satisfies the
/// constraints lying fully inside S.
InstanceRestriction substitute(const CspInstance& csp, const PartialAssignment& h);

/// Contracted solution graph over the restrictions onto `keyset`.
struct ContractedSolutionGraph {
    std::vector<int> keyset;
    std::vector<std::vector<value_t>> nodes; // key vectors, keyset order
    std::vector<std::pair<int, int>> edges;
    int source_node = -1;
    int target_node = -1;

    bool source_target_connected() const;
};

/// Merges, per vertex v outside the cover, all hyperedges containing v into
/// the single hyperedge C u {v}. Solution set unchanged.
CspInstance merge_into_cover(const CspInstance& csp, const std::vector<int>& cover,
                             std::uint64_t budget);

/// CSG over D^C with class nonemptiness and edges decided on the 1-ary
/// substitution instances.
ContractedSolutionGraph build_vc_csg(const ReconfigInstance& inst, const std::vector<int>& cover,
                                     std::uint64_t budget);
bool solve_vc_csg(const ReconfigInstance& inst, const std::vector<int>& cover,
                  std::uint64_t budget);

/// Weighted kernel: cover merge, then weighted twin identification over the
/// independent set. Preserves the weighted shortest length exactly.
ReconfigInstance kernelize_vc_weighted(const ReconfigInstance& inst,
                                       const std::vector<int>& cover, std::uint64_t budget,
                                       int* applications = nullptr);

struct TreeDepthDecomposition {
    std::vector<int> parent; // -1 for roots
    bool exact = false;

    int depth() const;
    std::vector<int> ancestors(int v) const; // root->parent order
    std::vector<int> children(int v) const;  // ascending
    std::vector<int> roots() const;
    std::vector<int> subtree(int v) const; // pre-order, children by index
    void validate_for(const Hypergraph& primal) const;
};

/// Minimum-depth decomposition by memoized vertex-removal search for
/// n <= exact_limit; DFS-spanning-forest upper bound above that (best root
/// per component). Result is always validated.
TreeDepthDecomposition compute_treedepth_decomposition(const Hypergraph& primal,
                                                       int exact_limit = 16);

/// One hyperedge X_v = anc(v) u {v} per vertex, carrying every constraint
/// whose bottommost vertex is v. Solution set unchanged.
ReconfigInstance td_preprocess(const ReconfigInstance& inst, const TreeDepthDecomposition& tree,
                               std::uint64_t budget);

/// Canonical per-subtree triple: tree neighborhoods (pre-order indices, -1
/// for the parent), endpoint pairs, constraint tables in pre-order column
/// order.
struct IdTuples {
    std::vector<std::vector<int>> neighborhoods;
    std::vector<std::pair<value_t, value_t>> endpoints;
    std::vector<std::vector<std::vector<value_t>>> constraints;

    bool operator==(const IdTuples&) const = default;
};
IdTuples id_tuples(const ReconfigInstance& inst, const TreeDepthDecomposition& tree, int v);

struct TdKernelResult {
    ReconfigInstance inst;
    TreeDepthDecomposition tree;
    int applications = 0;
    ReductionTrace trace;
};
/// Leaves-to-root sweep identifying equal-ID-tuple sibling subtrees.
TdKernelResult kernelize_td(const ReconfigInstance& inst, const TreeDepthDecomposition& tree,
                            std::uint64_t budget);

/// Bound value that may exceed any machine integer; compare via log2.
struct KernelBound {
    bool finite_u64 = false;
    std::uint64_t value = 0;
    long double log2_value = 0;

    bool at_least(std::uint64_t n) const;
};
/// g(j): 1 for j = 1, else a^2 * (2^a * k^2 * 2^(k^a))^a with a = g(j-1).
KernelBound td_kernel_bound(int depth, int k);
/// k^2 * 2^(k^(vc+1)).
KernelBound vc_kernel_bound(int vc, int k);

} // namespace csr
