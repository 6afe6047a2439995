#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csr/errors.hpp"

namespace csr {

using value_t = std::int32_t;
using weight_t = std::uint64_t;

/// Domain of values. Values are dense indices 0..k-1 everywhere inside the
/// library; the labels exist only for the file format and reports.
struct Domain {
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(labels.size()); }
    int index_of(const std::string& label) const;
    static Domain of_size(int k);
    void validate() const;
};

/// Hypergraph on vertices 0..n-1. `vertex_ids` keeps the external names.
/// Hyperedges are non-empty sorted index sets without repeats.
struct Hypergraph {
    std::vector<std::string> vertex_ids;
    std::vector<std::vector<int>> hyperedges;

    int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
    int index_of(const std::string& id) const;
    void validate() const;

    /// Primal adjacency lists (sorted, deduplicated).
    std::vector<std::vector<int>> adjacency() const;
    /// N(S): vertices adjacent to S, excluding S itself. Sorted.
    std::vector<int> neighborhood(const std::vector<int>& vs) const;
    /// Connected components of the primal graph, each sorted, ordered by
    /// smallest member.
    std::vector<std::vector<int>> components() const;
};

Hypergraph primal_graph(const Hypergraph& g);
Hypergraph induced_subhypergraph(const Hypergraph& g, const std::vector<int>& keep);

/// Total assignment: value per vertex index.
using Assignment = std::vector<value_t>;

/// Partial assignment with sorted vertex domain.
struct PartialAssignment {
    std::vector<int> verts;
    std::vector<value_t> vals;

    static PartialAssignment of(const Assignment& f, std::vector<int> subset);
    std::optional<value_t> at(int v) const;
    bool defines(int v) const { return at(v).has_value(); }
    bool empty() const { return verts.empty(); }
    bool operator==(const PartialAssignment& other) const = default;
};

/// Constraint table. Scope is in canonical (ascending index) order, the
/// allowed tuples are lex-sorted and deduplicated, columns follow the scope.
struct Constraint {
    std::vector<int> scope;
    std::vector<std::vector<value_t>> allowed;

    int arity() const { return static_cast<int>(scope.size()); }
    bool contains(const std::vector<value_t>& tuple) const;
    /// True iff some allowed tuple starts with the given prefix (scope order).
    bool allows_prefix(const std::vector<value_t>& prefix) const;
    void canonicalize();
};

/// Translation of a constraint along a scope bijection phi (pairs from->to).
Constraint translate_constraint(const Constraint& c, const std::vector<std::pair<int, int>>& phi);

struct CspInstance {
    Hypergraph graph;
    Domain domain;
    std::vector<Constraint> constraints; // parallel to graph.hyperedges

    int vertex_count() const { return graph.vertex_count(); }
    int k() const { return domain.size(); }
    int max_arity() const;
    int edge_index(const std::vector<int>& hyperedge) const; // -1 if absent
};

/// Canonicalizes scopes/tuples, merges duplicate hyperedges by intersecting
/// their allowed sets, validates every invariant. The only constructor the
/// rest of the library uses.
CspInstance make_csp(Hypergraph graph, Domain domain, std::vector<Constraint> constraints);

bool is_solution(const CspInstance& csp, const Assignment& f);
std::vector<int> difference(const Assignment& f, const Assignment& g);
PartialAssignment restrict_to(const Assignment& f, std::vector<int> subset);
PartialAssignment restrict_to(const PartialAssignment& f, const std::vector<int>& subset);
bool compatible(const PartialAssignment& p, const PartialAssignment& q);

/// List L(v): values some allowed tuple assigns to v. Vertices in no
/// hyperedge get the full domain.
std::vector<value_t> vertex_list(const CspInstance& csp, int v);
std::vector<std::vector<value_t>> vertex_lists(const CspInstance& csp);
int non_boolean_count(const CspInstance& csp);

/// Folds unary constraints into an incident binary constraint, per primal
/// component; a vertex with no binary neighbor keeps its unary hyperedge.
/// Rejects arity > 2. Solution set and primal graph are unchanged.
CspInstance normalize_binary(const CspInstance& csp);

struct ReconfigInstance {
    CspInstance csp;
    Assignment source;
    Assignment target;
    std::vector<weight_t> weights; // per vertex, all >= 1

    int vertex_count() const { return csp.vertex_count(); }
};

/// Validates that source/target are solutions and weights are positive
/// (missing weights default to 1).
ReconfigInstance make_reconfig(CspInstance csp, Assignment source, Assignment target,
                               std::vector<weight_t> weights = {});

/// Restriction of an instance onto V \ removed: hyperedges are grouped by
/// X \ removed and their projected tuple sets intersected. With `sub` set
/// (its domain must be exactly `removed`) only tuples compatible with `sub`
/// are projected, i.e. the substitution of Appendix-D style algorithms;
/// `consistent` records whether `sub` satisfies every constraint that lies
/// fully inside `removed` (such constraints leave no trace otherwise).
struct InstanceRestriction {
    CspInstance csp;
    std::vector<int> old_to_new; // -1 for removed vertices
    std::vector<int> new_to_old;
    bool consistent = true;
};
InstanceRestriction restrict_instance(const CspInstance& csp, const std::vector<int>& removed,
                                      const PartialAssignment* sub = nullptr);

/// k^n with saturation at 2^63-1.
std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp);

} // namespace csr
