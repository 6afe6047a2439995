#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csr/model.hpp"
#include "csr/oracle.hpp"

namespace csr {

/// List-homomorphism form: simple undirected underlying graph H on the
/// domain values plus per-vertex lists, with C(vw) = E(H) n (L(v) x L(w)).
struct LhrForm {
    std::vector<std::vector<bool>> h_adjacent; // k x k, symmetric, loop-free
    std::vector<std::vector<value_t>> lists;   // per vertex, sorted

    bool h_edge(value_t a, value_t b) const { return h_adjacent[a][b]; }
};

/// Recognizes LHR form for a 2-uniform instance. H is the unique minimal
/// candidate (union of allowed pairs over all edges); loops reject. Returns
/// nullopt when some edge's constraint disagrees with E(H) n (L x L).
std::optional<LhrForm> detect_lhr(const CspInstance& csp);

/// Regenerates the constraints from (H, L); equals the original tables
/// exactly when detect_lhr accepted.
CspInstance lhr_to_csp(const LhrForm& form, const Hypergraph& graph, const Domain& domain);

struct LhrDecision {
    bool yes = false;
    std::string branch; // "component-mismatch" | "complete" | "path" | "isolated" | "mixed"
};

/// Polynomial decision for LHR with |V(H)| <= 3, per connected component of
/// G: target component of H must match the source's; a complete component
/// delegates to the oracle; the path 1-2-3 component reduces to the
/// endpoint-set equality V_s = V_t.
LhrDecision solve_lhr_k3(const ReconfigInstance& inst, const LhrForm& form,
                         std::uint64_t oracle_budget = default_state_budget);

} // namespace csr
