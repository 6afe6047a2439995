#pragma once

#include <string>
#include <utility>
#include <vector>

#include "csr/model.hpp"

namespace csr {

/// Witness that G[v1] and G[v2] are identical: disjoint vertex sets with
/// N(v1) = N(v2) = boundary, a vertex bijection phi (v1 -> v2, identity on
/// the boundary) and the derived hyperedge bijection pi(X) = phi(X).
struct IdenticalWitness {
    std::vector<int> v1;
    std::vector<int> v2;
    std::vector<int> boundary;
    std::vector<std::pair<int, int>> phi; // v1[i] -> matching v2 vertex
};

struct IdenticalCheck {
    bool ok = false;
    std::string failure; // which condition failed, empty when ok
    IdenticalWitness witness;
};

/// Checks conditions (1)-(4) for the given candidate pair. Shape errors
/// (overlapping sets, non-bijective phi) throw; condition violations are
/// reported in `failure`.
IdenticalCheck check_identical(const ReconfigInstance& inst, std::vector<int> v1,
                               std::vector<int> v2, std::vector<std::pair<int, int>> phi);

struct IdentifyResult {
    ReconfigInstance inst;
    std::vector<int> old_to_new; // -1 for removed vertices
    std::vector<int> new_to_old;
};

/// Identifies H1 with H2: removes v2, restricts source/target/constraints.
/// Reconfigurability is preserved; the result is re-validated.
IdentifyResult identify(const ReconfigInstance& inst, const IdenticalWitness& w);

/// Lifts a reconfiguration sequence of the identified instance back to the
/// original: a step on v in V1 becomes two steps, on v then on phi(v). The
/// empty sequence stands for the trivial walk at the reduced source.
std::vector<Assignment> lift_sequence(const ReconfigInstance& inst, const IdenticalWitness& w,
                                      std::vector<Assignment> reduced_seq);

/// LHR-identical check (list-homomorphism instances): graph isomorphism of
/// the induced subgraphs plus equal outside-neighborhoods, endpoint pairs
/// and lists per matched vertex. Implies check_identical succeeds for the
/// canonically extended bijections.
bool check_lhr_identical(const ReconfigInstance& inst, const std::vector<int>& v1,
                         const std::vector<int>& v2,
                         const std::vector<std::pair<int, int>>& phi);

/// Single-vertex identification that merges the removed vertex's weight
/// into the kept one; preserves the weighted shortest length exactly.
IdentifyResult identify_weighted(const ReconfigInstance& inst, int v1, int v2);

/// Log of identifications, for lifting witness walks back out of a kernel.
struct ReductionStep {
    ReconfigInstance before;
    IdenticalWitness witness;
};
struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::vector<Assignment> lift(std::vector<Assignment> walk) const;
};

/// Repeatedly identifies single-vertex identical pairs inside the candidate
/// set, lowest (v1, v2) pair first, until none remain.
ReconfigInstance greedy_identify_twins(const ReconfigInstance& inst, std::vector<int> candidates,
                                       bool weighted, ReductionTrace* trace = nullptr,
                                       int* applications = nullptr);

} // namespace csr
