#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csr/model.hpp"

namespace csr {

/// kappa-by-kappa grouped graph: vertex (i, p) with 1 <= i, p <= kappa,
/// edges between groups. The question is a clique with one vertex per group.
struct KkCliqueGraph {
    int kappa = 0;
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> edges; // 1-based, normalized

    bool adjacent(int i, int p, int j, int q) const;
    void add_edge(int i, int p, int j, int q);
    void validate() const;
};

/// Simple graph with two tau-labeled cliques (vectors of distinct pairwise
/// adjacent vertices).
struct LabeledCliqueInstance {
    std::vector<std::string> vertex_ids;
    std::set<std::pair<int, int>> edges; // u < v
    int tau = 0;
    std::vector<int> source;
    std::vector<int> target;

    bool adjacent(int u, int v) const;
    void validate() const;
};

/// Directed graph R (parallel arcs collapse) with two R-words of length rho
/// (directed walks, given as vertex sequences).
struct RWordSystem {
    std::vector<std::string> vertex_ids;
    std::set<std::pair<int, int>> arcs;
    int rho = 0;
    std::vector<int> source;
    std::vector<int> target;

    void validate() const;
};

/// Value-4 elimination: per vertex whose list contains the last domain
/// value, swap it with the smallest value missing from the list. Output is
/// a 3-value instance; value_map records the per-vertex permutation.
struct Lcr4Result {
    ReconfigInstance inst;
    std::vector<std::vector<value_t>> value_map; // old value -> new value, per vertex
};
Lcr4Result lcr4_to_2csr3(const ReconfigInstance& inst);

/// Adds every missing edge with a trivial constraint; the solution graph is
/// untouched.
ReconfigInstance pad_complete(const ReconfigInstance& inst);

/// Lifts every edge vw to the hyperedge {u, v, w} with constraint
/// {first value} x C(vw) for a fresh universal vertex u; {u} is a hitting
/// set of the result.
ReconfigInstance hitting_set_gadget(const ReconfigInstance& inst);

/// The ETH lower-bound construction: K_kappa plus w1, w2 over kappa+1
/// values; yes iff the grouped graph has a multicolored clique.
ReconfigInstance kk_clique_to_2csr(const KkCliqueGraph& h);

/// Homomorphism reconfiguration on K_tau whose solution graph is isomorphic
/// to the tau-labeled-clique graph of G'.
ReconfigInstance labeled_clique_to_hr(const LabeledCliqueInstance& lc);

/// Path instance over three layered copies of V(R); solutions correspond
/// one-to-one to R-words of length rho. Requires rho >= 2.
ReconfigInstance rword_to_lhr_path(const RWordSystem& sys);

} // namespace csr
