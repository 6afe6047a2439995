#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "csr/model.hpp"
#include "csr/oracle.hpp"

namespace csr {

/// 2-CNF over Boolean vertices. Literal 2*v+a stands for "f(v) != a"; its
/// negation is 2*v+(1-a).
struct TwoCnf {
    int vars = 0;
    std::vector<std::array<int, 2>> clauses;

    static int lit(int v, value_t forbidden) { return 2 * v + forbidden; }
    static int negate(int lit) { return lit ^ 1; }
};

/// phi(v,w) = AND over (a,b) not in C(vw) of (v^a OR w^b). Requires k = 2 and
/// arity <= 2; unary constraints become unit clauses.
TwoCnf encode_bijunctive(const CspInstance& csp);

bool two_sat_satisfiable(const TwoCnf& cnf);

/// Is there a solution with f(v) = i? Decided on the bijunctive encoding by
/// SCC analysis (never by enumeration).
bool boolean_sat_value(const CspInstance& csp, int v, value_t i);

/// Directed graph on nodes x^{v,i} (id 2v+i). Node present iff some solution
/// assigns f(v)=i; arcs x^{v,i} -> x^{w,not j} and x^{w,j} -> x^{v,not i}
/// for every (i,j) not in C(vw), restricted to present nodes.
struct ImplicationGraph {
    int vertex_count = 0;
    std::vector<bool> node_present;       // size 2n
    std::vector<std::pair<int, int>> arcs; // node ids
};

ImplicationGraph build_implication_graph(const CspInstance& csp);

/// Vertices with a node on a directed cycle (SCC of size >= 2 or self-loop).
std::vector<int> fixed_vertices(const ImplicationGraph& ig);

/// Polynomial decision for k = 2, arity <= 2: repeatedly eliminate the
/// fixed vertices of the implication graph; source/target disagreement on a
/// fixed vertex is a no, an acyclic implication graph a yes.
bool decide_boolean(const ReconfigInstance& inst);

/// Rewrites an arity <= 2 instance with every list of size <= 2 onto domain
/// {0,1}. to_original[v] holds the original value for 0 and (when the list
/// has two values) for 1.
struct BooleanView {
    CspInstance csp;
    std::vector<std::array<value_t, 2>> to_original;
};
BooleanView boolean_view(const CspInstance& csp);

/// Satisfiability of an arity <= 2 instance whose lists all have size <= 2,
/// via the bijunctive encoding of its Boolean view.
bool solve_boolean_list_csp2(const CspInstance& csp);

/// FPT decision parameterized by k + nb: implication-graph preprocessing on
/// the Boolean-restricted instance, then a contracted solution graph over
/// the restrictions onto the non-Boolean vertices, with 2-SAT as the class
/// nonemptiness / edge oracle.
bool nb_partition_solve(const ReconfigInstance& inst,
                        std::uint64_t class_budget = default_state_budget);

} // namespace csr
