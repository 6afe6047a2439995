#include "csr/implication.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csr {

namespace {

/// Tarjan strongly connected components; returns component id per node.
std::vector<int> scc_ids(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;

    // Explicit stack; the recursion can get deep on chain-like graphs.
    struct Frame {
        int v;
        std::size_t child = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < adj[f.v].size()) {
                const int w = adj[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                const int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return comp;
}

std::vector<std::vector<int>> cnf_implication_adjacency(const TwoCnf& cnf) {
    std::vector<std::vector<int>> adj(2 * cnf.vars);
    for (const auto& cl : cnf.clauses) {
        adj[TwoCnf::negate(cl[0])].push_back(cl[1]);
        adj[TwoCnf::negate(cl[1])].push_back(cl[0]);
    }
    return adj;
}

} // namespace

TwoCnf encode_bijunctive(const CspInstance& csp) {
    require(csp.k() == 2, errc::wrong_algorithm, "bijunctive encoding requires k = 2");
    require(csp.max_arity() <= 2, errc::wrong_algorithm,
            "bijunctive encoding requires arity <= 2");
    TwoCnf cnf;
    cnf.vars = csp.vertex_count();
    for (const Constraint& c : csp.constraints) {
        if (c.arity() == 2) {
            const int v = c.scope[0], w = c.scope[1];
            for (value_t a = 0; a < 2; ++a)
                for (value_t b = 0; b < 2; ++b)
                    if (!c.contains({a, b}))
                        cnf.clauses.push_back({TwoCnf::lit(v, a), TwoCnf::lit(w, b)});
        } else {
            const int v = c.scope[0];
            for (value_t a = 0; a < 2; ++a)
                if (!c.contains({a}))
                    cnf.clauses.push_back({TwoCnf::lit(v, a), TwoCnf::lit(v, a)});
        }
    }
    return cnf;
}

bool two_sat_satisfiable(const TwoCnf& cnf) {
    auto comp = scc_ids(2 * cnf.vars, cnf_implication_adjacency(cnf));
    for (int v = 0; v < cnf.vars; ++v)
        if (comp[2 * v] == comp[2 * v + 1]) return false;
    return true;
}

bool boolean_sat_value(const CspInstance& csp, int v, value_t i) {
    require(v >= 0 && v < csp.vertex_count(), errc::malformed_instance,
            "boolean_sat_value: unknown vertex");
    require(i == 0 || i == 1, errc::malformed_assignment,
            "boolean_sat_value: value must be Boolean");
    TwoCnf cnf = encode_bijunctive(csp);
    // f(v) = i is the unit clause v^{not i}.
    cnf.clauses.push_back({TwoCnf::lit(v, 1 - i), TwoCnf::lit(v, 1 - i)});
    return two_sat_satisfiable(cnf);
}

ImplicationGraph build_implication_graph(const CspInstance& csp) {
    require(csp.k() == 2, errc::wrong_algorithm, "implication graph requires k = 2");
    require(csp.max_arity() <= 2, errc::wrong_algorithm,
            "implication graph requires arity <= 2");
    ImplicationGraph ig;
    ig.vertex_count = csp.vertex_count();
    ig.node_present.assign(2 * csp.vertex_count(), false);
    for (int v = 0; v < csp.vertex_count(); ++v)
        for (value_t i = 0; i < 2; ++i)
            ig.node_present[2 * v + i] = boolean_sat_value(csp, v, i);

    std::set<std::pair<int, int>> arcs;
    for (const Constraint& c : csp.constraints) {
        if (c.arity() != 2) continue;
        const int v = c.scope[0], w = c.scope[1];
        for (value_t i = 0; i < 2; ++i)
            for (value_t j = 0; j < 2; ++j) {
                if (c.contains({i, j})) continue;
                if (ig.node_present[2 * v + i] && ig.node_present[2 * w + (1 - j)])
                    arcs.insert({2 * v + i, 2 * w + (1 - j)});
                if (ig.node_present[2 * w + j] && ig.node_present[2 * v + (1 - i)])
                    arcs.insert({2 * w + j, 2 * v + (1 - i)});
            }
    }
    ig.arcs.assign(arcs.begin(), arcs.end());
    return ig;
}

std::vector<int> fixed_vertices(const ImplicationGraph& ig) {
    const int n = 2 * ig.vertex_count;
    std::vector<std::vector<int>> adj(n);
    std::vector<bool> self_loop(n, false);
    for (auto [a, b] : ig.arcs) {
        if (a == b) self_loop[a] = true;
        adj[a].push_back(b);
    }
    auto comp = scc_ids(n, adj);
    std::vector<int> comp_size(n, 0);
    for (int x = 0; x < n; ++x)
        if (ig.node_present[x]) ++comp_size[comp[x]];
    std::vector<int> out;
    for (int v = 0; v < ig.vertex_count; ++v) {
        bool fixed = false;
        for (value_t i = 0; i < 2 && !fixed; ++i) {
            const int x = 2 * v + i;
            if (ig.node_present[x] && (comp_size[comp[x]] >= 2 || self_loop[x])) fixed = true;
        }
        if (fixed) out.push_back(v);
    }
    return out;
}

bool decide_boolean(const ReconfigInstance& inst) {
    require(inst.csp.k() == 2, errc::wrong_algorithm, "decide_boolean requires k = 2");
    require(inst.csp.max_arity() <= 2, errc::wrong_algorithm,
            "decide_boolean requires arity <= 2");
    require(is_solution(inst.csp, inst.source), errc::malformed_instance,
            "source is not a solution");
    require(is_solution(inst.csp, inst.target), errc::malformed_instance,
            "target is not a solution");

    CspInstance csp = inst.csp;
    Assignment fs = inst.source, ft = inst.target;
    const int rounds = inst.vertex_count() + 1;
    for (int round = 0; round < rounds; ++round) {
        if (csp.vertex_count() == 0) return true;
        ImplicationGraph ig = build_implication_graph(normalize_binary(csp));
        std::vector<int> fix = fixed_vertices(ig);
        if (fix.empty()) return true; // acyclic: the solution graph is connected
        PartialAssignment hs = restrict_to(fs, fix);
        PartialAssignment ht = restrict_to(ft, fix);
        if (!(hs == ht)) return false;
        InstanceRestriction sub = restrict_instance(csp, fix, &hs);
        Assignment nfs, nft;
        for (int v : sub.new_to_old) {
            nfs.push_back(fs[v]);
            nft.push_back(ft[v]);
        }
        csp = std::move(sub.csp);
        fs = std::move(nfs);
        ft = std::move(nft);
    }
    fail(errc::malformed_instance, "decide_boolean: elimination loop failed to terminate");
}

BooleanView boolean_view(const CspInstance& csp) {
    require(csp.max_arity() <= 2, errc::wrong_algorithm, "boolean_view requires arity <= 2");
    BooleanView view;
    view.to_original.assign(csp.vertex_count(), {-1, -1});
    std::vector<std::map<value_t, value_t>> from_original(csp.vertex_count());
    for (int v = 0; v < csp.vertex_count(); ++v) {
        std::vector<value_t> list = vertex_list(csp, v);
        require(list.size() <= 2, errc::wrong_algorithm,
                "boolean_view requires every list of size <= 2");
        for (std::size_t i = 0; i < list.size(); ++i) {
            view.to_original[v][i] = list[i];
            from_original[v][list[i]] = static_cast<value_t>(i);
        }
    }
    std::vector<Constraint> cons;
    for (const Constraint& c : csp.constraints) {
        Constraint nc;
        nc.scope = c.scope;
        for (const auto& t : c.allowed) {
            std::vector<value_t> nt(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) nt[i] = from_original[c.scope[i]].at(t[i]);
            nc.allowed.push_back(std::move(nt));
        }
        cons.push_back(std::move(nc));
    }
    Hypergraph g = csp.graph;
    view.csp = make_csp(std::move(g), Domain::of_size(2), std::move(cons));
    return view;
}

bool solve_boolean_list_csp2(const CspInstance& csp) {
    for (const Constraint& c : csp.constraints)
        if (c.allowed.empty()) return false;
    BooleanView view = boolean_view(csp);
    TwoCnf cnf = encode_bijunctive(view.csp);
    // Lists of size one pin their vertex to view value 0.
    for (int v = 0; v < csp.vertex_count(); ++v)
        if (view.to_original[v][1] < 0)
            cnf.clauses.push_back({TwoCnf::lit(v, 1), TwoCnf::lit(v, 1)});
    return two_sat_satisfiable(cnf);
}

namespace {

CspInstance intersect_constraints(const CspInstance& a, const CspInstance& b) {
    require(a.graph.hyperedges == b.graph.hyperedges, errc::malformed_instance,
            "constraint intersection requires identical hypergraphs");
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < a.constraints.size(); ++i) {
        Constraint c;
        c.scope = a.constraints[i].scope;
        std::set_intersection(a.constraints[i].allowed.begin(), a.constraints[i].allowed.end(),
                              b.constraints[i].allowed.begin(), b.constraints[i].allowed.end(),
                              std::back_inserter(c.allowed));
        cons.push_back(std::move(c));
    }
    Hypergraph g = a.graph;
    return make_csp(std::move(g), a.domain, std::move(cons));
}

} // namespace

bool nb_partition_solve(const ReconfigInstance& inst, std::uint64_t class_budget) {
    require(inst.csp.max_arity() <= 2, errc::wrong_algorithm,
            "nb_partition_solve requires arity <= 2");
    require(is_solution(inst.csp, inst.source), errc::malformed_instance,
            "source is not a solution");
    require(is_solution(inst.csp, inst.target), errc::malformed_instance,
            "target is not a solution");

    CspInstance csp = inst.csp;
    Assignment fs = inst.source, ft = inst.target;

    // Preprocessing loop (Boolean-restricted implication graph, fixed-vertex
    // elimination) until the partition over the non-Boolean vertices is
    // proper. Each effective round removes at least one vertex.
    std::vector<int> non_boolean;
    const int rounds = inst.vertex_count() + 1;
    for (int round = 0;; ++round) {
        require(round < rounds, errc::malformed_instance,
                "nb_partition_solve: elimination loop failed to terminate");
        auto lists = vertex_lists(csp);
        std::vector<int> boolean_verts;
        non_boolean.clear();
        for (int v = 0; v < csp.vertex_count(); ++v)
            (lists[v].size() <= 2 ? boolean_verts : non_boolean).push_back(v);
        if (boolean_verts.empty()) break;

        InstanceRestriction res = restrict_instance(csp, non_boolean, nullptr);
        BooleanView view = boolean_view(res.csp);
        ImplicationGraph ig = build_implication_graph(normalize_binary(view.csp));
        std::vector<int> fix_res = fixed_vertices(ig);
        if (fix_res.empty()) break;

        std::vector<int> fix;
        for (int v : fix_res) fix.push_back(res.new_to_old[v]);
        std::sort(fix.begin(), fix.end());
        PartialAssignment hs = restrict_to(fs, fix);
        PartialAssignment ht = restrict_to(ft, fix);
        if (!(hs == ht)) return false;
        InstanceRestriction sub = restrict_instance(csp, fix, &hs);
        Assignment nfs, nft;
        for (int v : sub.new_to_old) {
            nfs.push_back(fs[v]);
            nft.push_back(ft[v]);
        }
        csp = std::move(sub.csp);
        fs = std::move(nfs);
        ft = std::move(nft);
    }

    // Contracted solution graph over D^{V_N}.
    const std::uint64_t classes =
        pow_saturating(static_cast<std::uint64_t>(csp.k()), non_boolean.size());
    require(classes <= class_budget, errc::budget_exceeded,
            "nb_partition_solve: k^nb exceeds the class budget");

    struct Node {
        std::vector<value_t> key;
        CspInstance sub;
    };
    std::vector<Node> nodes;
    std::map<std::vector<value_t>, int> node_of;
    std::vector<value_t> key(non_boolean.size(), 0);
    const int k = csp.k();
    while (true) {
        PartialAssignment h;
        h.verts = non_boolean;
        h.vals = key;
        InstanceRestriction sub = restrict_instance(csp, non_boolean, &h);
        if (sub.consistent && solve_boolean_list_csp2(sub.csp)) {
            node_of[key] = static_cast<int>(nodes.size());
            nodes.push_back({key, std::move(sub.csp)});
        }
        // odometer over D^{V_N}
        std::size_t pos = 0;
        while (pos < key.size() && ++key[pos] == k) key[pos++] = 0;
        if (pos == key.size()) break;
    }

    auto source_key = restrict_to(fs, non_boolean).vals;
    auto target_key = restrict_to(ft, non_boolean).vals;
    auto sit = node_of.find(source_key);
    auto tit = node_of.find(target_key);
    require(sit != node_of.end() && tit != node_of.end(), errc::malformed_instance,
            "nb_partition_solve: endpoint class missing from the CSG");
    if (sit->second == tit->second) return true;

    // BFS over classes; neighbors differ on one non-Boolean vertex and the
    // two substitutions must share a solution.
    std::vector<bool> seen(nodes.size(), false);
    std::vector<int> queue{sit->second};
    seen[sit->second] = true;
    while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        std::vector<value_t> probe = nodes[u].key;
        for (std::size_t p = 0; p < probe.size(); ++p) {
            const value_t orig = probe[p];
            for (value_t a = 0; a < k; ++a) {
                if (a == orig) continue;
                probe[p] = a;
                auto it = node_of.find(probe);
                if (it != node_of.end() && !seen[it->second]) {
                    CspInstance common = intersect_constraints(nodes[u].sub, nodes[it->second].sub);
                    if (solve_boolean_list_csp2(common)) {
                        if (it->second == tit->second) return true;
                        seen[it->second] = true;
                        queue.push_back(it->second);
                    }
                }
            }
            probe[p] = orig;
        }
    }
    return false;
}

} // namespace csr
