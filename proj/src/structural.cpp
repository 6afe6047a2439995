#include "csr/structural.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

namespace csr {

namespace {

std::vector<std::pair<int, int>> primal_edges(const Hypergraph& g) {
    std::set<std::pair<int, int>> edges;
    for (const auto& e : g.hyperedges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) edges.insert({e[i], e[j]});
    return {edges.begin(), edges.end()};
}

bool vc_branch(const std::vector<std::pair<int, int>>& edges, std::vector<bool>& in_cover,
               int budget) {
    const std::pair<int, int>* pick = nullptr;
    for (const auto& e : edges)
        if (!in_cover[e.first] && !in_cover[e.second]) {
            pick = &e;
            break;
        }
    if (!pick) return true;
    if (budget == 0) return false;
    for (int v : {pick->first, pick->second}) {
        in_cover[v] = true;
        if (vc_branch(edges, in_cover, budget - 1)) return true;
        in_cover[v] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> find_vertex_cover(const Hypergraph& graph, int budget) {
    auto edges = primal_edges(graph);
    std::vector<bool> in_cover(graph.vertex_count(), false);
    if (!vc_branch(edges, in_cover, std::max(budget, 0))) return std::nullopt;
    std::vector<int> out;
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (in_cover[v]) out.push_back(v);
    return out;
}

std::vector<int> minimum_vertex_cover(const Hypergraph& graph) {
    for (int b = 0; b <= graph.vertex_count(); ++b)
        if (auto c = find_vertex_cover(graph, b)) return *c;
    return {}; // unreachable: V itself is a cover
}

InstanceRestriction substitute(const CspInstance& csp, const PartialAssignment& h) {
    return restrict_instance(csp, h.verts, &h);
}

bool ContractedSolutionGraph::source_target_connected() const {
    if (source_node < 0 || target_node < 0) return false;
    if (source_node == target_node) return true;
    std::vector<std::vector<int>> adj(nodes.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(nodes.size(), false);
    std::vector<int> stack{source_node};
    seen[source_node] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u == target_node) return true;
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return false;
}

namespace {

std::vector<int> sorted_cover(const CspInstance& csp, const std::vector<int>& cover) {
    std::vector<int> c = cover;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int v : c)
        require(v >= 0 && v < csp.vertex_count(), errc::wrong_algorithm,
                "cover vertex outside V(G)");
    for (const auto& e : csp.graph.hyperedges) {
        int outside = 0;
        for (int v : e)
            if (!std::binary_search(c.begin(), c.end(), v)) ++outside;
        require(outside <= 1, errc::wrong_algorithm,
                "the given set is not a vertex cover of the primal graph");
    }
    return c;
}

} // namespace

CspInstance merge_into_cover(const CspInstance& csp, const std::vector<int>& cover,
                             std::uint64_t budget) {
    std::vector<int> c = sorted_cover(csp, cover);
    const std::uint64_t table =
        pow_saturating(static_cast<std::uint64_t>(csp.k()), c.size() + 1);
    require(table <= budget, errc::budget_exceeded,
            "merge_into_cover: k^(vc+1) exceeds the budget");

    std::vector<Constraint> cons;
    Hypergraph g;
    g.vertex_ids = csp.graph.vertex_ids;

    // Hyperedges fully inside the cover are kept as-is.
    std::vector<std::vector<int>> absorbed(csp.vertex_count());
    for (int i = 0; i < static_cast<int>(csp.constraints.size()); ++i) {
        int out_vertex = -1;
        for (int v : csp.graph.hyperedges[i])
            if (!std::binary_search(c.begin(), c.end(), v)) out_vertex = v;
        if (out_vertex < 0) {
            g.hyperedges.push_back(csp.graph.hyperedges[i]);
            cons.push_back(csp.constraints[i]);
        } else {
            absorbed[out_vertex].push_back(i);
        }
    }

    for (int v = 0; v < csp.vertex_count(); ++v) {
        if (std::binary_search(c.begin(), c.end(), v)) continue;
        Constraint nc;
        nc.scope = c;
        nc.scope.insert(std::lower_bound(nc.scope.begin(), nc.scope.end(), v), v);
        std::vector<value_t> tuple(nc.scope.size(), 0);
        while (true) {
            bool ok = true;
            for (int ci : absorbed[v]) {
                const Constraint& old = csp.constraints[ci];
                std::vector<value_t> sub;
                for (int u : old.scope) {
                    auto it = std::lower_bound(nc.scope.begin(), nc.scope.end(), u);
                    sub.push_back(tuple[it - nc.scope.begin()]);
                }
                if (!old.contains(sub)) {
                    ok = false;
                    break;
                }
            }
            if (ok) nc.allowed.push_back(tuple);
            std::size_t pos = tuple.size();
            while (pos > 0 && ++tuple[pos - 1] == csp.k()) tuple[--pos] = 0;
            if (pos == 0) break;
        }
        g.hyperedges.push_back(nc.scope);
        cons.push_back(std::move(nc));
    }
    return make_csp(std::move(g), csp.domain, std::move(cons));
}

namespace {

/// A substitution of the merged instance leaves only 1-ary constraints.
bool unary_instance_solvable(const CspInstance& csp) {
    for (const Constraint& con : csp.constraints) {
        require(con.arity() <= 1, errc::malformed_instance,
                "expected a 1-ary-only substitution instance");
        if (con.allowed.empty()) return false;
    }
    return true;
}

} // namespace

ContractedSolutionGraph build_vc_csg(const ReconfigInstance& inst, const std::vector<int>& cover,
                                     std::uint64_t budget) {
    require(is_solution(inst.csp, inst.source), errc::malformed_instance,
            "source is not a solution");
    require(is_solution(inst.csp, inst.target), errc::malformed_instance,
            "target is not a solution");
    std::vector<int> c = sorted_cover(inst.csp, cover);
    const std::uint64_t classes = pow_saturating(inst.csp.k(), c.size());
    require(classes <= budget, errc::budget_exceeded,
            "build_vc_csg: k^vc exceeds the class budget");
    CspInstance merged = merge_into_cover(inst.csp, c, budget);

    ContractedSolutionGraph csg;
    csg.keyset = c;
    std::map<std::vector<value_t>, int> node_of;
    std::vector<CspInstance> subs;

    const int k = inst.csp.k();
    std::vector<value_t> key(c.size(), 0);
    while (true) {
        PartialAssignment h;
        h.verts = c;
        h.vals = key;
        InstanceRestriction sub = substitute(merged, h);
        if (sub.consistent && unary_instance_solvable(sub.csp)) {
            node_of[key] = static_cast<int>(csg.nodes.size());
            csg.nodes.push_back(key);
            subs.push_back(std::move(sub.csp));
        }
        std::size_t pos = key.size();
        while (pos > 0 && ++key[pos - 1] == k) key[--pos] = 0;
        if (pos == 0) break;
    }

    // Edges: the restrictions differ on one cover vertex and the two
    // substitutions share a solution (per-vertex intersection of the unary
    // constraints is everywhere non-empty).
    for (int u = 0; u < static_cast<int>(csg.nodes.size()); ++u) {
        std::vector<value_t> probe = csg.nodes[u];
        for (std::size_t p = 0; p < probe.size(); ++p) {
            const value_t orig = probe[p];
            for (value_t a = orig + 1; a < k; ++a) {
                probe[p] = a;
                auto it = node_of.find(probe);
                if (it == node_of.end()) continue;
                const int w = it->second;
                bool common = true;
                for (std::size_t ci = 0; ci < subs[u].constraints.size() && common; ++ci) {
                    std::vector<std::vector<value_t>> inter;
                    std::set_intersection(subs[u].constraints[ci].allowed.begin(),
                                          subs[u].constraints[ci].allowed.end(),
                                          subs[w].constraints[ci].allowed.begin(),
                                          subs[w].constraints[ci].allowed.end(),
                                          std::back_inserter(inter));
                    if (inter.empty()) common = false;
                }
                if (common) csg.edges.push_back({u, w});
            }
            probe[p] = orig;
        }
    }

    auto sit = node_of.find(restrict_to(inst.source, c).vals);
    auto tit = node_of.find(restrict_to(inst.target, c).vals);
    require(sit != node_of.end() && tit != node_of.end(), errc::malformed_instance,
            "build_vc_csg: endpoint class missing from the CSG");
    csg.source_node = sit->second;
    csg.target_node = tit->second;
    return csg;
}

bool solve_vc_csg(const ReconfigInstance& inst, const std::vector<int>& cover,
                  std::uint64_t budget) {
    return build_vc_csg(inst, cover, budget).source_target_connected();
}

ReconfigInstance kernelize_vc_weighted(const ReconfigInstance& inst,
                                       const std::vector<int>& cover, std::uint64_t budget,
                                       int* applications) {
    std::vector<int> c = sorted_cover(inst.csp, cover);
    CspInstance merged = merge_into_cover(inst.csp, c, budget);
    ReconfigInstance pre = make_reconfig(std::move(merged), inst.source, inst.target, inst.weights);
    std::vector<int> independent;
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (!std::binary_search(c.begin(), c.end(), v)) independent.push_back(v);
    return greedy_identify_twins(pre, independent, /*weighted=*/true, nullptr, applications);
}

int TreeDepthDecomposition::depth() const {
    int best = 0;
    for (int v = 0; v < static_cast<int>(parent.size()); ++v) {
        int d = 0;
        for (int u = v; u != -1; u = parent[u]) ++d;
        best = std::max(best, d);
    }
    return best;
}

std::vector<int> TreeDepthDecomposition::ancestors(int v) const {
    std::vector<int> up;
    for (int u = parent[v]; u != -1; u = parent[u]) up.push_back(u);
    std::reverse(up.begin(), up.end()); // root first
    return up;
}

std::vector<int> TreeDepthDecomposition::children(int v) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(parent.size()); ++u)
        if (parent[u] == v) out.push_back(u);
    return out;
}

std::vector<int> TreeDepthDecomposition::roots() const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(parent.size()); ++u)
        if (parent[u] == -1) out.push_back(u);
    return out;
}

std::vector<int> TreeDepthDecomposition::subtree(int v) const {
    std::vector<int> order;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        auto ch = children(u);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

void TreeDepthDecomposition::validate_for(const Hypergraph& primal) const {
    require(static_cast<int>(parent.size()) == primal.vertex_count(), errc::malformed_instance,
            "decomposition size does not match the graph");
    // Acyclicity / rootedness.
    for (int v = 0; v < static_cast<int>(parent.size()); ++v) {
        int steps = 0;
        for (int u = v; u != -1; u = parent[u]) {
            require(++steps <= static_cast<int>(parent.size()), errc::malformed_instance,
                    "decomposition contains a parent cycle");
        }
    }
    for (const auto& e : primal.hyperedges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                const int a = e[i], b = e[j];
                bool related = false;
                for (int u = parent[a]; u != -1; u = parent[u])
                    if (u == b) related = true;
                for (int u = parent[b]; u != -1; u = parent[u])
                    if (u == a) related = true;
                require(related, errc::malformed_instance,
                        "edge endpoints are not in ancestor-descendant relation");
            }
}

namespace {

using Mask = std::uint32_t;

struct TdExactSearch {
    std::vector<Mask> adj;
    std::unordered_map<Mask, int> memo;

    std::vector<Mask> split(Mask mask) const {
        std::vector<Mask> comps;
        Mask rest = mask;
        while (rest) {
            Mask comp = rest & (~rest + 1);
            while (true) {
                Mask grow = comp;
                Mask m = comp;
                while (m) {
                    const int v = std::countr_zero(m);
                    m &= m - 1;
                    grow |= adj[v] & mask;
                }
                if (grow == comp) break;
                comp = grow;
            }
            comps.push_back(comp);
            rest &= ~comp;
        }
        return comps;
    }

    int depth(Mask mask) {
        if (std::popcount(mask) == 1) return 1;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        auto comps = split(mask);
        int result;
        if (comps.size() > 1) {
            result = 0;
            for (Mask c : comps) result = std::max(result, depth(c));
        } else {
            result = std::numeric_limits<int>::max();
            Mask m = mask;
            while (m) {
                const int v = std::countr_zero(m);
                m &= m - 1;
                result = std::min(result, 1 + depth(mask & ~(Mask(1) << v)));
            }
        }
        memo[mask] = result;
        return result;
    }

    void build(Mask mask, int above, std::vector<int>& parent) {
        auto comps = split(mask);
        if (comps.size() > 1) {
            for (Mask c : comps) build(c, above, parent);
            return;
        }
        if (std::popcount(mask) == 1) {
            parent[std::countr_zero(mask)] = above;
            return;
        }
        const int target = depth(mask);
        Mask m = mask;
        while (m) {
            const int v = std::countr_zero(m);
            m &= m - 1;
            if (1 + depth(mask & ~(Mask(1) << v)) == target) {
                parent[v] = above;
                build(mask & ~(Mask(1) << v), v, parent);
                return;
            }
        }
    }
};

TreeDepthDecomposition dfs_heuristic(const Hypergraph& primal) {
    auto adj = primal.adjacency();
    const int n = primal.vertex_count();
    TreeDepthDecomposition best;
    best.parent.assign(n, -1);

    auto comps = primal.components();
    for (const auto& comp : comps) {
        std::vector<int> best_parent;
        int best_depth = std::numeric_limits<int>::max();
        // DFS trees satisfy the ancestor condition; try every root, keep the
        // shallowest tree.
        for (int root : comp) {
            std::vector<int> parent(n, -2);
            std::vector<int> depth(n, 0);
            int maxd = 1;
            std::vector<int> stack{root};
            parent[root] = -1;
            depth[root] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int w : adj[u]) {
                    if (parent[w] != -2) continue;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    maxd = std::max(maxd, depth[w]);
                    stack.push_back(w);
                }
            }
            if (maxd < best_depth) {
                best_depth = maxd;
                best_parent = parent;
            }
        }
        for (int v : comp) best.parent[v] = best_parent[v];
    }
    best.exact = false;
    return best;
}

} // namespace

TreeDepthDecomposition compute_treedepth_decomposition(const Hypergraph& primal,
                                                       int exact_limit) {
    const int n = primal.vertex_count();
    TreeDepthDecomposition out;
    if (n == 0) {
        out.exact = true;
        return out;
    }
    if (n > exact_limit || n > 31) {
        out = dfs_heuristic(primal);
    } else {
        TdExactSearch search;
        search.adj.assign(n, 0);
        for (const auto& e : primal_edges(primal)) {
            search.adj[e.first] |= Mask(1) << e.second;
            search.adj[e.second] |= Mask(1) << e.first;
        }
        out.parent.assign(n, -1);
        const Mask all = n == 31 ? ~Mask(0) >> 1 : (Mask(1) << n) - 1;
        search.build(all, -1, out.parent);
        out.exact = true;
    }
    out.validate_for(primal);
    return out;
}

ReconfigInstance td_preprocess(const ReconfigInstance& inst, const TreeDepthDecomposition& tree,
                               std::uint64_t budget) {
    const CspInstance& csp = inst.csp;
    tree.validate_for(primal_graph(csp.graph));
    const std::uint64_t table =
        pow_saturating(static_cast<std::uint64_t>(csp.k()), tree.depth());
    require(table <= budget, errc::budget_exceeded, "td_preprocess: k^td exceeds the budget");

    std::vector<int> depth(csp.vertex_count());
    for (int v = 0; v < csp.vertex_count(); ++v)
        depth[v] = 1 + static_cast<int>(tree.ancestors(v).size());

    // Assign each hyperedge to its bottommost vertex.
    std::vector<std::vector<int>> absorbed(csp.vertex_count());
    for (int i = 0; i < static_cast<int>(csp.constraints.size()); ++i) {
        int bottom = csp.graph.hyperedges[i][0];
        for (int v : csp.graph.hyperedges[i])
            if (depth[v] > depth[bottom]) bottom = v;
        absorbed[bottom].push_back(i);
    }

    Hypergraph g;
    g.vertex_ids = csp.graph.vertex_ids;
    std::vector<Constraint> cons;
    for (int v = 0; v < csp.vertex_count(); ++v) {
        Constraint nc;
        nc.scope = tree.ancestors(v);
        nc.scope.push_back(v);
        std::sort(nc.scope.begin(), nc.scope.end());
        std::vector<value_t> tuple(nc.scope.size(), 0);
        while (true) {
            bool ok = true;
            for (int ci : absorbed[v]) {
                const Constraint& old = csp.constraints[ci];
                std::vector<value_t> sub;
                for (int u : old.scope) {
                    auto it = std::lower_bound(nc.scope.begin(), nc.scope.end(), u);
                    sub.push_back(tuple[it - nc.scope.begin()]);
                }
                if (!old.contains(sub)) {
                    ok = false;
                    break;
                }
            }
            if (ok) nc.allowed.push_back(tuple);
            std::size_t pos = tuple.size();
            while (pos > 0 && ++tuple[pos - 1] == csp.k()) tuple[--pos] = 0;
            if (pos == 0) break;
        }
        std::sort(nc.allowed.begin(), nc.allowed.end());
        g.hyperedges.push_back(nc.scope);
        cons.push_back(std::move(nc));
    }
    CspInstance out = make_csp(std::move(g), csp.domain, std::move(cons));
    return make_reconfig(std::move(out), inst.source, inst.target, inst.weights);
}

IdTuples id_tuples(const ReconfigInstance& inst, const TreeDepthDecomposition& tree, int v) {
    const CspInstance& csp = inst.csp;
    std::vector<int> sub = tree.subtree(v);
    std::vector<int> pos(csp.vertex_count(), -1);
    for (std::size_t i = 0; i < sub.size(); ++i) pos[sub[i]] = static_cast<int>(i);

    std::vector<int> depth(csp.vertex_count());
    for (int u = 0; u < csp.vertex_count(); ++u)
        depth[u] = 1 + static_cast<int>(tree.ancestors(u).size());

    IdTuples out;
    for (int u : sub) {
        // Tree neighborhood in pre-order coordinates; -1 marks the parent of
        // the subtree root.
        std::vector<int> nb;
        if (tree.parent[u] != -1) nb.push_back(pos[tree.parent[u]] >= 0 ? pos[tree.parent[u]] : -1);
        for (int c : tree.children(u)) nb.push_back(pos[c]);
        std::sort(nb.begin(), nb.end());
        out.neighborhoods.push_back(std::move(nb));

        out.endpoints.push_back({inst.source[u], inst.target[u]});

        std::vector<int> scope = tree.ancestors(u);
        scope.push_back(u);
        std::vector<int> canonical = scope;
        std::sort(canonical.begin(), canonical.end());
        const int ei = csp.edge_index(canonical);
        require(ei >= 0, errc::wrong_algorithm,
                "id_tuples requires the td-preprocessed one-hyperedge-per-vertex form");
        // Reorder tuple columns into pre-order (= depth order along the
        // root path).
        const Constraint& c = csp.constraints[ei];
        std::vector<std::size_t> col(scope.size());
        for (std::size_t i = 0; i < scope.size(); ++i) {
            auto it = std::lower_bound(c.scope.begin(), c.scope.end(), scope[i]);
            col[i] = it - c.scope.begin();
        }
        std::vector<std::vector<value_t>> table;
        for (const auto& t : c.allowed) {
            std::vector<value_t> row(scope.size());
            for (std::size_t i = 0; i < scope.size(); ++i) row[i] = t[col[i]];
            table.push_back(std::move(row));
        }
        std::sort(table.begin(), table.end());
        out.constraints.push_back(std::move(table));
    }
    return out;
}

TdKernelResult kernelize_td(const ReconfigInstance& inst, const TreeDepthDecomposition& tree,
                            std::uint64_t budget) {
    TdKernelResult res;
    res.inst = td_preprocess(inst, tree, budget);
    res.tree = tree;

    // Post-order over stable ids; identifications remap indices.
    std::vector<std::string> order;
    {
        for (int r : tree.roots()) {
            // push children before marking: emit post-order
            std::vector<std::pair<int, bool>> s{{r, false}};
            while (!s.empty()) {
                auto [u, expanded] = s.back();
                s.pop_back();
                if (expanded) {
                    order.push_back(inst.csp.graph.vertex_ids[u]);
                    continue;
                }
                s.push_back({u, true});
                auto ch = tree.children(u);
                for (auto it = ch.rbegin(); it != ch.rend(); ++it) s.push_back({*it, false});
            }
        }
    }

    for (const std::string& uid : order) {
        int u = res.inst.csp.graph.index_of(uid);
        if (u < 0) continue; // removed with an earlier subtree
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<int> ch = res.tree.children(u);
            for (std::size_t i = 0; i < ch.size() && !progress; ++i) {
                std::vector<int> sub_i = res.tree.subtree(ch[i]);
                IdTuples ti = id_tuples(res.inst, res.tree, ch[i]);
                for (std::size_t j = i + 1; j < ch.size() && !progress; ++j) {
                    std::vector<int> sub_j = res.tree.subtree(ch[j]);
                    if (sub_i.size() != sub_j.size()) continue;
                    if (!(ti == id_tuples(res.inst, res.tree, ch[j]))) continue;
                    std::vector<std::pair<int, int>> phi;
                    for (std::size_t p = 0; p < sub_i.size(); ++p)
                        phi.push_back({sub_i[p], sub_j[p]});
                    IdenticalCheck chk = check_identical(res.inst, sub_i, sub_j, phi);
                    require(chk.ok, errc::invalid_witness,
                            "kernelize_td: equal ID-tuples must yield an identical pair (" +
                                chk.failure + ")");
                    res.trace.steps.push_back({res.inst, chk.witness});
                    IdentifyResult idr = identify(res.inst, chk.witness);
                    TreeDepthDecomposition nt;
                    nt.exact = res.tree.exact;
                    nt.parent.assign(idr.new_to_old.size(), -1);
                    for (int old_v = 0; old_v < static_cast<int>(idr.old_to_new.size()); ++old_v) {
                        const int nv = idr.old_to_new[old_v];
                        if (nv < 0) continue;
                        const int p = res.tree.parent[old_v];
                        nt.parent[nv] = p < 0 ? -1 : idr.old_to_new[p];
                    }
                    res.tree = std::move(nt);
                    res.inst = std::move(idr.inst);
                    u = idr.old_to_new[u];
                    ++res.applications;
                    progress = true;
                }
            }
        }
    }
    return res;
}

bool KernelBound::at_least(std::uint64_t n) const {
    if (finite_u64) return value >= n;
    return log2_value >= std::log2l(static_cast<long double>(std::max<std::uint64_t>(n, 1)));
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool& ok) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        ok = false;
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp, bool& ok) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp && ok; ++i) r = sat_mul(r, base, ok);
    return r;
}

} // namespace

KernelBound td_kernel_bound(int depth, int k) {
    require(depth >= 1 && k >= 1, errc::malformed_instance, "td_kernel_bound: bad arguments");
    KernelBound g{true, 1, 0.0L};
    const long double log2k = std::log2l(static_cast<long double>(k));
    for (int j = 2; j <= depth; ++j) {
        // g(j) = a^2 * (2^a * k^2 * 2^(k^a))^a with a = g(j-1)
        long double alpha_log2 = g.log2_value;
        long double alpha = std::exp2l(alpha_log2);
        long double k_pow_alpha = std::exp2l(alpha * log2k);
        long double next = 2 * alpha_log2 + alpha * (alpha + 2 * log2k + k_pow_alpha);

        bool exact = g.finite_u64;
        std::uint64_t value = 0;
        if (exact) {
            const std::uint64_t a = g.value;
            std::uint64_t inner = sat_pow(2, a, exact);
            inner = sat_mul(inner, sat_mul(static_cast<std::uint64_t>(k),
                                           static_cast<std::uint64_t>(k), exact),
                            exact);
            std::uint64_t kpa = sat_pow(static_cast<std::uint64_t>(k), a, exact);
            if (exact && kpa >= 64) exact = false;
            if (exact) inner = sat_mul(inner, sat_pow(2, kpa, exact), exact);
            std::uint64_t total = sat_mul(a, a, exact);
            if (exact) total = sat_mul(total, sat_pow(inner, a, exact), exact);
            value = total;
        }
        g.finite_u64 = exact;
        g.value = value;
        g.log2_value = std::isfinite(next) ? next : std::numeric_limits<long double>::max() / 2;
    }
    return g;
}

KernelBound vc_kernel_bound(int vc, int k) {
    require(vc >= 0 && k >= 1, errc::malformed_instance, "vc_kernel_bound: bad arguments");
    KernelBound b;
    const long double log2k = std::log2l(static_cast<long double>(k));
    const long double kp = std::exp2l((vc + 1) * log2k); // k^(vc+1)
    b.log2_value = 2 * log2k + kp;
    bool exact = true;
    std::uint64_t kpow = sat_pow(static_cast<std::uint64_t>(k), vc + 1, exact);
    if (exact && kpow >= 64) exact = false;
    if (exact) {
        std::uint64_t v = sat_pow(2, kpow, exact);
        v = sat_mul(v, static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k), exact);
        b.finite_u64 = exact;
        b.value = v;
    }
    return b;
}

} // namespace csr
