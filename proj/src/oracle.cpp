#include "csr/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace csr {

int SolutionGraph::find(const Assignment& f) const {
    auto it = std::lower_bound(solutions.begin(), solutions.end(), f);
    if (it == solutions.end() || *it != f) return -1;
    return static_cast<int>(it - solutions.begin());
}

std::vector<std::vector<std::pair<int, int>>> SolutionGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(solutions.size());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].first].push_back({edges[e].second, e});
        adj[edges[e].second].push_back({edges[e].first, e});
    }
    return adj;
}

std::vector<int> SolutionGraph::component_ids() const {
    std::vector<int> comp(solutions.size(), -1);
    auto adj = adjacency();
    int c = 0;
    for (std::size_t s = 0; s < solutions.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[v])
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    return comp;
}

namespace {

void check_budget(const CspInstance& csp, std::uint64_t limit) {
    const std::uint64_t states =
        pow_saturating(static_cast<std::uint64_t>(csp.k()), csp.vertex_count());
    require(states <= limit, errc::budget_exceeded,
            "state space k^n = " + std::to_string(states) + " exceeds the budget " +
                std::to_string(limit));
}

} // namespace

std::vector<Assignment> enumerate_solutions(const CspInstance& csp, std::uint64_t limit) {
    check_budget(csp, limit);
    const int n = csp.vertex_count();
    const int k = csp.k();

    // Hyperedges indexed by the vertex completing their scope prefix; the
    // scope is ascending, so assigning vertices in index order makes the
    // assigned part of every scope a prefix.
    std::vector<std::vector<int>> touching(n);
    for (int ci = 0; ci < static_cast<int>(csp.constraints.size()); ++ci)
        for (int v : csp.constraints[ci].scope) touching[v].push_back(ci);

    std::vector<Assignment> out;
    Assignment cur(n, 0);
    std::vector<std::vector<value_t>> prefix(csp.constraints.size());

    auto consistent_at = [&](int v) {
        for (int ci : touching[v]) {
            const Constraint& c = csp.constraints[ci];
            std::vector<value_t> pre;
            for (int u : c.scope) {
                if (u > v) break;
                pre.push_back(cur[u]);
            }
            if (!c.allows_prefix(pre)) return false;
        }
        return true;
    };

    // Iterative backtracking, values tried ascending => lexicographic output.
    int v = 0;
    if (n == 0) {
        // The empty assignment is vacuously a solution.
        out.push_back({});
        return out;
    }
    cur[0] = -1;
    while (v >= 0) {
        ++cur[v];
        if (cur[v] >= k) {
            --v;
            continue;
        }
        if (!consistent_at(v)) continue;
        if (v == n - 1) {
            out.push_back(cur);
        } else {
            ++v;
            cur[v] = -1;
        }
    }
    return out;
}

SolutionGraph build_solution_graph(const CspInstance& csp, const std::vector<weight_t>& weights,
                                   std::uint64_t limit) {
    require(weights.empty() || static_cast<int>(weights.size()) == csp.vertex_count(),
            errc::malformed_instance, "weight function must be total");
    SolutionGraph g;
    g.solutions = enumerate_solutions(csp, limit);
    const int k = csp.k();
    for (int i = 0; i < static_cast<int>(g.solutions.size()); ++i) {
        Assignment f = g.solutions[i];
        for (int v = 0; v < csp.vertex_count(); ++v) {
            const value_t orig = f[v];
            for (value_t a = 0; a < k; ++a) {
                if (a == orig) continue;
                f[v] = a;
                const int j = g.find(f);
                if (j > i) {
                    g.edges.push_back({i, j});
                    g.changed_vertex.push_back(v);
                    g.edge_weights.push_back(weights.empty() ? 1 : weights[v]);
                }
            }
            f[v] = orig;
        }
    }
    return g;
}

namespace {

struct Endpoints {
    SolutionGraph graph;
    int source = -1, target = -1;
};

Endpoints graph_with_endpoints(const ReconfigInstance& inst, std::uint64_t limit) {
    require(is_solution(inst.csp, inst.source), errc::malformed_instance,
            "source is not a solution");
    require(is_solution(inst.csp, inst.target), errc::malformed_instance,
            "target is not a solution");
    Endpoints e;
    e.graph = build_solution_graph(inst.csp, inst.weights, limit);
    e.source = e.graph.find(inst.source);
    e.target = e.graph.find(inst.target);
    return e;
}

} // namespace

bool is_reconfigurable(const ReconfigInstance& inst, std::uint64_t limit) {
    auto [g, s, t] = graph_with_endpoints(inst, limit);
    auto comp = g.component_ids();
    return comp[s] == comp[t];
}

std::optional<weight_t> shortest_reconfiguration(const ReconfigInstance& inst,
                                                 std::uint64_t limit) {
    auto [g, s, t] = graph_with_endpoints(inst, limit);
    auto adj = g.adjacency();
    const weight_t inf = std::numeric_limits<weight_t>::max();
    std::vector<weight_t> dist(g.solutions.size(), inf);
    std::priority_queue<std::pair<weight_t, int>, std::vector<std::pair<weight_t, int>>,
                        std::greater<>>
        pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [w, e] : adj[u]) {
            const weight_t nd = d + g.edge_weights[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                pq.push({nd, w});
            }
        }
    }
    if (dist[t] == inf) return std::nullopt;
    return dist[t];
}

std::optional<std::vector<Assignment>> oracle_walk(const ReconfigInstance& inst,
                                                   std::uint64_t limit, bool shortest) {
    auto [g, s, t] = graph_with_endpoints(inst, limit);
    auto adj = g.adjacency();
    const std::size_t n = g.solutions.size();
    std::vector<int> pred(n, -1);

    if (!shortest) {
        std::vector<bool> seen(n, false);
        std::queue<int> q;
        seen[s] = true;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [w, e] : adj[u])
                if (!seen[w]) {
                    seen[w] = true;
                    pred[w] = u;
                    q.push(w);
                }
        }
        if (!seen[t]) return std::nullopt;
    } else {
        const weight_t inf = std::numeric_limits<weight_t>::max();
        std::vector<weight_t> dist(n, inf);
        std::priority_queue<std::pair<weight_t, int>, std::vector<std::pair<weight_t, int>>,
                            std::greater<>>
            pq;
        dist[s] = 0;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (auto [w, e] : adj[u]) {
                const weight_t nd = d + g.edge_weights[e];
                if (nd < dist[w] || (nd == dist[w] && u < pred[w])) {
                    dist[w] = nd;
                    pred[w] = u;
                    pq.push({nd, w});
                }
            }
        }
        if (dist[t] == inf) return std::nullopt;
    }

    std::vector<Assignment> walk;
    for (int v = t; v != -1; v = pred[v]) {
        walk.push_back(g.solutions[v]);
        if (v == s) break;
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
}

} // namespace csr
