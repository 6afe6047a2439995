#include "csr/model.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace csr {

int Domain::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[i] == label) return i;
    return -1;
}

Domain Domain::of_size(int k) {
    Domain d;
    d.labels.reserve(k);
    for (int i = 0; i < k; ++i) d.labels.push_back(std::to_string(i));
    return d;
}

void Domain::validate() const {
    require(size() >= 1, errc::malformed_instance, "domain must have at least one value");
    std::set<std::string> seen(labels.begin(), labels.end());
    require(static_cast<int>(seen.size()) == size(), errc::malformed_instance,
            "domain labels must be distinct");
}

int Hypergraph::index_of(const std::string& id) const {
    for (int i = 0; i < vertex_count(); ++i)
        if (vertex_ids[i] == id) return i;
    return -1;
}

void Hypergraph::validate() const {
    std::set<std::string> seen(vertex_ids.begin(), vertex_ids.end());
    require(seen.size() == vertex_ids.size(), errc::malformed_instance,
            "vertex ids must be distinct");
    for (const auto& e : hyperedges) {
        require(!e.empty(), errc::malformed_instance, "hyperedges must be non-empty");
        require(std::is_sorted(e.begin(), e.end()), errc::malformed_instance,
                "hyperedge not in canonical order");
        for (std::size_t i = 0; i < e.size(); ++i) {
            require(e[i] >= 0 && e[i] < vertex_count(), errc::malformed_instance,
                    "hyperedge references unknown vertex");
            require(i == 0 || e[i] != e[i - 1], errc::malformed_instance,
                    "duplicate vertex inside a hyperedge");
        }
    }
}

std::vector<std::vector<int>> Hypergraph::adjacency() const {
    std::vector<std::set<int>> adj(vertex_count());
    for (const auto& e : hyperedges)
        for (int u : e)
            for (int v : e)
                if (u != v) adj[u].insert(v);
    std::vector<std::vector<int>> out(vertex_count());
    for (int v = 0; v < vertex_count(); ++v) out[v].assign(adj[v].begin(), adj[v].end());
    return out;
}

std::vector<int> Hypergraph::neighborhood(const std::vector<int>& vs) const {
    std::set<int> in(vs.begin(), vs.end());
    std::set<int> res;
    auto adj = adjacency();
    for (int v : vs)
        for (int w : adj[v])
            if (!in.count(w)) res.insert(w);
    return {res.begin(), res.end()};
}

std::vector<std::vector<int>> Hypergraph::components() const {
    std::vector<int> comp(vertex_count(), -1);
    auto adj = adjacency();
    int c = 0;
    for (int s = 0; s < vertex_count(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    std::vector<std::vector<int>> out(c);
    for (int v = 0; v < vertex_count(); ++v) out[comp[v]].push_back(v);
    return out;
}

Hypergraph primal_graph(const Hypergraph& g) {
    std::set<std::pair<int, int>> edges;
    for (const auto& e : g.hyperedges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) edges.insert({e[i], e[j]});
    Hypergraph out;
    out.vertex_ids = g.vertex_ids;
    for (auto [u, v] : edges) out.hyperedges.push_back({u, v});
    return out;
}

Hypergraph induced_subhypergraph(const Hypergraph& g, const std::vector<int>& keep) {
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v : sorted)
        require(v >= 0 && v < g.vertex_count(), errc::malformed_instance,
                "induced subhypergraph: vertex outside V(G)");
    std::vector<int> old_to_new(g.vertex_count(), -1);
    Hypergraph out;
    for (int v : sorted) {
        old_to_new[v] = static_cast<int>(out.vertex_ids.size());
        out.vertex_ids.push_back(g.vertex_ids[v]);
    }
    std::set<std::vector<int>> edges;
    for (const auto& e : g.hyperedges) {
        std::vector<int> clipped;
        for (int v : e)
            if (old_to_new[v] >= 0) clipped.push_back(old_to_new[v]);
        if (!clipped.empty()) edges.insert(clipped);
    }
    out.hyperedges.assign(edges.begin(), edges.end());
    return out;
}

PartialAssignment PartialAssignment::of(const Assignment& f, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    PartialAssignment p;
    for (int v : subset) {
        require(v >= 0 && v < static_cast<int>(f.size()), errc::malformed_assignment,
                "restriction outside the assignment's domain");
        p.verts.push_back(v);
        p.vals.push_back(f[v]);
    }
    return p;
}

std::optional<value_t> PartialAssignment::at(int v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v) return std::nullopt;
    return vals[it - verts.begin()];
}

bool Constraint::contains(const std::vector<value_t>& tuple) const {
    return std::binary_search(allowed.begin(), allowed.end(), tuple);
}

bool Constraint::allows_prefix(const std::vector<value_t>& prefix) const {
    auto it = std::lower_bound(allowed.begin(), allowed.end(), prefix);
    if (it == allowed.end()) return false;
    return std::equal(prefix.begin(), prefix.end(), it->begin());
}

void Constraint::canonicalize() {
    if (!std::is_sorted(scope.begin(), scope.end())) {
        std::vector<int> order(scope.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return scope[a] < scope[b]; });
        std::vector<int> new_scope(scope.size());
        for (std::size_t i = 0; i < order.size(); ++i) new_scope[i] = scope[order[i]];
        for (auto& t : allowed) {
            std::vector<value_t> nt(t.size());
            for (std::size_t i = 0; i < order.size(); ++i) nt[i] = t[order[i]];
            t = std::move(nt);
        }
        scope = std::move(new_scope);
    }
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
}

Constraint translate_constraint(const Constraint& c, const std::vector<std::pair<int, int>>& phi) {
    std::map<int, int> fwd;
    std::set<int> targets;
    for (auto [from, to] : phi) {
        require(fwd.emplace(from, to).second, errc::malformed_instance,
                "translation: source vertex mapped twice");
        require(targets.insert(to).second, errc::malformed_instance,
                "translation: target vertex hit twice");
    }
    require(fwd.size() == c.scope.size(), errc::malformed_instance,
            "translation: bijection size does not match scope");
    for (int v : c.scope)
        require(fwd.count(v), errc::malformed_instance, "translation: scope vertex unmapped");

    Constraint out;
    out.scope.reserve(c.scope.size());
    for (int v : c.scope) out.scope.push_back(fwd.at(v));
    out.allowed = c.allowed; // column i still belongs to phi(c.scope[i])
    out.canonicalize();
    return out;
}

int CspInstance::max_arity() const {
    int m = 0;
    for (const auto& e : graph.hyperedges) m = std::max<int>(m, static_cast<int>(e.size()));
    return m;
}

int CspInstance::edge_index(const std::vector<int>& hyperedge) const {
    for (int i = 0; i < static_cast<int>(graph.hyperedges.size()); ++i)
        if (graph.hyperedges[i] == hyperedge) return i;
    return -1;
}

CspInstance make_csp(Hypergraph graph, Domain domain, std::vector<Constraint> constraints) {
    domain.validate();
    require(constraints.size() == graph.hyperedges.size(), errc::malformed_instance,
            "exactly one constraint per hyperedge required");
    const int k = domain.size();

    // Canonicalize scopes/tuples first, so equal hyperedges merge cleanly.
    std::map<std::vector<int>, Constraint> merged;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        Constraint c = constraints[i];
        std::vector<int> edge = graph.hyperedges[i];
        std::sort(edge.begin(), edge.end());
        c.canonicalize();
        require(c.scope == edge, errc::malformed_instance,
                "constraint scope must equal its hyperedge");
        for (const auto& t : c.allowed) {
            require(t.size() == c.scope.size(), errc::malformed_instance,
                    "allowed tuple length must equal the scope size");
            for (value_t v : t)
                require(v >= 0 && v < k, errc::malformed_instance,
                        "allowed tuple value outside the domain");
        }
        auto [it, fresh] = merged.emplace(c.scope, c);
        if (!fresh) {
            // Duplicate hyperedge: intersect allowed sets.
            std::vector<std::vector<value_t>> inter;
            std::set_intersection(it->second.allowed.begin(), it->second.allowed.end(),
                                  c.allowed.begin(), c.allowed.end(), std::back_inserter(inter));
            it->second.allowed = std::move(inter);
        }
    }

    CspInstance out;
    out.domain = std::move(domain);
    out.graph.vertex_ids = std::move(graph.vertex_ids);
    for (auto& [edge, c] : merged) {
        out.graph.hyperedges.push_back(edge);
        out.constraints.push_back(std::move(c));
    }
    out.graph.validate();
    return out;
}

bool is_solution(const CspInstance& csp, const Assignment& f) {
    require(static_cast<int>(f.size()) == csp.vertex_count(), errc::malformed_assignment,
            "assignment must be total over V(G)");
    for (value_t v : f)
        require(v >= 0 && v < csp.k(), errc::malformed_assignment,
                "assignment value outside the domain");
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        const Constraint& c = csp.constraints[i];
        std::vector<value_t> tuple;
        tuple.reserve(c.scope.size());
        for (int v : c.scope) tuple.push_back(f[v]);
        if (!c.contains(tuple)) return false;
    }
    return true;
}

std::vector<int> difference(const Assignment& f, const Assignment& g) {
    require(f.size() == g.size(), errc::malformed_assignment,
            "difference requires assignments over the same vertex set");
    std::vector<int> out;
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[v] != g[v]) out.push_back(static_cast<int>(v));
    return out;
}

PartialAssignment restrict_to(const Assignment& f, std::vector<int> subset) {
    return PartialAssignment::of(f, std::move(subset));
}

PartialAssignment restrict_to(const PartialAssignment& f, const std::vector<int>& subset) {
    PartialAssignment out;
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v : sorted) {
        auto val = f.at(v);
        require(val.has_value(), errc::malformed_assignment,
                "restriction outside the partial assignment's domain");
        out.verts.push_back(v);
        out.vals.push_back(*val);
    }
    return out;
}

bool compatible(const PartialAssignment& p, const PartialAssignment& q) {
    std::size_t i = 0, j = 0;
    while (i < p.verts.size() && j < q.verts.size()) {
        if (p.verts[i] < q.verts[j])
            ++i;
        else if (p.verts[i] > q.verts[j])
            ++j;
        else {
            if (p.vals[i] != q.vals[j]) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

std::vector<value_t> vertex_list(const CspInstance& csp, int v) {
    require(v >= 0 && v < csp.vertex_count(), errc::malformed_instance,
            "vertex_list: unknown vertex");
    std::set<value_t> vals;
    bool covered = false;
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        const Constraint& c = csp.constraints[i];
        auto it = std::lower_bound(c.scope.begin(), c.scope.end(), v);
        if (it == c.scope.end() || *it != v) continue;
        covered = true;
        const std::size_t col = it - c.scope.begin();
        for (const auto& t : c.allowed) vals.insert(t[col]);
    }
    if (!covered) {
        std::vector<value_t> full(csp.k());
        std::iota(full.begin(), full.end(), 0);
        return full;
    }
    return {vals.begin(), vals.end()};
}

std::vector<std::vector<value_t>> vertex_lists(const CspInstance& csp) {
    std::vector<std::vector<value_t>> out(csp.vertex_count());
    for (int v = 0; v < csp.vertex_count(); ++v) out[v] = vertex_list(csp, v);
    return out;
}

int non_boolean_count(const CspInstance& csp) {
    int nb = 0;
    for (int v = 0; v < csp.vertex_count(); ++v)
        if (vertex_list(csp, v).size() > 2) ++nb;
    return nb;
}

CspInstance normalize_binary(const CspInstance& csp) {
    require(csp.max_arity() <= 2, errc::not_binary,
            "normalize_binary requires all hyperedges of size at most 2");

    // Unary allowed set per vertex (merged form guarantees at most one).
    std::vector<const Constraint*> unary(csp.vertex_count(), nullptr);
    std::vector<Constraint> binary;
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        if (csp.constraints[i].arity() == 1)
            unary[csp.constraints[i].scope[0]] = &csp.constraints[i];
        else
            binary.push_back(csp.constraints[i]);
    }

    // The lexicographically first incident edge absorbs a vertex's unary
    // constraint; vertices with no binary neighbor keep theirs.
    std::vector<int> fold_edge(csp.vertex_count(), -1);
    for (std::size_t bi = 0; bi < binary.size(); ++bi)
        for (int v : binary[bi].scope)
            if (unary[v] && (fold_edge[v] < 0 || binary[bi].scope < binary[fold_edge[v]].scope))
                fold_edge[v] = static_cast<int>(bi);

    std::vector<Constraint> out;
    for (std::size_t bi = 0; bi < binary.size(); ++bi) {
        Constraint c = binary[bi];
        for (int pos = 0; pos < 2; ++pos) {
            const int v = c.scope[pos];
            if (fold_edge[v] != static_cast<int>(bi)) continue;
            std::vector<std::vector<value_t>> kept;
            for (const auto& t : c.allowed)
                if (unary[v]->contains({t[pos]})) kept.push_back(t);
            c.allowed = std::move(kept);
        }
        out.push_back(std::move(c));
    }
    for (int v = 0; v < csp.vertex_count(); ++v)
        if (unary[v] && fold_edge[v] < 0) out.push_back(*unary[v]);

    Hypergraph g;
    g.vertex_ids = csp.graph.vertex_ids;
    for (const auto& c : out) g.hyperedges.push_back(c.scope);
    return make_csp(std::move(g), csp.domain, std::move(out));
}

ReconfigInstance make_reconfig(CspInstance csp, Assignment source, Assignment target,
                               std::vector<weight_t> weights) {
    require(is_solution(csp, source), errc::malformed_instance, "source is not a solution");
    require(is_solution(csp, target), errc::malformed_instance, "target is not a solution");
    if (weights.empty()) weights.assign(csp.vertex_count(), 1);
    require(static_cast<int>(weights.size()) == csp.vertex_count(), errc::malformed_instance,
            "weight function must be total");
    for (weight_t w : weights)
        require(w >= 1, errc::malformed_instance, "weights must be positive");
    return ReconfigInstance{std::move(csp), std::move(source), std::move(target),
                            std::move(weights)};
}

InstanceRestriction restrict_instance(const CspInstance& csp, const std::vector<int>& removed,
                                      const PartialAssignment* sub) {
    std::vector<int> rem = removed;
    std::sort(rem.begin(), rem.end());
    rem.erase(std::unique(rem.begin(), rem.end()), rem.end());
    for (int v : rem)
        require(v >= 0 && v < csp.vertex_count(), errc::malformed_instance,
                "restriction: vertex outside V(G)");
    if (sub)
        require(sub->verts == rem, errc::malformed_instance,
                "substitution mapping must cover exactly the removed set");

    InstanceRestriction out;
    out.old_to_new.assign(csp.vertex_count(), -1);
    for (int v = 0; v < csp.vertex_count(); ++v) {
        if (std::binary_search(rem.begin(), rem.end(), v)) continue;
        out.old_to_new[v] = static_cast<int>(out.new_to_old.size());
        out.new_to_old.push_back(v);
    }

    Hypergraph g;
    for (int v : out.new_to_old) g.vertex_ids.push_back(csp.graph.vertex_ids[v]);
    std::vector<Constraint> cons;

    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        const Constraint& c = csp.constraints[i];
        std::vector<int> new_scope;
        std::vector<std::size_t> kept_cols;
        for (std::size_t col = 0; col < c.scope.size(); ++col)
            if (out.old_to_new[c.scope[col]] >= 0) {
                new_scope.push_back(out.old_to_new[c.scope[col]]);
                kept_cols.push_back(col);
            }
        if (new_scope.empty()) {
            // Hyperedge fully inside the removed set: with a substitution it
            // must be satisfied by the substituted values.
            if (sub) {
                std::vector<value_t> tuple;
                for (int v : c.scope) tuple.push_back(*sub->at(v));
                if (!c.contains(tuple)) out.consistent = false;
            }
            continue;
        }
        Constraint nc;
        nc.scope = new_scope;
        for (const auto& t : c.allowed) {
            if (sub) {
                bool ok = true;
                for (std::size_t col = 0; col < c.scope.size(); ++col) {
                    auto want = sub->at(c.scope[col]);
                    if (want && *want != t[col]) { ok = false; break; }
                }
                if (!ok) continue;
            }
            std::vector<value_t> proj;
            proj.reserve(kept_cols.size());
            for (std::size_t col : kept_cols) proj.push_back(t[col]);
            nc.allowed.push_back(std::move(proj));
        }
        g.hyperedges.push_back(nc.scope);
        cons.push_back(std::move(nc));
    }
    out.csp = make_csp(std::move(g), csp.domain, std::move(cons));
    return out;
}

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
    const std::uint64_t cap = std::numeric_limits<std::int64_t>::max();
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) return cap;
        r *= base;
    }
    return r;
}

} // namespace csr
