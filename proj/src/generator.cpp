#include "csr/generator.hpp"

#include <algorithm>
#include <set>

#include "csr/specialcase.hpp"
#include "csr/transform.hpp"

namespace csr {

Family family_from_string(const std::string& name) {
    if (name == "random") return Family::random;
    if (name == "coloring") return Family::coloring;
    if (name == "lhr") return Family::lhr;
    if (name == "boolean2") return Family::boolean2;
    if (name == "kkclique") return Family::kkclique;
    fail(errc::malformed_instance, "unknown generator family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::random: return "random";
        case Family::coloring: return "coloring";
        case Family::lhr: return "lhr";
        case Family::boolean2: return "boolean2";
        case Family::kkclique: return "kkclique";
    }
    return "?";
}

namespace {

std::vector<std::string> vertex_names(int n) {
    std::vector<std::string> ids;
    for (int i = 1; i <= n; ++i) ids.push_back("x" + std::to_string(i));
    return ids;
}

std::vector<std::vector<int>> random_edge_set(Rng& rng, int n, double density) {
    std::vector<std::vector<int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(density)) edges.push_back({u, v});
    // keep the graph from being empty so instances are not all-trivial
    if (edges.empty() && n >= 2) edges.push_back({0, 1});
    return edges;
}

CspInstance sample_random(Rng& rng, const GenParams& p) {
    const int arity = std::max(1, std::min(p.arity, p.n));
    const int m = std::max(1, static_cast<int>(p.density * p.n * 2));
    std::set<std::vector<int>> edges;
    for (int i = 0; i < m; ++i) {
        const int size = 1 + static_cast<int>(rng.below(arity));
        std::set<int> scope;
        while (static_cast<int>(scope.size()) < size)
            scope.insert(static_cast<int>(rng.below(p.n)));
        edges.insert(std::vector<int>(scope.begin(), scope.end()));
    }
    const double tuple_prob = 0.4 + 0.5 * p.density;
    Hypergraph g;
    g.vertex_ids = vertex_names(p.n);
    std::vector<Constraint> cons;
    for (const auto& e : edges) {
        Constraint c;
        c.scope = e;
        std::vector<value_t> tuple(e.size(), 0);
        while (true) {
            if (rng.chance(tuple_prob)) c.allowed.push_back(tuple);
            std::size_t pos = tuple.size();
            while (pos > 0 && ++tuple[pos - 1] == p.k) tuple[--pos] = 0;
            if (pos == 0) break;
        }
        if (c.allowed.empty()) {
            std::vector<value_t> t(e.size());
            for (auto& x : t) x = static_cast<value_t>(rng.below(p.k));
            c.allowed.push_back(std::move(t));
        }
        g.hyperedges.push_back(c.scope);
        cons.push_back(std::move(c));
    }
    return make_csp(std::move(g), Domain::of_size(p.k), std::move(cons));
}

CspInstance sample_coloring(Rng& rng, const GenParams& p) {
    Hypergraph g;
    g.vertex_ids = vertex_names(p.n);
    g.hyperedges = random_edge_set(rng, p.n, p.density);
    std::vector<Constraint> cons;
    for (const auto& e : g.hyperedges) {
        Constraint c;
        c.scope = e;
        for (value_t a = 0; a < p.k; ++a)
            for (value_t b = 0; b < p.k; ++b)
                if (a != b) c.allowed.push_back({a, b});
        cons.push_back(std::move(c));
    }
    return make_csp(std::move(g), Domain::of_size(p.k), std::move(cons));
}

CspInstance sample_lhr(Rng& rng, const GenParams& p) {
    LhrForm form;
    form.h_adjacent.assign(p.k, std::vector<bool>(p.k, false));
    for (value_t a = 0; a < p.k; ++a)
        for (value_t b = a + 1; b < p.k; ++b)
            if (rng.chance(0.35 + 0.5 * p.density)) {
                form.h_adjacent[a][b] = true;
                form.h_adjacent[b][a] = true;
            }
    form.lists.assign(p.n, {});
    for (int v = 0; v < p.n; ++v) {
        for (value_t a = 0; a < p.k; ++a)
            if (rng.chance(0.6)) form.lists[v].push_back(a);
        if (form.lists[v].empty()) form.lists[v].push_back(static_cast<value_t>(rng.below(p.k)));
    }
    Hypergraph g;
    g.vertex_ids = vertex_names(p.n);
    g.hyperedges = random_edge_set(rng, p.n, p.density);
    return lhr_to_csp(form, g, Domain::of_size(p.k));
}

CspInstance sample_boolean2(Rng& rng, const GenParams& p) {
    GenParams q = p;
    q.k = 2;
    q.arity = std::min(p.arity, 2);
    return sample_random(rng, q);
}

} // namespace

ReconfigInstance generate(const GenParams& params) {
    require(params.n >= 1 && params.k >= 1, errc::generation_failure,
            "generator requires n >= 1 and k >= 1");

    if (params.family == Family::kkclique) {
        // kappa from n, cross-group edges sampled by density.
        Rng rng(params.seed);
        const int kappa = std::max(2, std::min(params.n, 5));
        for (int attempt = 0; attempt < params.retry_cap; ++attempt) {
            KkCliqueGraph h;
            h.kappa = kappa;
            for (int i = 1; i <= kappa; ++i)
                for (int j = i + 1; j <= kappa; ++j)
                    for (int pp = 1; pp <= kappa; ++pp)
                        for (int q = 1; q <= kappa; ++q)
                            if (rng.chance(params.density)) h.add_edge(i, pp, j, q);
            return kk_clique_to_2csr(h); // endpoints are built in; always valid
        }
    }

    for (int attempt = 0; attempt < params.retry_cap; ++attempt) {
        Rng rng(params.seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
        CspInstance csp = [&] {
            switch (params.family) {
                case Family::coloring: return sample_coloring(rng, params);
                case Family::lhr: return sample_lhr(rng, params);
                case Family::boolean2: return sample_boolean2(rng, params);
                default: return sample_random(rng, params);
            }
        }();
        std::vector<Assignment> sols = enumerate_solutions(csp, params.budget);
        if (sols.empty()) continue;
        std::vector<weight_t> weights;
        if (params.weighted) {
            weights.resize(csp.vertex_count());
            for (auto& w : weights) w = 1 + rng.below(5);
        }
        return make_reconfig(std::move(csp), sols.front(), sols.back(), std::move(weights));
    }
    fail(errc::generation_failure,
         "generator: no satisfiable instance found within the retry cap");
}

} // namespace csr
