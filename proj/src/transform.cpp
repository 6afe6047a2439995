#include "csr/transform.hpp"

#include <algorithm>
#include <set>

namespace csr {

void KkCliqueGraph::add_edge(int i, int p, int j, int q) {
    std::pair<int, int> a{i, p}, b{j, q};
    if (b < a) std::swap(a, b);
    edges.insert({a, b});
}

bool KkCliqueGraph::adjacent(int i, int p, int j, int q) const {
    std::pair<int, int> a{i, p}, b{j, q};
    if (b < a) std::swap(a, b);
    return edges.count({a, b}) > 0;
}

void KkCliqueGraph::validate() const {
    require(kappa >= 2, errc::malformed_instance,
            "kk-clique instance requires kappa >= 2");
    for (const auto& [a, b] : edges) {
        for (const auto& v : {a, b})
            require(v.first >= 1 && v.first <= kappa && v.second >= 1 && v.second <= kappa,
                    errc::malformed_instance, "kk-clique edge endpoint outside the grid");
        require(a != b, errc::malformed_instance, "kk-clique loop");
    }
}

bool LabeledCliqueInstance::adjacent(int u, int v) const {
    if (u > v) std::swap(u, v);
    return edges.count({u, v}) > 0;
}

void LabeledCliqueInstance::validate() const {
    require(tau >= 1, errc::malformed_instance, "tau must be positive");
    const int n = static_cast<int>(vertex_ids.size());
    for (auto [u, v] : edges)
        require(u >= 0 && v >= 0 && u < v && v < n, errc::malformed_instance,
                "labeled-clique edge endpoint out of range");
    for (const std::vector<int>* lc : {&source, &target}) {
        require(static_cast<int>(lc->size()) == tau, errc::malformed_instance,
                "labeled clique must have exactly tau components");
        for (std::size_t i = 0; i < lc->size(); ++i) {
            require((*lc)[i] >= 0 && (*lc)[i] < n, errc::malformed_instance,
                    "labeled clique member out of range");
            for (std::size_t j = i + 1; j < lc->size(); ++j) {
                require((*lc)[i] != (*lc)[j], errc::malformed_instance,
                        "labeled clique members must be distinct");
                require(adjacent((*lc)[i], (*lc)[j]), errc::malformed_instance,
                        "labeled clique members must be pairwise adjacent");
            }
        }
    }
}

void RWordSystem::validate() const {
    require(rho >= 2, errc::malformed_instance,
            "R-word reconfiguration requires words of length >= 2");
    const int n = static_cast<int>(vertex_ids.size());
    for (auto [x, y] : arcs)
        require(x >= 0 && x < n && y >= 0 && y < n, errc::malformed_instance,
                "R arc endpoint out of range");
    for (const std::vector<int>* word : {&source, &target}) {
        require(static_cast<int>(word->size()) == rho, errc::malformed_instance,
                "R-word must have length rho");
        for (std::size_t i = 0; i < word->size(); ++i) {
            require((*word)[i] >= 0 && (*word)[i] < n, errc::malformed_instance,
                    "R-word symbol out of range");
            if (i + 1 < word->size())
                require(arcs.count({(*word)[i], (*word)[i + 1]}) > 0, errc::malformed_instance,
                        "R-word is not a directed walk");
        }
    }
}

Lcr4Result lcr4_to_2csr3(const ReconfigInstance& inst) {
    const CspInstance& csp = inst.csp;
    require(csp.k() == 4, errc::wrong_algorithm, "lcr4_to_2csr3 requires a 4-value domain");
    require(csp.max_arity() <= 2, errc::wrong_algorithm, "lcr4_to_2csr3 requires arity <= 2");
    const value_t last = 3;

    Lcr4Result out;
    out.value_map.assign(csp.vertex_count(), {0, 1, 2, 3});
    std::vector<Constraint> cons = csp.constraints;
    Assignment fs = inst.source, ft = inst.target;

    for (int v = 0; v < csp.vertex_count(); ++v) {
        // L(v) over the current tables; isolated vertices carry the full
        // domain and make the reduction inapplicable.
        std::set<value_t> list;
        bool covered = false;
        for (const Constraint& c : cons) {
            auto it = std::find(c.scope.begin(), c.scope.end(), v);
            if (it == c.scope.end()) continue;
            covered = true;
            const std::size_t col = it - c.scope.begin();
            for (const auto& t : c.allowed) list.insert(t[col]);
        }
        if (!covered) list = {0, 1, 2, 3};
        require(list.size() <= 3, errc::wrong_algorithm,
                "lcr4_to_2csr3 is inapplicable: a list uses all four values");
        if (!list.count(last)) continue;
        value_t swap_with = -1;
        for (value_t i = 0; i < last; ++i)
            if (!list.count(i)) {
                swap_with = i;
                break;
            }
        // Swap `last` and `swap_with` in v's column everywhere.
        auto apply = [&](value_t x) {
            if (x == last) return swap_with;
            if (x == swap_with) return last;
            return x;
        };
        for (Constraint& c : cons) {
            auto it = std::find(c.scope.begin(), c.scope.end(), v);
            if (it == c.scope.end()) continue;
            const std::size_t col = it - c.scope.begin();
            for (auto& t : c.allowed) t[col] = apply(t[col]);
            std::sort(c.allowed.begin(), c.allowed.end());
        }
        fs[v] = apply(fs[v]);
        ft[v] = apply(ft[v]);
        std::swap(out.value_map[v][last], out.value_map[v][swap_with]);
    }

    // No vertex uses the last value any more; shrink the domain.
    Domain d3;
    d3.labels = {csp.domain.labels[0], csp.domain.labels[1], csp.domain.labels[2]};
    for (const Constraint& c : cons)
        for (const auto& t : c.allowed)
            for (value_t x : t)
                require(x < 3, errc::wrong_algorithm,
                        "lcr4_to_2csr3: value elimination failed");
    Hypergraph g = csp.graph;
    CspInstance c3 = make_csp(std::move(g), std::move(d3), std::move(cons));
    out.inst = make_reconfig(std::move(c3), std::move(fs), std::move(ft), inst.weights);
    return out;
}

ReconfigInstance pad_complete(const ReconfigInstance& inst) {
    const CspInstance& csp = inst.csp;
    for (const auto& e : csp.graph.hyperedges)
        require(e.size() == 2, errc::not_binary, "pad_complete requires a 2-uniform instance");
    std::set<std::vector<int>> present(csp.graph.hyperedges.begin(), csp.graph.hyperedges.end());
    Hypergraph g = csp.graph;
    std::vector<Constraint> cons = csp.constraints;
    for (int u = 0; u < csp.vertex_count(); ++u)
        for (int v = u + 1; v < csp.vertex_count(); ++v) {
            if (present.count({u, v})) continue;
            Constraint c;
            c.scope = {u, v};
            for (value_t a = 0; a < csp.k(); ++a)
                for (value_t b = 0; b < csp.k(); ++b) c.allowed.push_back({a, b});
            g.hyperedges.push_back(c.scope);
            cons.push_back(std::move(c));
        }
    CspInstance padded = make_csp(std::move(g), csp.domain, std::move(cons));
    return make_reconfig(std::move(padded), inst.source, inst.target, inst.weights);
}

namespace {

std::string fresh_vertex_id(const Hypergraph& g, const std::string& base) {
    if (g.index_of(base) < 0) return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (g.index_of(candidate) < 0) return candidate;
    }
}

} // namespace

ReconfigInstance hitting_set_gadget(const ReconfigInstance& inst) {
    const CspInstance& csp = inst.csp;
    for (const auto& e : csp.graph.hyperedges)
        require(e.size() == 2, errc::not_binary,
                "hitting_set_gadget requires a 2-uniform instance");
    Hypergraph g;
    g.vertex_ids = csp.graph.vertex_ids;
    const int u = g.vertex_count();
    g.vertex_ids.push_back(fresh_vertex_id(csp.graph, "u"));

    const value_t pinned = 0; // the first domain value
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        Constraint c;
        c.scope = csp.graph.hyperedges[i];
        c.scope.push_back(u); // u has the largest index; scope stays sorted
        for (const auto& t : csp.constraints[i].allowed) {
            std::vector<value_t> nt = t;
            nt.push_back(pinned);
            c.allowed.push_back(std::move(nt));
        }
        g.hyperedges.push_back(c.scope);
        cons.push_back(std::move(c));
    }
    Assignment fs = inst.source, ft = inst.target;
    fs.push_back(pinned);
    ft.push_back(pinned);
    std::vector<weight_t> w = inst.weights;
    w.push_back(1);
    CspInstance lifted = make_csp(std::move(g), csp.domain, std::move(cons));
    return make_reconfig(std::move(lifted), std::move(fs), std::move(ft), std::move(w));
}

ReconfigInstance kk_clique_to_2csr(const KkCliqueGraph& h) {
    h.validate();
    const int kappa = h.kappa;
    Hypergraph g;
    for (int i = 1; i <= kappa; ++i) g.vertex_ids.push_back("v" + std::to_string(i));
    g.vertex_ids.push_back("w1");
    g.vertex_ids.push_back("w2");
    const int w1 = kappa, w2 = kappa + 1;

    Domain d;
    for (int p = 0; p <= kappa; ++p) d.labels.push_back(std::to_string(p));
    const int k = kappa + 1; // values 0..kappa

    std::vector<Constraint> cons;
    // C(v_i v_j): clique-choice pairs plus everything containing 0.
    for (int i = 0; i < kappa; ++i)
        for (int j = i + 1; j < kappa; ++j) {
            Constraint c;
            c.scope = {i, j};
            std::set<std::vector<value_t>> allowed;
            for (value_t p = 1; p <= kappa; ++p)
                for (value_t q = 1; q <= kappa; ++q)
                    if (h.adjacent(i + 1, p, j + 1, q)) allowed.insert({p, q});
            for (value_t x = 0; x < k; ++x) {
                allowed.insert({0, x});
                allowed.insert({x, 0});
            }
            c.allowed.assign(allowed.begin(), allowed.end());
            cons.push_back(c);
            g.hyperedges.push_back(c.scope);
        }
    // C(w1 v_i) = D^2 \ {(0,0)}
    for (int i = 0; i < kappa; ++i) {
        Constraint c;
        c.scope = {i, w1};
        for (value_t a = 0; a < k; ++a)
            for (value_t b = 0; b < k; ++b)
                if (!(a == 0 && b == 0)) c.allowed.push_back({a, b}); // (v_i, w1) order
        cons.push_back(c);
        g.hyperedges.push_back(c.scope);
    }
    // C(w1 w2) = {(0,1),(0,2),(1,2),(2,1)}
    {
        Constraint c;
        c.scope = {w1, w2};
        c.allowed = {{0, 1}, {0, 2}, {1, 2}, {2, 1}};
        cons.push_back(c);
        g.hyperedges.push_back(c.scope);
    }

    Assignment fs(kappa + 2, 0), ft(kappa + 2, 0);
    fs[w1] = 1;
    fs[w2] = 2;
    ft[w1] = 2;
    ft[w2] = 1;
    CspInstance csp = make_csp(std::move(g), std::move(d), std::move(cons));
    return make_reconfig(std::move(csp), std::move(fs), std::move(ft));
}

ReconfigInstance labeled_clique_to_hr(const LabeledCliqueInstance& lc) {
    lc.validate();
    Hypergraph g;
    for (int i = 1; i <= lc.tau; ++i) g.vertex_ids.push_back("v" + std::to_string(i));
    Domain d;
    d.labels = lc.vertex_ids;

    std::vector<Constraint> cons;
    for (int i = 0; i < lc.tau; ++i)
        for (int j = i + 1; j < lc.tau; ++j) {
            Constraint c;
            c.scope = {i, j};
            for (auto [u, v] : lc.edges) {
                c.allowed.push_back({u, v});
                c.allowed.push_back({v, u});
            }
            g.hyperedges.push_back(c.scope);
            cons.push_back(std::move(c));
        }

    Assignment fs(lc.source.begin(), lc.source.end());
    Assignment ft(lc.target.begin(), lc.target.end());
    CspInstance csp = make_csp(std::move(g), std::move(d), std::move(cons));
    return make_reconfig(std::move(csp), std::move(fs), std::move(ft));
}

ReconfigInstance rword_to_lhr_path(const RWordSystem& sys) {
    sys.validate();
    const int m = static_cast<int>(sys.vertex_ids.size());
    // Value (x, p) = layer p copy of R-vertex x, p in {0,1,2}.
    auto val = [&](int x, int p) { return static_cast<value_t>(((p % 3) + 3) % 3 * m + x); };
    Domain d;
    for (int p = 0; p < 3; ++p)
        for (int x = 0; x < m; ++x) d.labels.push_back(sys.vertex_ids[x] + "@" + std::to_string(p));

    Hypergraph g;
    for (int i = 1; i <= sys.rho; ++i) g.vertex_ids.push_back("p" + std::to_string(i));

    std::vector<Constraint> cons;
    for (int i = 1; i < sys.rho; ++i) {
        Constraint c;
        c.scope = {i - 1, i};
        for (auto [x, y] : sys.arcs) c.allowed.push_back({val(x, i), val(y, i + 1)});
        g.hyperedges.push_back(c.scope);
        cons.push_back(std::move(c));
    }

    Assignment fs, ft;
    for (int i = 1; i <= sys.rho; ++i) {
        fs.push_back(val(sys.source[i - 1], i));
        ft.push_back(val(sys.target[i - 1], i));
    }
    CspInstance csp = make_csp(std::move(g), std::move(d), std::move(cons));
    return make_reconfig(std::move(csp), std::move(fs), std::move(ft));
}

} // namespace csr
