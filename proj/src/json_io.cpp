#include "csr/json_io.hpp"

#include <fstream>
#include <ostream>
#include <set>

namespace csr {

namespace {

void reject_unknown_fields(const json& j, const std::set<std::string>& known,
                           const std::string& what) {
    require(j.is_object(), errc::io_error, what + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        require(known.count(it.key()) > 0, errc::io_error,
                what + ": unknown field '" + it.key() + "'");
}

const json& field(const json& j, const std::string& name, const std::string& what) {
    auto it = j.find(name);
    require(it != j.end(), errc::io_error, what + ": missing field '" + name + "'");
    return *it;
}

Assignment assignment_from_json(const json& j, const Hypergraph& g, const Domain& d,
                                const std::string& what) {
    require(j.is_object(), errc::io_error, what + " must be an object id -> label");
    Assignment f(g.vertex_count(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int v = g.index_of(it.key());
        require(v >= 0, errc::io_error, what + ": unknown vertex '" + it.key() + "'");
        require(it.value().is_string(), errc::io_error, what + ": labels must be strings");
        const int val = d.index_of(it.value().get<std::string>());
        require(val >= 0, errc::io_error,
                what + ": unknown value label '" + it.value().get<std::string>() + "'");
        f[v] = val;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        require(f[v] >= 0, errc::io_error,
                what + ": missing vertex '" + g.vertex_ids[v] + "'");
    return f;
}

} // namespace

ReconfigInstance instance_from_json(const json& j) {
    reject_unknown_fields(j, {"domain", "vertices", "hyperedges", "source", "target", "weights"},
                          "instance");
    Domain d;
    for (const auto& l : field(j, "domain", "instance")) {
        require(l.is_string(), errc::io_error, "domain labels must be strings");
        d.labels.push_back(l.get<std::string>());
    }
    d.validate();

    Hypergraph g;
    for (const auto& v : field(j, "vertices", "instance")) {
        require(v.is_string(), errc::io_error, "vertex ids must be strings");
        g.vertex_ids.push_back(v.get<std::string>());
    }

    std::vector<Constraint> cons;
    for (const auto& he : field(j, "hyperedges", "instance")) {
        reject_unknown_fields(he, {"scope", "allowed"}, "hyperedge");
        Constraint c;
        std::vector<int> scope;
        for (const auto& id : field(he, "scope", "hyperedge")) {
            require(id.is_string(), errc::io_error, "scope ids must be strings");
            const int v = g.index_of(id.get<std::string>());
            require(v >= 0, errc::io_error,
                    "hyperedge scope references unknown vertex '" + id.get<std::string>() + "'");
            scope.push_back(v);
        }
        c.scope = scope;
        for (const auto& tuple : field(he, "allowed", "hyperedge")) {
            require(tuple.is_array() && tuple.size() == scope.size(), errc::io_error,
                    "allowed tuples must have the scope's length");
            std::vector<value_t> t;
            for (const auto& l : tuple) {
                require(l.is_string(), errc::io_error, "tuple values must be label strings");
                const int val = d.index_of(l.get<std::string>());
                require(val >= 0, errc::io_error,
                        "tuple uses unknown value label '" + l.get<std::string>() + "'");
                t.push_back(val);
            }
            c.allowed.push_back(std::move(t));
        }
        g.hyperedges.push_back(scope);
        cons.push_back(std::move(c));
    }

    // make_csp canonicalizes scopes; constraints carry the file's scope order.
    for (std::size_t i = 0; i < cons.size(); ++i) {
        std::sort(g.hyperedges[i].begin(), g.hyperedges[i].end());
        g.hyperedges[i].erase(std::unique(g.hyperedges[i].begin(), g.hyperedges[i].end()),
                              g.hyperedges[i].end());
        require(g.hyperedges[i].size() == cons[i].scope.size(), errc::io_error,
                "hyperedge scope contains a repeated vertex");
    }
    CspInstance csp = make_csp(std::move(g), std::move(d), std::move(cons));

    Assignment fs = assignment_from_json(field(j, "source", "instance"), csp.graph, csp.domain,
                                         "source");
    Assignment ft = assignment_from_json(field(j, "target", "instance"), csp.graph, csp.domain,
                                         "target");
    std::vector<weight_t> weights;
    if (j.contains("weights")) {
        const json& w = j.at("weights");
        require(w.is_object(), errc::io_error, "weights must be an object id -> integer");
        weights.assign(csp.vertex_count(), 1);
        for (auto it = w.begin(); it != w.end(); ++it) {
            const int v = csp.graph.index_of(it.key());
            require(v >= 0, errc::io_error, "weights: unknown vertex '" + it.key() + "'");
            require(it.value().is_number_unsigned() && it.value().get<std::uint64_t>() >= 1,
                    errc::io_error, "weights must be positive integers");
            weights[v] = it.value().get<std::uint64_t>();
        }
    }
    try {
        return make_reconfig(std::move(csp), std::move(fs), std::move(ft), std::move(weights));
    } catch (const error& e) {
        fail(errc::io_error, std::string("instance rejected: ") + e.what());
    }
}

json instance_to_json(const ReconfigInstance& inst) {
    const CspInstance& csp = inst.csp;
    json j;
    j["domain"] = csp.domain.labels;
    j["vertices"] = csp.graph.vertex_ids;
    json edges = json::array();
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        json he;
        json scope = json::array();
        for (int v : csp.constraints[i].scope) scope.push_back(csp.graph.vertex_ids[v]);
        he["scope"] = scope;
        json allowed = json::array();
        for (const auto& t : csp.constraints[i].allowed) {
            json tuple = json::array();
            for (value_t x : t) tuple.push_back(csp.domain.labels[x]);
            allowed.push_back(tuple);
        }
        he["allowed"] = allowed;
        edges.push_back(he);
    }
    j["hyperedges"] = edges;
    json src, tgt;
    for (int v = 0; v < csp.vertex_count(); ++v) {
        src[csp.graph.vertex_ids[v]] = csp.domain.labels[inst.source[v]];
        tgt[csp.graph.vertex_ids[v]] = csp.domain.labels[inst.target[v]];
    }
    j["source"] = src;
    j["target"] = tgt;
    bool unit = true;
    for (weight_t w : inst.weights) unit = unit && w == 1;
    if (!unit) {
        json w;
        for (int v = 0; v < csp.vertex_count(); ++v) w[csp.graph.vertex_ids[v]] = inst.weights[v];
        j["weights"] = w;
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::io_error, path + ": " + e.what());
    }
    return j;
}

ReconfigInstance load_instance_file(const std::string& path) {
    return instance_from_json(load_json_file(path));
}

void save_instance_file(const std::string& path, const ReconfigInstance& inst) {
    std::ofstream out(path);
    require(out.good(), errc::io_error, "cannot write " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

KkCliqueGraph kkclique_from_json(const json& j) {
    reject_unknown_fields(j, {"kappa", "edges"}, "kkclique");
    KkCliqueGraph h;
    require(field(j, "kappa", "kkclique").is_number_integer(), errc::io_error,
            "kappa must be an integer");
    h.kappa = j.at("kappa").get<int>();
    for (const auto& e : field(j, "edges", "kkclique")) {
        require(e.is_array() && e.size() == 4, errc::io_error,
                "kkclique edges must be [i, p, j, q] arrays");
        h.add_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>());
    }
    h.validate();
    return h;
}

LabeledCliqueInstance lclique_from_json(const json& j) {
    reject_unknown_fields(j, {"vertices", "edges", "tau", "source", "target"}, "lclique");
    LabeledCliqueInstance lc;
    for (const auto& v : field(j, "vertices", "lclique"))
        lc.vertex_ids.push_back(v.get<std::string>());
    auto idx = [&](const json& v) {
        for (std::size_t i = 0; i < lc.vertex_ids.size(); ++i)
            if (lc.vertex_ids[i] == v.get<std::string>()) return static_cast<int>(i);
        fail(errc::io_error, "lclique: unknown vertex '" + v.get<std::string>() + "'");
    };
    for (const auto& e : field(j, "edges", "lclique")) {
        require(e.is_array() && e.size() == 2, errc::io_error, "lclique edges must be pairs");
        int u = idx(e[0]), v = idx(e[1]);
        if (u > v) std::swap(u, v);
        require(u != v, errc::io_error, "lclique: loops are not allowed");
        lc.edges.insert({u, v});
    }
    lc.tau = field(j, "tau", "lclique").get<int>();
    for (const auto& v : field(j, "source", "lclique")) lc.source.push_back(idx(v));
    for (const auto& v : field(j, "target", "lclique")) lc.target.push_back(idx(v));
    lc.validate();
    return lc;
}

RWordSystem rword_from_json(const json& j) {
    reject_unknown_fields(j, {"vertices", "arcs", "rho", "source", "target"}, "rword");
    RWordSystem sys;
    for (const auto& v : field(j, "vertices", "rword"))
        sys.vertex_ids.push_back(v.get<std::string>());
    auto idx = [&](const json& v) {
        for (std::size_t i = 0; i < sys.vertex_ids.size(); ++i)
            if (sys.vertex_ids[i] == v.get<std::string>()) return static_cast<int>(i);
        fail(errc::io_error, "rword: unknown vertex '" + v.get<std::string>() + "'");
    };
    for (const auto& e : field(j, "arcs", "rword")) {
        require(e.is_array() && e.size() == 2, errc::io_error, "rword arcs must be pairs");
        sys.arcs.insert({idx(e[0]), idx(e[1])});
    }
    sys.rho = field(j, "rho", "rword").get<int>();
    for (const auto& v : field(j, "source", "rword")) sys.source.push_back(idx(v));
    for (const auto& v : field(j, "target", "rword")) sys.target.push_back(idx(v));
    sys.validate();
    return sys;
}

KkCliqueGraph load_kkclique_file(const std::string& path) {
    return kkclique_from_json(load_json_file(path));
}
LabeledCliqueInstance load_lclique_file(const std::string& path) {
    return lclique_from_json(load_json_file(path));
}
RWordSystem load_rword_file(const std::string& path) {
    return rword_from_json(load_json_file(path));
}

void write_solution_graph(std::ostream& os, const SolutionGraph& g) {
    os << "p sol " << g.solutions.size() << " " << g.edges.size() << "\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        os << g.edges[e].first << " " << g.edges[e].second << " " << g.edge_weights[e] << "\n";
}

void write_implication_graph(std::ostream& os, const ImplicationGraph& ig,
                             const Hypergraph& graph) {
    for (auto [a, b] : ig.arcs)
        os << graph.vertex_ids[a / 2] << ":" << a % 2 << " -> " << graph.vertex_ids[b / 2] << ":"
           << b % 2 << "\n";
}

} // namespace csr
