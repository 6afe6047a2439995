#include "csr/specialcase.hpp"

#include <algorithm>
#include <set>

namespace csr {

std::optional<LhrForm> detect_lhr(const CspInstance& csp) {
    for (const auto& e : csp.graph.hyperedges)
        require(e.size() == 2, errc::wrong_algorithm, "detect_lhr requires a 2-uniform instance");
    const int k = csp.k();
    LhrForm form;
    form.h_adjacent.assign(k, std::vector<bool>(k, false));
    form.lists = vertex_lists(csp);

    for (const Constraint& c : csp.constraints)
        for (const auto& t : c.allowed) {
            if (t[0] == t[1]) return std::nullopt; // loops are not allowed in H
            form.h_adjacent[t[0]][t[1]] = true;
            form.h_adjacent[t[1]][t[0]] = true;
        }

    // Accept iff every constraint is exactly E(H) n (L(v) x L(w)).
    for (std::size_t i = 0; i < csp.constraints.size(); ++i) {
        const Constraint& c = csp.constraints[i];
        const int v = c.scope[0], w = c.scope[1];
        std::vector<std::vector<value_t>> expect;
        for (value_t a : form.lists[v])
            for (value_t b : form.lists[w])
                if (form.h_edge(a, b)) expect.push_back({a, b});
        std::sort(expect.begin(), expect.end());
        if (expect != c.allowed) return std::nullopt;
    }
    return form;
}

CspInstance lhr_to_csp(const LhrForm& form, const Hypergraph& graph, const Domain& domain) {
    std::vector<Constraint> cons;
    for (const auto& e : graph.hyperedges) {
        require(e.size() == 2, errc::wrong_algorithm, "lhr_to_csp requires a 2-uniform graph");
        Constraint c;
        c.scope = e;
        for (value_t a : form.lists[e[0]])
            for (value_t b : form.lists[e[1]])
                if (form.h_edge(a, b)) c.allowed.push_back({a, b});
        cons.push_back(std::move(c));
    }
    Hypergraph g = graph;
    return make_csp(std::move(g), domain, std::move(cons));
}

namespace {

/// Connected components of H (on all k values; isolated values are their own
/// components).
std::vector<int> h_components(const LhrForm& form, int k) {
    std::vector<int> comp(k, -1);
    int c = 0;
    for (int s = 0; s < k; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < k; ++b)
                if (form.h_adjacent[a][b] && comp[b] < 0) {
                    comp[b] = c;
                    stack.push_back(b);
                }
        }
        ++c;
    }
    return comp;
}

} // namespace

LhrDecision solve_lhr_k3(const ReconfigInstance& inst, const LhrForm& form,
                         std::uint64_t oracle_budget) {
    const CspInstance& csp = inst.csp;
    const int k = csp.k();
    require(k <= 3, errc::wrong_algorithm, "solve_lhr_k3 requires |V(H)| <= 3");
    require(is_solution(csp, inst.source), errc::malformed_instance, "source is not a solution");
    require(is_solution(csp, inst.target), errc::malformed_instance, "target is not a solution");

    std::vector<int> hcomp = h_components(form, k);
    std::set<std::string> branches;

    for (const std::vector<int>& comp : csp.graph.components()) {
        if (comp.size() == 1) {
            // Isolated vertex: its one-vertex solution graph is complete, any
            // value reaches any other.
            branches.insert("isolated");
            continue;
        }
        const int cs = hcomp[inst.source[comp[0]]];
        const int ct = hcomp[inst.target[comp[0]]];
        if (cs != ct) return {false, "component-mismatch"};

        // Vertices of the H-component the images live in.
        std::vector<value_t> hverts;
        for (value_t a = 0; a < k; ++a)
            if (hcomp[a] == cs) hverts.push_back(a);

        bool complete = true;
        for (value_t a : hverts)
            for (value_t b : hverts)
                if (a != b && !form.h_edge(a, b)) complete = false;

        if (complete) {
            // List-coloring-shaped component; decided by the oracle.
            InstanceRestriction sub = [&] {
                std::vector<int> removed;
                std::set<int> keep(comp.begin(), comp.end());
                for (int v = 0; v < csp.vertex_count(); ++v)
                    if (!keep.count(v)) removed.push_back(v);
                return restrict_instance(csp, removed, nullptr);
            }();
            Assignment fs, ft;
            for (int v : sub.new_to_old) {
                fs.push_back(inst.source[v]);
                ft.push_back(inst.target[v]);
            }
            ReconfigInstance part = make_reconfig(std::move(sub.csp), std::move(fs), std::move(ft));
            if (!is_reconfigurable(part, oracle_budget)) return {false, "complete"};
            branches.insert("complete");
        } else {
            // With <= 3 values the only connected non-complete H-component is
            // the two-edge path; mid is its degree-2 value.
            value_t mid = -1;
            for (value_t a : hverts) {
                int deg = 0;
                for (value_t b : hverts)
                    if (form.h_edge(a, b)) ++deg;
                if (deg == 2) mid = a;
            }
            require(mid >= 0, errc::wrong_algorithm,
                    "solve_lhr_k3: unexpected underlying component shape");
            std::vector<int> vs, vt; // vertices assigned an endpoint value
            for (int v : comp) {
                if (inst.source[v] != mid) vs.push_back(v);
                if (inst.target[v] != mid) vt.push_back(v);
            }
            if (vs != vt) return {false, "path"};
            branches.insert("path");
        }
    }
    LhrDecision out;
    out.yes = true;
    out.branch = branches.size() == 1 ? *branches.begin() : "mixed";
    if (branches.empty()) out.branch = "trivial";
    return out;
}

} // namespace csr
