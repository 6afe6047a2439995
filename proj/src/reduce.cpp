#include "csr/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "csr/specialcase.hpp"

namespace csr {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

IdenticalCheck check_identical(const ReconfigInstance& inst, std::vector<int> v1,
                               std::vector<int> v2, std::vector<std::pair<int, int>> phi) {
    const CspInstance& csp = inst.csp;
    v1 = sorted_unique(std::move(v1));
    v2 = sorted_unique(std::move(v2));
    require(!v1.empty() && !v2.empty(), errc::invalid_witness,
            "identical check: vertex sets must be non-empty");
    require(v1.size() == v2.size(), errc::invalid_witness,
            "identical check: |V1| must equal |V2|");
    for (int v : v1)
        require(!std::binary_search(v2.begin(), v2.end(), v), errc::invalid_witness,
                "identical check: V1 and V2 must be disjoint");
    for (int v : v1)
        require(v >= 0 && v < csp.vertex_count(), errc::invalid_witness,
                "identical check: vertex outside V(G)");
    for (int v : v2)
        require(v >= 0 && v < csp.vertex_count(), errc::invalid_witness,
                "identical check: vertex outside V(G)");

    IdenticalCheck out;
    out.witness.v1 = v1;
    out.witness.v2 = v2;

    std::vector<int> w1 = csp.graph.neighborhood(v1);
    std::vector<int> w2 = csp.graph.neighborhood(v2);
    if (w1 != w2) {
        out.failure = "N(V1) != N(V2)";
        return out;
    }
    const std::vector<int>& boundary = w1;
    out.witness.boundary = boundary;

    // phi: V1 -> V2 bijection; pairs for boundary vertices are accepted only
    // as the identity (condition (2)).
    std::map<int, int> fwd;
    std::set<int> hit;
    for (auto [from, to] : phi) {
        if (std::binary_search(boundary.begin(), boundary.end(), from)) {
            if (from != to) {
                out.failure = "condition (2): phi must fix W pointwise";
                return out;
            }
            continue;
        }
        require(std::binary_search(v1.begin(), v1.end(), from), errc::invalid_witness,
                "identical check: phi source outside V1 u W");
        require(std::binary_search(v2.begin(), v2.end(), to), errc::invalid_witness,
                "identical check: phi target outside V2");
        require(fwd.emplace(from, to).second, errc::invalid_witness,
                "identical check: phi maps a vertex twice");
        require(hit.insert(to).second, errc::invalid_witness,
                "identical check: phi hits a vertex twice");
    }
    require(fwd.size() == v1.size(), errc::invalid_witness,
            "identical check: phi must cover V1");
    out.witness.phi.assign(fwd.begin(), fwd.end());

    auto image_of = [&](int v) {
        auto it = fwd.find(v);
        return it == fwd.end() ? v : it->second; // boundary is fixed
    };

    // Every hyperedge meeting V1 lies inside V1 u W since W = N(V1); the
    // derived pi must map that family onto the hyperedges meeting V2.
    std::vector<int> edges1, edges2;
    for (int i = 0; i < static_cast<int>(csp.graph.hyperedges.size()); ++i) {
        const auto& e = csp.graph.hyperedges[i];
        bool m1 = false, m2 = false;
        for (int v : e) {
            m1 |= std::binary_search(v1.begin(), v1.end(), v);
            m2 |= std::binary_search(v2.begin(), v2.end(), v);
        }
        if (m1) edges1.push_back(i);
        if (m2) edges2.push_back(i);
    }
    std::map<std::vector<int>, int> edge2_index;
    for (int i : edges2) edge2_index[csp.graph.hyperedges[i]] = i;

    if (edges1.size() != edges2.size()) {
        out.failure = "condition (1): H1' and H2' are not isomorphic under phi";
        return out;
    }
    std::vector<std::pair<int, int>> matched; // (edge in E(H1'), pi-image)
    for (int i : edges1) {
        std::vector<int> image;
        for (int v : csp.graph.hyperedges[i]) image.push_back(image_of(v));
        std::sort(image.begin(), image.end());
        auto it = edge2_index.find(image);
        if (it == edge2_index.end()) {
            out.failure = "condition (1): H1' and H2' are not isomorphic under phi";
            return out;
        }
        matched.push_back({i, it->second});
    }

    for (int v : v1) {
        const int u = image_of(v);
        if (inst.source[v] != inst.source[u] || inst.target[v] != inst.target[u]) {
            out.failure = "condition (3): asgn mismatch at " + csp.graph.vertex_ids[v];
            return out;
        }
    }

    for (auto [i, j] : matched) {
        std::vector<std::pair<int, int>> edge_phi;
        for (int v : csp.graph.hyperedges[i]) edge_phi.push_back({v, image_of(v)});
        Constraint translated = translate_constraint(csp.constraints[i], edge_phi);
        if (translated.allowed != csp.constraints[j].allowed) {
            out.failure = "condition (4): constraint mismatch on hyperedge " + std::to_string(i);
            return out;
        }
    }

    out.ok = true;
    return out;
}

IdentifyResult identify(const ReconfigInstance& inst, const IdenticalWitness& w) {
    IdenticalCheck chk = check_identical(inst, w.v1, w.v2, w.phi);
    require(chk.ok, errc::invalid_witness, "identify: witness invalid: " + chk.failure);

    InstanceRestriction res = restrict_instance(inst.csp, w.v2, nullptr);
    Assignment fs, ft;
    std::vector<weight_t> weights;
    for (int v : res.new_to_old) {
        fs.push_back(inst.source[v]);
        ft.push_back(inst.target[v]);
        weights.push_back(inst.weights[v]);
    }
    IdentifyResult out;
    out.inst = make_reconfig(std::move(res.csp), std::move(fs), std::move(ft), std::move(weights));
    out.old_to_new = std::move(res.old_to_new);
    out.new_to_old = std::move(res.new_to_old);
    return out;
}

std::vector<Assignment> lift_sequence(const ReconfigInstance& inst, const IdenticalWitness& w,
                                      std::vector<Assignment> reduced_seq) {
    IdentifyResult red = identify(inst, w);
    if (reduced_seq.empty()) reduced_seq.push_back(red.inst.source);
    require(reduced_seq.front() == red.inst.source, errc::invalid_sequence,
            "lift_sequence: sequence must start at the reduced source");
    require(reduced_seq.back() == red.inst.target, errc::invalid_sequence,
            "lift_sequence: sequence must end at the reduced target");
    for (const Assignment& f : reduced_seq)
        require(is_solution(red.inst.csp, f), errc::invalid_sequence,
                "lift_sequence: sequence contains a non-solution");
    for (std::size_t i = 0; i + 1 < reduced_seq.size(); ++i)
        require(difference(reduced_seq[i], reduced_seq[i + 1]).size() == 1,
                errc::invalid_sequence, "lift_sequence: steps must change exactly one vertex");

    std::map<int, int> inv; // v2 vertex -> v1 preimage
    for (auto [a, b] : w.phi) inv[b] = a;

    auto extend = [&](const Assignment& f) {
        Assignment full(inst.vertex_count());
        for (int v = 0; v < inst.vertex_count(); ++v) {
            auto it = inv.find(v);
            const int src = it == inv.end() ? v : it->second;
            full[v] = f[red.old_to_new[src]];
        }
        return full;
    };

    std::map<int, int> fwd(w.phi.begin(), w.phi.end());
    std::vector<Assignment> walk;
    walk.push_back(extend(reduced_seq.front()));
    for (std::size_t i = 0; i + 1 < reduced_seq.size(); ++i) {
        const Assignment next = extend(reduced_seq[i + 1]);
        const Assignment& cur = walk.back();
        std::vector<int> diff = difference(cur, next);
        if (diff.size() == 2) {
            // The changed vertex was in V1; change it first, its copy second.
            const int a = fwd.count(diff[0]) ? diff[0] : diff[1];
            Assignment mid = cur;
            mid[a] = next[a];
            walk.push_back(std::move(mid));
        }
        walk.push_back(next);
    }
    for (const Assignment& f : walk)
        require(is_solution(inst.csp, f), errc::invalid_sequence,
                "lift_sequence: lifted walk left the solution set");
    return walk;
}

bool check_lhr_identical(const ReconfigInstance& inst, const std::vector<int>& v1_in,
                         const std::vector<int>& v2_in,
                         const std::vector<std::pair<int, int>>& phi) {
    require(detect_lhr(inst.csp).has_value(), errc::wrong_algorithm,
            "check_lhr_identical requires a list-homomorphism instance");
    std::vector<int> v1 = sorted_unique(v1_in);
    std::vector<int> v2 = sorted_unique(v2_in);
    require(!v1.empty() && v1.size() == v2.size(), errc::invalid_witness,
            "lhr-identical: vertex sets must be non-empty and of equal size");
    for (int v : v1)
        require(!std::binary_search(v2.begin(), v2.end(), v), errc::invalid_witness,
                "lhr-identical: V1 and V2 must be disjoint");
    std::map<int, int> fwd;
    std::set<int> hit;
    for (auto [a, b] : phi) {
        require(std::binary_search(v1.begin(), v1.end(), a) &&
                    std::binary_search(v2.begin(), v2.end(), b),
                errc::invalid_witness, "lhr-identical: phi outside V1 x V2");
        require(fwd.emplace(a, b).second && hit.insert(b).second, errc::invalid_witness,
                "lhr-identical: phi not a bijection");
    }
    require(fwd.size() == v1.size(), errc::invalid_witness, "lhr-identical: phi must cover V1");

    auto adj = inst.csp.graph.adjacency();
    auto adjacent = [&](int a, int b) {
        return std::binary_search(adj[a].begin(), adj[a].end(), b);
    };

    // (i) induced-subgraph isomorphism under phi
    for (int a : v1)
        for (int b : v1)
            if (a < b && adjacent(a, b) != adjacent(fwd.at(a), fwd.at(b))) return false;

    auto lists = vertex_lists(inst.csp);
    for (int v : v1) {
        const int u = fwd.at(v);
        // (ii)-a equal neighborhoods outside the subgraphs
        std::vector<int> nv, nu;
        for (int x : adj[v])
            if (!std::binary_search(v1.begin(), v1.end(), x)) nv.push_back(x);
        for (int x : adj[u])
            if (!std::binary_search(v2.begin(), v2.end(), x)) nu.push_back(x);
        if (nv != nu) return false;
        // (ii)-b endpoint pairs
        if (inst.source[v] != inst.source[u] || inst.target[v] != inst.target[u]) return false;
        // (ii)-c equal lists
        if (lists[v] != lists[u]) return false;
    }
    return true;
}

IdentifyResult identify_weighted(const ReconfigInstance& inst, int v1, int v2) {
    IdenticalCheck chk = check_identical(inst, {v1}, {v2}, {{v1, v2}});
    require(chk.ok, errc::invalid_witness, "identify_weighted: pair not identical: " + chk.failure);
    IdentifyResult out = identify(inst, chk.witness);
    out.inst.weights[out.old_to_new[v1]] += inst.weights[v2];
    return out;
}

std::vector<Assignment> ReductionTrace::lift(std::vector<Assignment> walk) const {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        walk = lift_sequence(it->before, it->witness, std::move(walk));
    return walk;
}

ReconfigInstance greedy_identify_twins(const ReconfigInstance& inst, std::vector<int> candidates,
                                       bool weighted, ReductionTrace* trace, int* applications) {
    ReconfigInstance cur = inst;
    std::vector<int> cand = sorted_unique(std::move(candidates));
    if (applications) *applications = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < cand.size() && !progress; ++i) {
            for (std::size_t j = i + 1; j < cand.size() && !progress; ++j) {
                const int a = cand[i], b = cand[j];
                IdenticalCheck chk = check_identical(cur, {a}, {b}, {{a, b}});
                if (!chk.ok) continue;
                if (trace) trace->steps.push_back({cur, chk.witness});
                IdentifyResult res =
                    weighted ? identify_weighted(cur, a, b) : identify(cur, chk.witness);
                std::vector<int> next_cand;
                for (int v : cand)
                    if (res.old_to_new[v] >= 0) next_cand.push_back(res.old_to_new[v]);
                cand = std::move(next_cand);
                cur = std::move(res.inst);
                if (applications) ++*applications;
                progress = true;
            }
        }
    }
    return cur;
}

} // namespace csr
