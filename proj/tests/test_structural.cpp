#include <doctest.h>

#include "csr/oracle.hpp"
#include "csr/structural.hpp"
#include "test_helpers.hpp"

using namespace csr;
using namespace csr::test;

namespace {

std::vector<std::vector<value_t>> coloring_table(int k) {
    std::vector<std::vector<value_t>> t;
    for (value_t a = 0; a < k; ++a)
        for (value_t b = 0; b < k; ++b)
            if (a != b) t.push_back({a, b});
    return t;
}

Hypergraph graph_of(int n, std::vector<std::vector<int>> edges) {
    Hypergraph g;
    g.vertex_ids = names(n);
    g.hyperedges = std::move(edges);
    return g;
}

/// Random instance with a small vertex cover: cover vertices wired among
/// themselves and to pendant/independent vertices only.
ReconfigInstance random_vc_instance(Rng& rng, int cover_size, int independent, int k) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        const int n = cover_size + independent;
        std::vector<std::pair<std::vector<int>, std::vector<std::vector<value_t>>>> edges;
        auto table = [&] {
            std::vector<std::vector<value_t>> t;
            for (value_t a = 0; a < k; ++a)
                for (value_t b = 0; b < k; ++b)
                    if (rng.chance(0.65)) t.push_back({a, b});
            return t;
        };
        for (int a = 0; a < cover_size; ++a)
            for (int b = a + 1; b < cover_size; ++b)
                if (rng.chance(0.5)) edges.push_back({{a, b}, table()});
        for (int v = cover_size; v < n; ++v)
            for (int a = 0; a < cover_size; ++a)
                if (rng.chance(0.7)) edges.push_back({{a, v}, table()});
        CspInstance csp;
        try {
            csp = csp_of(n, k, edges);
        } catch (const error&) {
            continue;
        }
        std::vector<Assignment> sols = brute_solutions(csp);
        if (sols.empty()) continue;
        return make_reconfig(csp, sols[rng.below(sols.size())], sols[rng.below(sols.size())]);
    }
    fail(errc::generation_failure, "random_vc_instance: retries exhausted");
}

} // namespace

TEST_CASE("find_vertex_cover") {
    CHECK(find_vertex_cover(graph_of(3, {}), 0)->empty());
    // K3 needs two vertices
    Hypergraph k3 = graph_of(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK_FALSE(find_vertex_cover(k3, 1).has_value());
    CHECK(find_vertex_cover(k3, 2).has_value());
    CHECK(minimum_vertex_cover(k3).size() == 2);
    // star: its center
    Hypergraph star = graph_of(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(minimum_vertex_cover(star) == std::vector<int>{0});
}

TEST_CASE("substitute") {
    CspInstance xor2 = csp_of(2, 2, {{{0, 1}, {{0, 1}, {1, 0}}}});
    // empty substitution: unchanged
    InstanceRestriction none = substitute(xor2, {});
    CHECK(none.csp.graph.hyperedges == xor2.graph.hyperedges);
    CHECK(none.consistent);

    // substituting one endpoint of the xor edge forces the other
    PartialAssignment h = restrict_to(Assignment{0, 0}, std::vector<int>{0});
    InstanceRestriction sub = substitute(xor2, h);
    CHECK(sub.consistent);
    REQUIRE(sub.csp.constraints.size() == 1);
    CHECK(sub.csp.constraints[0].scope == std::vector<int>{0});
    CHECK(sub.csp.constraints[0].allowed == std::vector<std::vector<value_t>>{{1}});

    // incompatible substitution produces an empty constraint
    CspInstance eq = csp_of(2, 2, {{{0, 1}, {{0, 0}}}});
    InstanceRestriction bad = substitute(eq, restrict_to(Assignment{1, 0}, std::vector<int>{0}));
    CHECK(bad.csp.constraints[0].allowed.empty());

    // a constraint fully inside S is checked against h
    InstanceRestriction in1 = substitute(eq, restrict_to(Assignment{0, 0}, std::vector<int>{0, 1}));
    CHECK(in1.consistent);
    InstanceRestriction in2 = substitute(eq, restrict_to(Assignment{1, 1}, std::vector<int>{0, 1}));
    CHECK_FALSE(in2.consistent);

    CHECK_THROWS_AS(substitute(xor2, restrict_to(Assignment{0, 0, 0}, std::vector<int>{2})),
                    error);
}

TEST_CASE("substitution is a bijection onto the compatible solutions") {
    Rng rng(91);
    for (int trial = 0; trial < 25; ++trial) {
        ReconfigInstance inst = random_instance(rng, 5, 2, 3, 0.5);
        const int n = inst.vertex_count();
        // random S and h
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (rng.chance(0.4)) s.push_back(v);
        Assignment probe(n);
        for (auto& x : probe) x = static_cast<value_t>(rng.below(2));
        PartialAssignment h = restrict_to(probe, s);
        InstanceRestriction sub = substitute(inst.csp, h);

        std::set<Assignment> lhs; // restrictions of matching solutions
        for (const Assignment& f : brute_solutions(inst.csp)) {
            bool match = true;
            for (std::size_t i = 0; i < h.verts.size(); ++i)
                if (f[h.verts[i]] != h.vals[i]) match = false;
            if (!match) continue;
            Assignment r;
            for (int v : sub.new_to_old) r.push_back(f[v]);
            lhs.insert(r);
        }
        std::set<Assignment> rhs;
        if (sub.consistent)
            for (const Assignment& f : brute_solutions(sub.csp)) rhs.insert(f);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("merge_into_cover preserves the solution set") {
    Rng rng(92);
    for (int trial = 0; trial < 25; ++trial) {
        ReconfigInstance inst = random_vc_instance(rng, 2, 3, 2);
        CspInstance merged = merge_into_cover(inst.csp, {0, 1}, 1 << 20);
        CHECK(brute_solutions(merged) == brute_solutions(inst.csp));
        // one hyperedge per independent vertex, containing the cover
        for (int v = 2; v < inst.vertex_count(); ++v) {
            int count = 0;
            for (const auto& e : merged.graph.hyperedges)
                if (std::find(e.begin(), e.end(), v) != e.end()) {
                    ++count;
                    CHECK(e.size() == 3);
                }
            CHECK(count == 1);
        }
    }
}

TEST_CASE("solve_vc_csg examples") {
    // star K_{1,3} with proper 3-colorings, cover = center
    CspInstance star = csp_of(4, 3, {{{0, 1}, coloring_table(3)},
                                     {{0, 2}, coloring_table(3)},
                                     {{0, 3}, coloring_table(3)}});
    auto sols = enumerate_solutions(star, 100);
    ContractedSolutionGraph csg =
        build_vc_csg(make_reconfig(star, sols.front(), sols.back()), {0}, 1 << 20);
    CHECK(csg.nodes.size() == 3);
    CHECK(csg.edges.size() == 3); // triangle on the three center values
    for (const auto& a : sols)
        for (const auto& b : sols)
            CHECK(solve_vc_csg(make_reconfig(star, a, b), {0}, 1 << 20));

    // K2 2-coloring with cover {v1}: two nodes, no edge
    CspInstance k2 = csp_of(2, 2, {{{0, 1}, coloring_table(2)}});
    ReconfigInstance swap = make_reconfig(k2, {0, 1}, {1, 0});
    ContractedSolutionGraph kcsg = build_vc_csg(swap, {0}, 1 << 20);
    CHECK(kcsg.nodes.size() == 2);
    CHECK(kcsg.edges.empty());
    CHECK_FALSE(solve_vc_csg(swap, {0}, 1 << 20));
    CHECK(solve_vc_csg(make_reconfig(k2, {0, 1}, {0, 1}), {0}, 1 << 20));

    // not a cover
    CspInstance p3 = csp_of(3, 2, {{{0, 1}, coloring_table(2)}, {{1, 2}, coloring_table(2)}});
    CHECK_THROWS_AS(solve_vc_csg(make_reconfig(p3, {0, 1, 0}, {0, 1, 0}), {0}, 1 << 20), error);
}

TEST_CASE("solve_vc_csg equals the oracle; classes are oracle-connected") {
    Rng rng(93);
    for (int trial = 0; trial < 40; ++trial) {
        const int cover_size = 1 + static_cast<int>(rng.below(3));
        ReconfigInstance inst = random_vc_instance(rng, cover_size, 3, 2 + rng.below(2));
        std::vector<int> cover;
        for (int c = 0; c < cover_size; ++c) cover.push_back(c);
        CHECK(solve_vc_csg(inst, cover, 1 << 20) == is_reconfigurable(inst, 1 << 20));

        // Every CSG class induces a connected subgraph of the solution graph.
        SolutionGraph g = build_solution_graph(inst.csp, inst.weights, 1 << 20);
        ContractedSolutionGraph csg = build_vc_csg(inst, cover, 1 << 20);
        for (const auto& key : csg.nodes) {
            std::vector<int> members;
            for (int i = 0; i < static_cast<int>(g.solutions.size()); ++i) {
                bool in = true;
                for (std::size_t c = 0; c < cover.size(); ++c)
                    if (g.solutions[i][cover[c]] != key[c]) in = false;
                if (in) members.push_back(i);
            }
            CHECK(!members.empty());
            // BFS inside the class
            std::set<int> mem(members.begin(), members.end());
            std::set<int> seen{members[0]};
            std::vector<int> stack{members[0]};
            auto adj = g.adjacency();
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (auto [w, e] : adj[u])
                    if (mem.count(w) && !seen.count(w)) {
                        seen.insert(w);
                        stack.push_back(w);
                    }
            }
            CHECK(seen.size() == mem.size());
        }
    }
}

TEST_CASE("kernelize_vc_weighted") {
    // the independent-set bound at k = 2, vc = 1 evaluates to 4 * 2^4 = 64
    KernelBound b1 = vc_kernel_bound(1, 2);
    CHECK(b1.finite_u64);
    CHECK(b1.value == 64);
    KernelBound b2 = vc_kernel_bound(2, 2);
    CHECK(b2.value == 1024);

    // no twins: unchanged
    CspInstance p3 = csp_of(3, 2, {{{0, 1}, {{0, 1}, {1, 0}}}, {{1, 2}, {{0, 1}, {1, 1}}}});
    ReconfigInstance odd = make_reconfig(p3, {0, 1, 1}, {0, 1, 1});
    int apps = -1;
    ReconfigInstance same = kernelize_vc_weighted(odd, {1}, 1 << 20, &apps);
    CHECK(apps == 0);
    CHECK(same.vertex_count() == 3);

    // OPT preserved on random coverable instances
    Rng rng(94);
    for (int trial = 0; trial < 30; ++trial) {
        ReconfigInstance inst = random_vc_instance(rng, 1 + rng.below(2), 4, 2);
        for (int v = 0; v < inst.vertex_count(); ++v) inst.weights[v] = 1 + rng.below(4);
        std::vector<int> cover;
        for (int c = 0; c < inst.vertex_count() - 4; ++c) cover.push_back(c);
        ReconfigInstance kernel = kernelize_vc_weighted(inst, cover, 1 << 20, nullptr);
        auto before = shortest_reconfiguration(inst, 1 << 20);
        auto after = shortest_reconfiguration(kernel, 1 << 20);
        CHECK(before == after);
    }
}

TEST_CASE("vc kernel bound bites on many pendant twins") {
    // 70 pendants on one cover vertex, k = 2, random tables and endpoints:
    // survivors are bounded by the 64 possible (asgn, table) classes.
    Rng rng(95);
    std::vector<std::pair<std::vector<int>, std::vector<std::vector<value_t>>>> edges;
    Assignment fs{static_cast<value_t>(rng.below(2))};
    Assignment ft{static_cast<value_t>(rng.below(2))};
    for (int v = 1; v <= 70; ++v) {
        std::vector<std::vector<value_t>> table;
        value_t sv = static_cast<value_t>(rng.below(2));
        value_t tv = static_cast<value_t>(rng.below(2));
        table.push_back({fs[0], sv});
        table.push_back({ft[0], tv});
        for (value_t a = 0; a < 2; ++a)
            for (value_t b = 0; b < 2; ++b)
                if (rng.chance(0.4)) table.push_back({a, b});
        std::sort(table.begin(), table.end());
        table.erase(std::unique(table.begin(), table.end()), table.end());
        edges.push_back({{0, v}, table});
        fs.push_back(sv);
        ft.push_back(tv);
    }
    CspInstance csp = csp_of(71, 2, edges);
    ReconfigInstance inst = make_reconfig(csp, fs, ft);
    ReconfigInstance kernel = kernelize_vc_weighted(inst, {0}, 1 << 20, nullptr);
    CHECK(kernel.vertex_count() - 1 <= 64);
    CHECK(kernel.vertex_count() < inst.vertex_count());
}

TEST_CASE("treedepth decomposition") {
    // single vertex
    TreeDepthDecomposition t1 = compute_treedepth_decomposition(graph_of(1, {}));
    CHECK(t1.depth() == 1);
    CHECK(t1.exact);

    // P4: exact treedepth 3
    Hypergraph p4 = graph_of(4, {{0, 1}, {1, 2}, {2, 3}});
    TreeDepthDecomposition tp = compute_treedepth_decomposition(p4);
    CHECK(tp.depth() == 3);
    tp.validate_for(p4);

    // K4: treedepth 4
    Hypergraph k4 = graph_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(compute_treedepth_decomposition(k4).depth() == 4);

    // heuristic stays valid and reasonable on a star
    Hypergraph star = graph_of(40, [] {
        std::vector<std::vector<int>> e;
        for (int v = 1; v < 40; ++v) e.push_back({0, v});
        return e;
    }());
    TreeDepthDecomposition th = compute_treedepth_decomposition(star);
    CHECK_FALSE(th.exact);
    CHECK(th.depth() == 2);
    th.validate_for(star);
}

TEST_CASE("td_preprocess") {
    // triangle with one 3-clique decomposition path: all constraints end up
    // on the bottommost vertex's hyperedge
    CspInstance k3 = csp_of(3, 3, {{{0, 1}, coloring_table(3)},
                                   {{0, 2}, coloring_table(3)},
                                   {{1, 2}, coloring_table(3)}});
    TreeDepthDecomposition tree;
    tree.parent = {-1, 0, 1};
    auto sols = enumerate_solutions(k3, 100);
    ReconfigInstance inst = make_reconfig(k3, sols.front(), sols.back());
    ReconfigInstance pre = td_preprocess(inst, tree, 1 << 20);
    CHECK(pre.csp.constraints.size() == 3); // one hyperedge per vertex
    CHECK(pre.csp.edge_index({0, 1, 2}) >= 0);
    CHECK(brute_solutions(pre.csp) == brute_solutions(k3));

    // invalid decomposition rejected
    TreeDepthDecomposition bad;
    bad.parent = {-1, -1, -1};
    CHECK_THROWS_AS(td_preprocess(inst, bad, 1 << 20), error);

    // solution sets preserved on random instances
    Rng rng(96);
    for (int trial = 0; trial < 20; ++trial) {
        ReconfigInstance r = random_instance(rng, 5, 2, 3, 0.5);
        TreeDepthDecomposition t = compute_treedepth_decomposition(primal_graph(r.csp.graph));
        ReconfigInstance p = td_preprocess(r, t, 1 << 20);
        CHECK(brute_solutions(p.csp) == brute_solutions(r.csp));
    }
}

TEST_CASE("id_tuples") {
    // star with three leaves; leaves are single-vertex subtrees
    std::vector<std::vector<value_t>> t1{{0, 0}, {0, 1}, {1, 0}};
    std::vector<std::vector<value_t>> t2{{0, 0}, {1, 1}};
    CspInstance star =
        csp_of(4, 2, {{{0, 1}, t1}, {{0, 2}, t1}, {{0, 3}, t2}});
    TreeDepthDecomposition tree;
    tree.parent = {-1, 0, 0, 0};
    ReconfigInstance inst = make_reconfig(star, {0, 1, 1, 0}, {0, 1, 1, 0});
    ReconfigInstance pre = td_preprocess(inst, tree, 1 << 20);

    IdTuples a = id_tuples(pre, tree, 1);
    IdTuples b = id_tuples(pre, tree, 2);
    IdTuples c = id_tuples(pre, tree, 3);
    CHECK(a.neighborhoods.size() == 1); // leaf: tuples of length one
    CHECK(a == b);                      // matching subtrees
    CHECK_FALSE(a == c);                // different constraint tables

    // differing endpoint pairs flip the A-tuple only
    ReconfigInstance diff = make_reconfig(star, {0, 1, 1, 0}, {0, 1, 0, 0});
    ReconfigInstance pre2 = td_preprocess(diff, tree, 1 << 20);
    IdTuples a2 = id_tuples(pre2, tree, 1);
    IdTuples b2 = id_tuples(pre2, tree, 2);
    CHECK(a2.neighborhoods == b2.neighborhoods);
    CHECK(a2.constraints == b2.constraints);
    CHECK_FALSE(a2.endpoints == b2.endpoints);
}

TEST_CASE("td kernel bound values") {
    KernelBound g1 = td_kernel_bound(1, 2);
    CHECK(g1.finite_u64);
    CHECK(g1.value == 1);
    // g(2) = 1 * (2^1 * 2^2 * 2^(2^1))^1 = 32 for k = 2
    KernelBound g2 = td_kernel_bound(2, 2);
    CHECK(g2.finite_u64);
    CHECK(g2.value == 32);
    // g(3) no longer fits a machine word; the log-domain value remains usable
    KernelBound g3 = td_kernel_bound(3, 2);
    CHECK_FALSE(g3.finite_u64);
    CHECK(g3.at_least(1ULL << 62));
    CHECK(g3.log2_value > 1e10L);
}

TEST_CASE("kernelize_td collapses identical sibling subtrees") {
    // star with 6 leaves in two classes
    std::vector<std::vector<value_t>> t1{{0, 1}, {1, 0}};
    std::vector<std::vector<value_t>> t2{{0, 0}, {0, 1}, {1, 0}};
    std::vector<std::pair<std::vector<int>, std::vector<std::vector<value_t>>>> edges;
    for (int v = 1; v <= 3; ++v) edges.push_back({{0, v}, t1});
    for (int v = 4; v <= 6; ++v) edges.push_back({{0, v}, t2});
    CspInstance star = csp_of(7, 2, edges);
    TreeDepthDecomposition tree;
    tree.parent = {-1, 0, 0, 0, 0, 0, 0};
    ReconfigInstance inst = make_reconfig(star, {0, 1, 1, 1, 0, 0, 0}, {0, 1, 1, 1, 1, 1, 1});
    TdKernelResult res = kernelize_td(inst, tree, 1 << 20);
    CHECK(res.inst.vertex_count() == 3); // root + one leaf per class
    CHECK(res.applications == 4);
    CHECK(is_reconfigurable(res.inst, 4096) == is_reconfigurable(inst, 1 << 20));

    // kernel walks lift back to the original instance
    auto walk = oracle_walk(res.inst, 4096, false);
    REQUIRE(walk.has_value());
    std::vector<Assignment> lifted = res.trace.lift(*walk);
    CHECK(lifted.front() == inst.source);
    CHECK(lifted.back() == inst.target);
    for (const Assignment& f : lifted) CHECK(is_solution(inst.csp, f));
}

TEST_CASE("kernelize_td preserves the oracle answer on deeper trees") {
    // two-level caterpillar: root 0, children 1..2 each with two leaves
    Rng rng(97);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<std::vector<int>, std::vector<std::vector<value_t>>>> edges;
        auto table = [&] {
            std::vector<std::vector<value_t>> t;
            for (value_t a = 0; a < 2; ++a)
                for (value_t b = 0; b < 2; ++b)
                    if (rng.chance(0.7)) t.push_back({a, b});
            if (t.empty()) t.push_back({0, 0});
            return t;
        }();
        edges.push_back({{0, 1}, table});
        edges.push_back({{0, 2}, table});
        auto leaf_table = [&] {
            std::vector<std::vector<value_t>> t;
            for (value_t a = 0; a < 2; ++a)
                for (value_t b = 0; b < 2; ++b)
                    if (rng.chance(0.7)) t.push_back({a, b});
            if (t.empty()) t.push_back({0, 0});
            return t;
        }();
        for (int mid : {1, 2})
            for (int off = 0; off < 2; ++off)
                edges.push_back({{mid, 3 + 2 * (mid - 1) + off}, leaf_table});
        CspInstance csp;
        try {
            csp = csp_of(7, 2, edges);
        } catch (const error&) {
            continue;
        }
        std::vector<Assignment> sols = brute_solutions(csp);
        if (sols.empty()) continue;
        ReconfigInstance inst =
            make_reconfig(csp, sols[rng.below(sols.size())], sols[rng.below(sols.size())]);
        TreeDepthDecomposition tree = compute_treedepth_decomposition(primal_graph(csp.graph));
        TdKernelResult res = kernelize_td(inst, tree, 1 << 20);
        CHECK(is_reconfigurable(res.inst, 1 << 20) == is_reconfigurable(inst, 1 << 20));
    }
}
