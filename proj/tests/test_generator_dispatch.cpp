#include <doctest.h>

#include "csr/dispatch.hpp"
#include "csr/generator.hpp"
#include "csr/json_io.hpp"
#include "csr/oracle.hpp"
#include "csr/specialcase.hpp"
#include "test_helpers.hpp"

using namespace csr;
using namespace csr::test;

TEST_CASE("generator determinism and family shapes") {
    GenParams p;
    p.family = Family::coloring;
    p.n = 4;
    p.k = 3;
    p.seed = 42;
    ReconfigInstance a = generate(p);
    ReconfigInstance b = generate(p);
    CHECK(instance_to_json(a).dump() == instance_to_json(b).dump()); // byte-identical

    // coloring family: every table is the proper-coloring table
    for (const Constraint& c : a.csp.constraints)
        for (const auto& t : c.allowed) CHECK(t[0] != t[1]);

    // boolean2: k = 2, arity <= 2
    p.family = Family::boolean2;
    ReconfigInstance b2 = generate(p);
    CHECK(b2.csp.k() == 2);
    CHECK(b2.csp.max_arity() <= 2);

    // lhr family detects
    p.family = Family::lhr;
    ReconfigInstance lhr = generate(p);
    CHECK(detect_lhr(lhr.csp).has_value());

    // source/target are the lexicographic extremes of the solution set
    p.family = Family::random;
    ReconfigInstance r = generate(p);
    std::vector<Assignment> sols = brute_solutions(r.csp);
    CHECK(r.source == sols.front());
    CHECK(r.target == sols.back());
}

TEST_CASE("dispatch selector validation") {
    CspInstance k3 = csp_of(2, 3, {{{0, 1}, {{0, 1}, {1, 0}}}});
    ReconfigInstance inst = make_reconfig(k3, {0, 1}, {1, 0});
    CHECK_THROWS_AS(dispatch(inst, Algo::boolean2sat), error); // k != 2
    try {
        dispatch(inst, Algo::boolean2sat);
    } catch (const error& e) {
        CHECK(e.kind() == errc::wrong_algorithm);
        CHECK(std::string(e.what()).find("k = 2") != std::string::npos);
    }
    CspInstance tern = csp_of(3, 2, {{{0, 1, 2}, {{0, 0, 0}, {1, 1, 1}}}});
    ReconfigInstance ti = make_reconfig(tern, {0, 0, 0}, {0, 0, 0});
    CHECK_THROWS_AS(dispatch(ti, Algo::lhr3), error);
    CHECK_THROWS_AS(dispatch(ti, Algo::nb), error);
    CHECK_THROWS_AS(dispatch(ti, Algo::boolean2sat), error);
    // shortest is an oracle/auto feature
    SolveOptions s;
    s.shortest = true;
    CHECK_THROWS_AS(dispatch(inst, Algo::lhr3, s), error);
}

TEST_CASE("auto picks the boolean decider on xor edges") {
    CspInstance x = csp_of(2, 2, {{{0, 1}, {{0, 1}, {1, 0}}}});
    ReconfigInstance inst = make_reconfig(x, {0, 1}, {1, 0});
    SolveReport rep = dispatch(inst, Algo::automatic);
    CHECK(rep.algorithm == "boolean");
    CHECK_FALSE(rep.yes);
}

TEST_CASE("auto solves a 3-coloring star") {
    std::vector<std::vector<value_t>> col;
    for (value_t a = 0; a < 3; ++a)
        for (value_t b = 0; b < 3; ++b)
            if (a != b) col.push_back({a, b});
    CspInstance star = csp_of(4, 3, {{{0, 1}, col}, {{0, 2}, col}, {{0, 3}, col}});
    auto sols = enumerate_solutions(star, 200);
    SolveReport rep = dispatch(make_reconfig(star, sols.front(), sols.back()), Algo::automatic);
    CHECK(rep.yes);
    CHECK((rep.algorithm == "lhr3" || rep.algorithm == "vc-csg"));
}

TEST_CASE("every selector agrees with the oracle on generated instances") {
    Rng rng(120);
    int done = 0;
    while (done < 40) {
        GenParams p;
        p.family = done % 3 == 0 ? Family::boolean2 : (done % 3 == 1 ? Family::lhr : Family::coloring);
        p.n = 4 + static_cast<int>(rng.below(2));
        p.k = p.family == Family::boolean2 ? 2 : 3;
        p.seed = rng.next();
        ReconfigInstance inst;
        try {
            inst = generate(p);
        } catch (const error&) {
            continue;
        }
        ++done;
        const bool oracle = is_reconfigurable(inst, 1 << 20);
        CHECK(dispatch(inst, Algo::automatic).yes == oracle);
        if (inst.csp.k() == 2 && inst.csp.max_arity() <= 2)
            CHECK(dispatch(inst, Algo::boolean2sat).yes == oracle);
        if (inst.csp.max_arity() <= 2)
            CHECK(dispatch(inst, Algo::nb).yes == oracle);
        bool two_uniform = true;
        for (const auto& e : inst.csp.graph.hyperedges)
            two_uniform = two_uniform && e.size() == 2;
        if (two_uniform) CHECK(dispatch(inst, Algo::vc_csg).yes == oracle);
    }
}

TEST_CASE("auto --shortest reports OPT and a matching witness") {
    Rng rng(121);
    for (int trial = 0; trial < 15; ++trial) {
        ReconfigInstance inst = random_instance(rng, 4, 2, 2, 0.5, true);
        SolveOptions opts;
        opts.shortest = true;
        SolveReport rep = dispatch(inst, Algo::automatic, opts);
        auto expect = shortest_reconfiguration(inst, 1 << 20);
        CHECK(rep.opt == expect);
        if (rep.witness) {
            weight_t total = 0;
            for (std::size_t i = 0; i + 1 < rep.witness->size(); ++i)
                total += inst.weights[difference((*rep.witness)[i], (*rep.witness)[i + 1])[0]];
            CHECK(total == *rep.opt);
        }
    }
}

TEST_CASE("td-kernel fallback solves wide 3-ary instances per component") {
    // twelve disjoint 3-ary triangles: k = 2, arity 3, primal vc = 24 and
    // 2^36 states, so `auto` must fall through to the per-component
    // kernel-plus-oracle route.
    std::vector<std::pair<std::vector<int>, std::vector<std::vector<value_t>>>> edges;
    std::vector<std::vector<value_t>> t{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    Assignment fs, ft;
    for (int c = 0; c < 12; ++c) {
        const int b = 3 * c;
        edges.push_back({{b, b + 1, b + 2}, t});
        fs.insert(fs.end(), {0, 0, 0});
        ft.insert(ft.end(), {1, 1, 1});
    }
    CspInstance csp = csp_of(36, 2, edges);
    ReconfigInstance inst = make_reconfig(csp, fs, ft);
    SolveOptions opts;
    opts.budget = 1 << 16;
    SolveReport rep = dispatch(inst, Algo::automatic, opts);
    CHECK(rep.algorithm == "td-kernel+oracle");
    CHECK(rep.yes); // each triangle walks 000 -> 001 -> 011 -> 111
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->front() == inst.source);
    CHECK(rep.witness->back() == inst.target);
    CHECK(rep.witness->size() == 1 + 12 * 3);

    // an unsatisfiable component makes the whole instance a no
    std::vector<std::vector<value_t>> frozen{{0, 0, 0}, {1, 1, 1}};
    edges[5] = {edges[5].first, frozen};
    CspInstance no_csp = csp_of(36, 2, edges);
    ReconfigInstance no_inst = make_reconfig(no_csp, fs, ft);
    SolveReport no_rep = dispatch(no_inst, Algo::automatic, opts);
    CHECK(no_rep.algorithm == "td-kernel+oracle");
    CHECK_FALSE(no_rep.yes);
}
