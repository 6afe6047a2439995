#include "csr/dispatch.hpp"

#include <chrono>
#include <set>

#include "csr/implication.hpp"
#include "csr/reduce.hpp"
#include "csr/specialcase.hpp"
#include "csr/structural.hpp"

namespace csr {

Algo algo_from_string(const std::string& name) {
    if (name == "auto") return Algo::automatic;
    if (name == "oracle") return Algo::oracle;
    if (name == "boolean") return Algo::boolean2sat;
    if (name == "lhr3") return Algo::lhr3;
    if (name == "nb") return Algo::nb;
    if (name == "vc-csg") return Algo::vc_csg;
    fail(errc::wrong_algorithm, "unknown algorithm selector: " + name);
}

namespace {

void validate_witness(const ReconfigInstance& inst, const std::vector<Assignment>& walk) {
    require(!walk.empty() && walk.front() == inst.source && walk.back() == inst.target,
            errc::invalid_sequence, "witness walk endpoints are wrong");
    for (const Assignment& f : walk)
        require(is_solution(inst.csp, f), errc::invalid_sequence,
                "witness walk contains a non-solution");
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        require(difference(walk[i], walk[i + 1]).size() == 1, errc::invalid_sequence,
                "witness walk step changes more than one vertex");
}

bool is_two_uniform(const CspInstance& csp) {
    for (const auto& e : csp.graph.hyperedges)
        if (e.size() != 2) return false;
    return true;
}

SolveReport run_oracle(const ReconfigInstance& inst, const SolveOptions& opts) {
    SolveReport rep;
    rep.algorithm = "oracle";
    if (opts.shortest) {
        rep.opt = shortest_reconfiguration(inst, opts.budget);
        rep.yes = rep.opt.has_value();
    } else {
        rep.yes = is_reconfigurable(inst, opts.budget);
    }
    if (rep.yes && opts.want_witness)
        rep.witness = oracle_walk(inst, opts.budget, opts.shortest);
    return rep;
}

SolveReport run_boolean(const ReconfigInstance& inst) {
    require(inst.csp.k() == 2, errc::wrong_algorithm,
            "algorithm 'boolean' requires k = 2 (violated: domain size)");
    require(inst.csp.max_arity() <= 2, errc::wrong_algorithm,
            "algorithm 'boolean' requires arity <= 2 (violated: max arity)");
    SolveReport rep;
    rep.algorithm = "boolean";
    rep.yes = decide_boolean(inst);
    return rep;
}

SolveReport run_lhr3(const ReconfigInstance& inst, const SolveOptions& opts) {
    require(is_two_uniform(inst.csp), errc::wrong_algorithm,
            "algorithm 'lhr3' requires a 2-uniform instance (violated: arity)");
    auto form = detect_lhr(inst.csp);
    require(form.has_value(), errc::wrong_algorithm,
            "algorithm 'lhr3' requires list-homomorphism form (violated: LHR detection)");
    require(inst.csp.k() <= 3, errc::wrong_algorithm,
            "algorithm 'lhr3' requires |V(H)| <= 3 (violated: domain size)");
    SolveReport rep;
    rep.algorithm = "lhr3";
    LhrDecision dec = solve_lhr_k3(inst, *form, opts.budget);
    rep.yes = dec.yes;
    rep.notes = "branch=" + dec.branch;
    return rep;
}

SolveReport run_nb(const ReconfigInstance& inst, const SolveOptions& opts) {
    require(inst.csp.max_arity() <= 2, errc::wrong_algorithm,
            "algorithm 'nb' requires arity <= 2 (violated: max arity)");
    SolveReport rep;
    rep.algorithm = "nb";
    rep.yes = nb_partition_solve(inst, opts.budget);
    rep.notes = "nb=" + std::to_string(non_boolean_count(inst.csp));
    return rep;
}

SolveReport run_vc_csg(const ReconfigInstance& inst, const SolveOptions& opts) {
    std::vector<int> cover = opts.cover_override;
    if (cover.empty()) cover = minimum_vertex_cover(inst.csp.graph);
    SolveReport rep;
    rep.algorithm = "vc-csg";
    rep.yes = solve_vc_csg(inst, cover, opts.budget);
    rep.notes = "vc=" + std::to_string(cover.size());
    return rep;
}

struct ComponentAnswer {
    bool yes = false;
    std::optional<std::vector<Assignment>> walk; // component coordinates
    int kernel_after = 0;
    int applications = 0;
};

ComponentAnswer td_oracle_component(const ReconfigInstance& inst, const SolveOptions& opts) {
    ComponentAnswer ans;
    TreeDepthDecomposition tree = compute_treedepth_decomposition(primal_graph(inst.csp.graph));
    TdKernelResult kern = kernelize_td(inst, tree, opts.budget);
    ans.kernel_after = kern.inst.vertex_count();
    ans.applications = kern.applications;
    ans.yes = is_reconfigurable(kern.inst, opts.budget);
    if (ans.yes && opts.want_witness) {
        auto walk = oracle_walk(kern.inst, opts.budget, false);
        ans.walk = kern.trace.lift(std::move(*walk));
    }
    return ans;
}

/// Kernel-then-oracle fallback, decided per primal component: steps in
/// different components interleave freely, so the instance is a yes iff
/// every component is, and component walks concatenate.
SolveReport run_td_oracle(const ReconfigInstance& inst, const SolveOptions& opts) {
    SolveReport rep;
    rep.algorithm = "td-kernel+oracle";
    rep.kernel_before = inst.vertex_count();
    rep.kernel_after = 0;
    rep.yes = true;

    std::vector<Assignment> walk{inst.source};
    Assignment current = inst.source;
    for (const std::vector<int>& comp : inst.csp.graph.components()) {
        std::vector<int> removed;
        std::set<int> keep(comp.begin(), comp.end());
        for (int v = 0; v < inst.vertex_count(); ++v)
            if (!keep.count(v)) removed.push_back(v);
        InstanceRestriction sub = restrict_instance(inst.csp, removed, nullptr);
        Assignment fs, ft;
        std::vector<weight_t> w;
        for (int v : sub.new_to_old) {
            fs.push_back(inst.source[v]);
            ft.push_back(inst.target[v]);
            w.push_back(inst.weights[v]);
        }
        ReconfigInstance part =
            make_reconfig(std::move(sub.csp), std::move(fs), std::move(ft), std::move(w));
        ComponentAnswer ans = td_oracle_component(part, opts);
        rep.kernel_after += ans.kernel_after;
        rep.kernel_applications += ans.applications;
        if (!ans.yes) {
            rep.yes = false;
            break;
        }
        if (ans.walk && opts.want_witness) {
            for (std::size_t t = 1; t < ans.walk->size(); ++t) {
                for (std::size_t sv = 0; sv < sub.new_to_old.size(); ++sv)
                    current[sub.new_to_old[sv]] = (*ans.walk)[t][sv];
                walk.push_back(current);
            }
        }
    }
    if (rep.yes && opts.want_witness) rep.witness = std::move(walk);
    rep.notes = "per-component kernels";
    return rep;
}

SolveReport run_auto(const ReconfigInstance& inst, const SolveOptions& opts) {
    const int k = inst.csp.k();
    const bool binary = inst.csp.max_arity() <= 2;

    if (opts.shortest) {
        // OPT is preserved by the weighted vertex-cover kernel, so shrink
        // first when a small cover exists, then run the weighted oracle.
        SolveReport rep;
        rep.algorithm = "oracle";
        const int cap = std::min(inst.vertex_count(), 26);
        std::optional<std::vector<int>> cover;
        for (int b = 0; b <= cap && !cover; ++b) cover = find_vertex_cover(inst.csp.graph, b);
        ReconfigInstance target = inst;
        ReductionTrace trace;
        if (cover &&
            pow_saturating(k, cover->size() + 1) <= opts.budget &&
            pow_saturating(k, inst.vertex_count()) > opts.budget) {
            CspInstance merged = merge_into_cover(inst.csp, *cover, opts.budget);
            ReconfigInstance pre =
                make_reconfig(std::move(merged), inst.source, inst.target, inst.weights);
            std::vector<int> independent;
            for (int v = 0; v < inst.vertex_count(); ++v)
                if (!std::binary_search(cover->begin(), cover->end(), v))
                    independent.push_back(v);
            int apps = 0;
            target = greedy_identify_twins(pre, independent, true, &trace, &apps);
            rep.algorithm = "vc-weighted-kernel+oracle";
            rep.kernel_before = inst.vertex_count();
            rep.kernel_after = target.vertex_count();
            rep.kernel_applications = apps;
        }
        rep.opt = shortest_reconfiguration(target, opts.budget);
        rep.yes = rep.opt.has_value();
        if (rep.yes && opts.want_witness) {
            auto walk = oracle_walk(target, opts.budget, true);
            rep.witness = trace.lift(std::move(*walk));
        }
        return rep;
    }

    if (k == 2 && binary) return run_boolean(inst);
    if (is_two_uniform(inst.csp) && k <= 3 && detect_lhr(inst.csp).has_value())
        return run_lhr3(inst, opts);
    if (binary && pow_saturating(k, non_boolean_count(inst.csp)) <= opts.budget)
        return run_nb(inst, opts);
    {
        const int cap = std::min(inst.vertex_count(), 26);
        std::optional<std::vector<int>> cover;
        for (int b = 0; b <= cap && !cover; ++b) cover = find_vertex_cover(inst.csp.graph, b);
        if (cover && pow_saturating(k, cover->size() + 1) <= opts.budget)
            return run_vc_csg(inst, opts);
    }
    return run_td_oracle(inst, opts);
}

} // namespace

SolveReport dispatch(const ReconfigInstance& inst, Algo algo, const SolveOptions& opts) {
    require(is_solution(inst.csp, inst.source), errc::malformed_instance,
            "source is not a solution");
    require(is_solution(inst.csp, inst.target), errc::malformed_instance,
            "target is not a solution");
    require(!opts.shortest || algo == Algo::oracle || algo == Algo::automatic,
            errc::wrong_algorithm, "--shortest is available for 'oracle' and 'auto' only");

    const auto start = std::chrono::steady_clock::now();
    SolveReport rep;
    switch (algo) {
        case Algo::oracle: rep = run_oracle(inst, opts); break;
        case Algo::boolean2sat: rep = run_boolean(inst); break;
        case Algo::lhr3: rep = run_lhr3(inst, opts); break;
        case Algo::nb: rep = run_nb(inst, opts); break;
        case Algo::vc_csg: rep = run_vc_csg(inst, opts); break;
        case Algo::automatic: rep = run_auto(inst, opts); break;
    }
    if (rep.witness) validate_witness(inst, *rep.witness);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace csr
