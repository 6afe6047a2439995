#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "csr/dispatch.hpp"
#include "csr/generator.hpp"
#include "csr/implication.hpp"
#include "csr/json_io.hpp"
#include "csr/reduce.hpp"
#include "csr/specialcase.hpp"
#include "csr/structural.hpp"
#include "csr/transform.hpp"

namespace {

using namespace csr;

std::uint64_t env_budget() {
    if (const char* s = std::getenv("CSR_BUDGET")) {
        try {
            return std::stoull(s);
        } catch (...) {
            fail(errc::io_error, "CSR_BUDGET must be a positive integer");
        }
    }
    return default_state_budget;
}

std::vector<int> parse_cover(const ReconfigInstance& inst, const std::string& spec) {
    std::vector<int> cover;
    std::stringstream ss(spec);
    std::string id;
    while (std::getline(ss, id, ',')) {
        if (id.empty()) continue;
        const int v = inst.csp.graph.index_of(id);
        require(v >= 0, errc::io_error, "--cover: unknown vertex '" + id + "'");
        cover.push_back(v);
    }
    return cover;
}

json walk_to_json(const ReconfigInstance& inst, const std::vector<Assignment>& walk) {
    json out = json::array();
    for (const Assignment& f : walk) {
        json step;
        for (int v = 0; v < inst.vertex_count(); ++v)
            step[inst.csp.graph.vertex_ids[v]] = inst.csp.domain.labels[f[v]];
        out.push_back(step);
    }
    return out;
}

int cmd_solve(const std::string& input, const std::string& algo_name, bool shortest,
              bool witness, const std::string& cover_spec, const std::string& emit_sol,
              const std::string& emit_imp) {
    ReconfigInstance inst = load_instance_file(input);
    SolveOptions opts;
    opts.budget = env_budget();
    opts.shortest = shortest;
    opts.want_witness = witness;
    if (!cover_spec.empty()) opts.cover_override = parse_cover(inst, cover_spec);

    if (!emit_sol.empty()) {
        SolutionGraph g = build_solution_graph(inst.csp, inst.weights, opts.budget);
        std::ofstream out(emit_sol);
        require(out.good(), errc::io_error, "cannot write " + emit_sol);
        write_solution_graph(out, g);
    }
    if (!emit_imp.empty()) {
        ImplicationGraph ig = build_implication_graph(normalize_binary(inst.csp));
        std::ofstream out(emit_imp);
        require(out.good(), errc::io_error, "cannot write " + emit_imp);
        write_implication_graph(out, ig, inst.csp.graph);
    }

    SolveReport rep = dispatch(inst, algo_from_string(algo_name), opts);
    std::cout << (rep.yes ? "YES" : "NO") << "\n";
    if (shortest) {
        if (rep.opt)
            std::cout << "OPT=" << *rep.opt << "\n";
        else
            std::cout << "OPT=inf\n";
    }
    std::cout << "# algo=" << rep.algorithm << " time=" << rep.seconds << "s";
    if (rep.kernel_before >= 0)
        std::cout << " kernel=" << rep.kernel_before << "->" << rep.kernel_after << " ("
                  << rep.kernel_applications << " identifications)";
    if (!rep.notes.empty()) std::cout << " " << rep.notes;
    std::cout << "\n";
    if (witness && rep.witness)
        std::cout << walk_to_json(inst, *rep.witness).dump(2) << "\n";
    return rep.yes ? 0 : 1;
}

int cmd_kernelize(const std::string& input, const std::string& rule, const std::string& output,
                  const std::string& cover_spec) {
    ReconfigInstance inst = load_instance_file(input);
    const std::uint64_t budget = env_budget();
    ReconfigInstance kernel = inst;
    int applications = 0;

    if (rule == "twins") {
        std::vector<int> all(inst.vertex_count());
        for (int v = 0; v < inst.vertex_count(); ++v) all[v] = v;
        kernel = greedy_identify_twins(inst, all, false, nullptr, &applications);
    } else if (rule == "vc-weighted") {
        std::vector<int> cover = cover_spec.empty() ? minimum_vertex_cover(inst.csp.graph)
                                                    : parse_cover(inst, cover_spec);
        kernel = kernelize_vc_weighted(inst, cover, budget, &applications);
    } else if (rule == "td") {
        TreeDepthDecomposition tree =
            compute_treedepth_decomposition(primal_graph(inst.csp.graph));
        TdKernelResult res = kernelize_td(inst, tree, budget);
        kernel = res.inst;
        applications = res.applications;
    } else {
        fail(errc::io_error, "unknown kernelization rule: " + rule);
    }

    save_instance_file(output, kernel);
    json report;
    report["rule"] = rule;
    report["vertices_before"] = inst.vertex_count();
    report["vertices_after"] = kernel.vertex_count();
    report["applications"] = applications;
    std::ofstream rep(output + ".report.json");
    rep << report.dump(2) << "\n";
    std::cout << "kernel: " << inst.vertex_count() << " -> " << kernel.vertex_count() << " ("
              << applications << " identifications)\n";
    return 0;
}

int cmd_transform(const std::string& reduction, const std::string& input,
                  const std::string& output) {
    ReconfigInstance result = [&] {
        if (reduction == "k3hard") return lcr4_to_2csr3(load_instance_file(input)).inst;
        if (reduction == "pad") return pad_complete(load_instance_file(input));
        if (reduction == "hitting") return hitting_set_gadget(load_instance_file(input));
        if (reduction == "kkclique") return kk_clique_to_2csr(load_kkclique_file(input));
        if (reduction == "lclique") return labeled_clique_to_hr(load_lclique_file(input));
        if (reduction == "rword") return rword_to_lhr_path(load_rword_file(input));
        fail(errc::io_error, "unknown reduction: " + reduction);
    }();
    save_instance_file(output, result);
    std::cout << "wrote " << output << " (n=" << result.vertex_count()
              << ", k=" << result.csp.k() << ")\n";
    return 0;
}

int cmd_analyze(const std::string& input) {
    ReconfigInstance inst = load_instance_file(input);
    const CspInstance& csp = inst.csp;
    std::cout << "n=" << csp.vertex_count() << "\n";
    std::cout << "k=" << csp.k() << "\n";
    std::cout << "max-arity=" << csp.max_arity() << "\n";

    Hypergraph primal = primal_graph(csp.graph);
    const int vc_cap = 26;
    bool vc_exact = false;
    int vc = -1;
    for (int b = 0; b <= std::min(csp.vertex_count(), vc_cap); ++b)
        if (find_vertex_cover(primal, b)) {
            vc = b;
            vc_exact = true;
            break;
        }
    if (!vc_exact) {
        // Greedy upper bound: cover each uncovered edge by its endpoints.
        std::vector<bool> in_cover(csp.vertex_count(), false);
        int count = 0;
        for (const auto& e : primal.hyperedges)
            if (!in_cover[e[0]] && !in_cover[e[1]]) {
                in_cover[e[0]] = in_cover[e[1]] = true;
                count += 2;
            }
        vc = count;
    }
    std::cout << "vc=" << vc << (vc_exact ? " (exact)" : " (heuristic)") << "\n";

    TreeDepthDecomposition tree = compute_treedepth_decomposition(primal);
    std::cout << "tree-depth=" << tree.depth() << (tree.exact ? " (exact)" : " (heuristic)")
              << "\n";
    std::cout << "nb=" << non_boolean_count(csp) << "\n";

    bool two_uniform = true;
    for (const auto& e : csp.graph.hyperedges) two_uniform = two_uniform && e.size() == 2;
    if (two_uniform) {
        auto form = detect_lhr(csp);
        if (form)
            std::cout << "lhr: yes, |V(H)|=" << csp.k() << "\n";
        else
            std::cout << "lhr: no\n";
    } else {
        std::cout << "lhr: no (not 2-uniform)\n";
    }
    return 0;
}

int cmd_gen(const std::string& family, int n, int k, int arity, double density, bool weighted,
            std::uint64_t seed, const std::string& output) {
    GenParams params;
    params.family = family_from_string(family);
    params.n = n;
    params.k = k;
    params.arity = arity;
    params.density = density;
    params.weighted = weighted;
    params.seed = seed;
    params.budget = std::min<std::uint64_t>(env_budget(), 1 << 20);
    ReconfigInstance inst = generate(params);
    save_instance_file(output, inst);
    std::cout << "wrote " << output << " (n=" << inst.vertex_count() << ", k=" << inst.csp.k()
              << ")\n";
    return 0;
}

int cmd_crosscheck(int count, std::uint64_t seed, const std::string& families_spec) {
    const std::uint64_t budget = env_budget();
    std::vector<Family> families;
    {
        std::stringstream ss(families_spec);
        std::string name;
        while (std::getline(ss, name, ','))
            if (!name.empty()) families.push_back(family_from_string(name));
    }
    int failures = 0, rows = 0;
    std::cout << "seed family n k algo oracle answer ok\n";
    for (int i = 0; i < count; ++i) {
        for (Family family : families) {
            GenParams params;
            params.family = family;
            params.seed = seed + i;
            params.n = 4 + static_cast<int>((seed + i) % 4);
            params.k = family == Family::boolean2 ? 2 : 3;
            params.density = 0.4 + 0.1 * (i % 4);
            ReconfigInstance inst;
            try {
                inst = generate(params);
            } catch (const error&) {
                continue;
            }
            SolveOptions opts;
            opts.budget = budget;
            opts.want_witness = false;
            const bool oracle = is_reconfigurable(inst, budget);

            std::vector<std::pair<std::string, Algo>> algos{{"auto", Algo::automatic}};
            if (inst.csp.k() == 2 && inst.csp.max_arity() <= 2)
                algos.push_back({"boolean", Algo::boolean2sat});
            bool two_uniform = true;
            for (const auto& e : inst.csp.graph.hyperedges)
                two_uniform = two_uniform && e.size() == 2;
            if (two_uniform && inst.csp.k() <= 3 && detect_lhr(inst.csp))
                algos.push_back({"lhr3", Algo::lhr3});
            if (inst.csp.max_arity() <= 2) algos.push_back({"nb", Algo::nb});
            if (two_uniform) algos.push_back({"vc-csg", Algo::vc_csg});

            for (const auto& [name, algo] : algos) {
                SolveReport rep = dispatch(inst, algo, opts);
                const bool ok = rep.yes == oracle;
                ++rows;
                if (!ok) ++failures;
                std::cout << params.seed << " " << family_to_string(family) << " "
                          << inst.vertex_count() << " " << inst.csp.k() << " " << name << " "
                          << (oracle ? "YES" : "NO") << " " << (rep.yes ? "YES" : "NO") << " "
                          << (ok ? "pass" : "FAIL") << "\n";
            }
        }
    }
    std::cout << "# " << rows << " checks, " << failures << " failures\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"csr: constraint-satisfiability reconfiguration toolkit"};
    app.require_subcommand(1);

    std::string input, output, algo = "auto", rule, reduction, cover, emit_sol, emit_imp;
    std::string family = "random", families = "random,coloring,lhr,boolean2";
    bool shortest = false, witness = false, weighted = false;
    int n = 6, k = 3, arity = 2, count = 20;
    double density = 0.5;
    std::uint64_t seed = 1;

    auto* solve = app.add_subcommand("solve", "decide reconfigurability");
    solve->add_option("--input", input)->required();
    solve->add_option("--algo", algo, "auto|oracle|boolean|lhr3|nb|vc-csg");
    solve->add_flag("--shortest", shortest, "report the minimum weighted length");
    solve->add_flag("--witness", witness, "print a validated witness walk");
    solve->add_option("--cover", cover, "comma-separated vertex ids (vc-csg)");
    solve->add_option("--emit-solution-graph", emit_sol);
    solve->add_option("--emit-implication-graph", emit_imp);

    auto* kernelize = app.add_subcommand("kernelize", "shrink an instance");
    kernelize->add_option("--rule", rule, "twins|td|vc-weighted")->required();
    kernelize->add_option("--input", input)->required();
    kernelize->add_option("--output", output)->required();
    kernelize->add_option("--cover", cover);

    auto* transform = app.add_subcommand("transform", "run an instance compiler");
    transform->add_option("--reduction", reduction, "k3hard|pad|hitting|kkclique|lclique|rword")
        ->required();
    transform->add_option("--input", input)->required();
    transform->add_option("--output", output)->required();

    auto* analyze = app.add_subcommand("analyze", "print instance parameters");
    analyze->add_option("--input", input)->required();

    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--family", family, "random|coloring|lhr|boolean2|kkclique");
    gen->add_option("--n", n);
    gen->add_option("--k", k);
    gen->add_option("--arity", arity);
    gen->add_option("--density", density);
    gen->add_option("--seed", seed);
    gen->add_flag("--weighted", weighted);
    gen->add_option("--output", output)->required();

    auto* crosscheck = app.add_subcommand("crosscheck", "batch oracle-vs-algorithm comparison");
    crosscheck->add_option("--count", count);
    crosscheck->add_option("--seed", seed);
    crosscheck->add_option("--families", families);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(input, algo, shortest, witness, cover, emit_sol, emit_imp);
        if (kernelize->parsed()) return cmd_kernelize(input, rule, output, cover);
        if (transform->parsed()) return cmd_transform(reduction, input, output);
        if (analyze->parsed()) return cmd_analyze(input);
        if (gen->parsed()) return cmd_gen(family, n, k, arity, density, weighted, seed, output);
        if (crosscheck->parsed()) return cmd_crosscheck(count, seed, families);
    } catch (const csr::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
