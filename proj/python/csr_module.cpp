#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csr/dispatch.hpp"
#include "csr/generator.hpp"
#include "csr/implication.hpp"
#include "csr/json_io.hpp"
#include "csr/oracle.hpp"
#include "csr/reduce.hpp"
#include "csr/specialcase.hpp"
#include "csr/structural.hpp"
#include "csr/transform.hpp"

namespace py = pybind11;
using namespace csr;

namespace {

ReconfigInstance parse_instance(const std::string& text) {
    return instance_from_json(json::parse(text));
}

py::object walk_to_py(const ReconfigInstance& inst, const std::vector<Assignment>& walk) {
    py::list steps;
    for (const Assignment& f : walk) {
        py::dict step;
        for (int v = 0; v < inst.vertex_count(); ++v)
            step[py::str(inst.csp.graph.vertex_ids[v])] =
                inst.csp.domain.labels[f[v]];
        steps.append(step);
    }
    return steps;
}

py::dict report_to_py(const ReconfigInstance& inst, const SolveReport& rep) {
    py::dict d;
    d["yes"] = rep.yes;
    d["algorithm"] = rep.algorithm;
    d["opt"] = rep.opt ? py::object(py::int_(*rep.opt)) : py::none();
    d["witness"] = rep.witness ? walk_to_py(inst, *rep.witness) : py::none();
    d["kernel_before"] = rep.kernel_before;
    d["kernel_after"] = rep.kernel_after;
    d["kernel_applications"] = rep.kernel_applications;
    d["notes"] = rep.notes;
    d["seconds"] = rep.seconds;
    return d;
}

} // namespace

PYBIND11_MODULE(_csrkit, m) {
    m.doc() = "Constraint-satisfiability reconfiguration toolkit (C++ core)";
    py::register_exception<error>(m, "CsrError");

    m.def(
        "solve",
        [](const std::string& instance, const std::string& algo, bool shortest, bool witness,
           std::uint64_t budget) {
            ReconfigInstance inst = parse_instance(instance);
            SolveOptions opts;
            opts.shortest = shortest;
            opts.want_witness = witness;
            opts.budget = budget;
            SolveReport rep = dispatch(inst, algo_from_string(algo), opts);
            return report_to_py(inst, rep);
        },
        py::arg("instance"), py::arg("algo") = "auto", py::arg("shortest") = false,
        py::arg("witness") = false, py::arg("budget") = default_state_budget,
        "Decide reconfigurability of a JSON instance; returns a report dict.");

    m.def(
        "kernelize",
        [](const std::string& instance, const std::string& rule, std::uint64_t budget) {
            ReconfigInstance inst = parse_instance(instance);
            ReconfigInstance kernel = inst;
            int applications = 0;
            if (rule == "twins") {
                std::vector<int> all(inst.vertex_count());
                for (int v = 0; v < inst.vertex_count(); ++v) all[v] = v;
                kernel = greedy_identify_twins(inst, all, false, nullptr, &applications);
            } else if (rule == "vc-weighted") {
                kernel = kernelize_vc_weighted(inst, minimum_vertex_cover(inst.csp.graph),
                                               budget, &applications);
            } else if (rule == "td") {
                TreeDepthDecomposition tree =
                    compute_treedepth_decomposition(primal_graph(inst.csp.graph));
                TdKernelResult res = kernelize_td(inst, tree, budget);
                kernel = res.inst;
                applications = res.applications;
            } else {
                fail(errc::io_error, "unknown kernelization rule: " + rule);
            }
            py::dict d;
            d["instance"] = instance_to_json(kernel).dump();
            d["vertices_before"] = inst.vertex_count();
            d["vertices_after"] = kernel.vertex_count();
            d["applications"] = applications;
            return d;
        },
        py::arg("instance"), py::arg("rule"), py::arg("budget") = default_state_budget,
        "Apply a kernelization rule (twins | vc-weighted | td).");

    m.def(
        "analyze",
        [](const std::string& instance) {
            ReconfigInstance inst = parse_instance(instance);
            const CspInstance& csp = inst.csp;
            py::dict d;
            d["n"] = csp.vertex_count();
            d["k"] = csp.k();
            d["max_arity"] = csp.max_arity();
            d["nb"] = non_boolean_count(csp);
            Hypergraph primal = primal_graph(csp.graph);
            d["vc"] = py::int_(minimum_vertex_cover(primal).size());
            TreeDepthDecomposition tree = compute_treedepth_decomposition(primal);
            d["tree_depth"] = tree.depth();
            d["tree_depth_exact"] = tree.exact;
            bool two_uniform = true;
            for (const auto& e : csp.graph.hyperedges) two_uniform &= e.size() == 2;
            d["lhr"] = two_uniform && detect_lhr(csp).has_value();
            return d;
        },
        py::arg("instance"), "Instance parameters (n, k, arity, vc, tree-depth, nb, lhr).");

    m.def(
        "generate",
        [](const std::string& family, int n, int k, int arity, double density, bool weighted,
           std::uint64_t seed) {
            GenParams p;
            p.family = family_from_string(family);
            p.n = n;
            p.k = k;
            p.arity = arity;
            p.density = density;
            p.weighted = weighted;
            p.seed = seed;
            return instance_to_json(generate(p)).dump();
        },
        py::arg("family") = "random", py::arg("n") = 6, py::arg("k") = 3, py::arg("arity") = 2,
        py::arg("density") = 0.5, py::arg("weighted") = false, py::arg("seed") = 1,
        "Generate a seeded random instance; returns instance JSON.");

    m.def(
        "transform",
        [](const std::string& reduction, const std::string& input) {
            ReconfigInstance result = [&] {
                if (reduction == "k3hard") return lcr4_to_2csr3(parse_instance(input)).inst;
                if (reduction == "pad") return pad_complete(parse_instance(input));
                if (reduction == "hitting") return hitting_set_gadget(parse_instance(input));
                if (reduction == "kkclique")
                    return kk_clique_to_2csr(kkclique_from_json(json::parse(input)));
                if (reduction == "lclique")
                    return labeled_clique_to_hr(lclique_from_json(json::parse(input)));
                if (reduction == "rword")
                    return rword_to_lhr_path(rword_from_json(json::parse(input)));
                fail(errc::io_error, "unknown reduction: " + reduction);
            }();
            return instance_to_json(result).dump();
        },
        py::arg("reduction"), py::arg("input"),
        "Run an instance compiler (k3hard | pad | hitting | kkclique | lclique | rword).");

    m.def(
        "enumerate_solutions",
        [](const std::string& instance, std::uint64_t budget) {
            ReconfigInstance inst = parse_instance(instance);
            return walk_to_py(inst, enumerate_solutions(inst.csp, budget));
        },
        py::arg("instance"), py::arg("budget") = default_state_budget,
        "All solutions in lexicographic order (budget-guarded).");
}
