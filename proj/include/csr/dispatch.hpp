#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csr/model.hpp"
#include "csr/oracle.hpp"

namespace csr {

enum class Algo { automatic, oracle, boolean2sat, lhr3, nb, vc_csg };

Algo algo_from_string(const std::string& name);

struct SolveOptions {
    bool shortest = false;
    bool want_witness = true;
    std::uint64_t budget = default_state_budget;
    std::vector<int> cover_override; // vc-csg only
};

struct SolveReport {
    bool yes = false;
    std::string algorithm;
    std::optional<weight_t> opt;
    std::optional<std::vector<Assignment>> witness; // original coordinates
    int kernel_before = -1;
    int kernel_after = -1;
    int kernel_applications = 0;
    std::string notes;
    double seconds = 0;
};

/// Algorithm selection and execution. `automatic` picks, in order: the
/// Boolean decider (k = 2, arity <= 2), the k <= 3 LHR algorithm, the k+nb
/// CSG, the k+vc CSG, and finally the tree-depth kernel followed by the
/// oracle. Explicit selectors validate their own preconditions. Witness
/// walks, when produced, are re-validated before the report is returned.
SolveReport dispatch(const ReconfigInstance& inst, Algo algo, const SolveOptions& opts = {});

} // namespace csr
