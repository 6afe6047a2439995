#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "csr/implication.hpp"
#include "csr/model.hpp"
#include "csr/oracle.hpp"
#include "csr/transform.hpp"

namespace csr {

using json = nlohmann::ordered_json;

/// Instance format: {"domain": [labels], "vertices": [ids],
/// "hyperedges": [{"scope": [ids], "allowed": [[labels]]}],
/// "source": {id: label}, "target": {id: label}, "weights": {id: int}?}.
/// Unknown fields are rejected; source/target must be solutions.
ReconfigInstance instance_from_json(const json& j);
json instance_to_json(const ReconfigInstance& inst);
ReconfigInstance load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const ReconfigInstance& inst);

/// {"kappa": int, "edges": [[i, p, j, q]]} with 1-based grid coordinates.
KkCliqueGraph kkclique_from_json(const json& j);
KkCliqueGraph load_kkclique_file(const std::string& path);

/// {"vertices": [ids], "edges": [[id, id]], "tau": int,
///  "source": [ids], "target": [ids]}.
LabeledCliqueInstance lclique_from_json(const json& j);
LabeledCliqueInstance load_lclique_file(const std::string& path);

/// {"vertices": [ids], "arcs": [[id, id]], "rho": int,
///  "source": [ids], "target": [ids]}.
RWordSystem rword_from_json(const json& j);
RWordSystem load_rword_file(const std::string& path);

/// Header "p sol <numSolutions> <numEdges>", then one "u v w" line per edge.
void write_solution_graph(std::ostream& os, const SolutionGraph& g);

/// One "v:i -> w:j" line per arc, vertex names from the instance.
void write_implication_graph(std::ostream& os, const ImplicationGraph& ig,
                             const Hypergraph& graph);

json load_json_file(const std::string& path);

} // namespace csr
