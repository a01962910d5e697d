#pragma once

#include <string>

#include <json.hpp>

#include "delchk/analysis.hpp"
#include "delchk/layered.hpp"
#include "delchk/model.hpp"

namespace delchk {

/// Machine-readable verdict report: verdict, method, layer count, witness
/// decisions or failing facet, and the explored node count.
nlohmann::json verdict_json(const Verdict& v, const std::vector<std::string>& agents,
                            const SimplicialModel* protocol);

nlohmann::json cross_check_json(const CrossCheck& c, const std::vector<std::string>& agents,
                                const SimplicialModel* protocol);

nlohmann::json census_json(const Census& census);

nlohmann::json certificate_json(const ConnectivityCertificate& cert);

/// DOT export: agents rendered as node colors (B filled black, W white,
/// further agents gray), one edge per vertex pair within a facet, so
/// higher-dimensional facets export as cliques.
std::string to_dot(const SimplicialModel& m, const std::string& graph_name = "model");

}  // namespace delchk
