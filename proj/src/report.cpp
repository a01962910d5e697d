#include "delchk/report.hpp"

#include <sstream>

namespace delchk {

using nlohmann::json;

json verdict_json(const Verdict& v, const std::vector<std::string>& agents,
                  const SimplicialModel* protocol) {
  json out;
  out["verdict"] = v.solvable ? "solvable" : "unsolvable";
  out["method"] = v.method == SolveMethod::MapSearch ? "map-search" : "formula-extension";
  out["layers"] = v.layers;
  out["nodes"] = v.nodes;
  if (v.solvable) {
    json witness = json::array();
    for (size_t vertex = 0; vertex < v.decisions.size(); ++vertex) {
      json entry;
      entry["vertex"] = vertex;
      if (protocol)
        entry["agent"] = agents.at(
            static_cast<size_t>(protocol->vertices[vertex].color));
      entry["decision"] = v.decisions[vertex];
      witness.push_back(std::move(entry));
    }
    out["witness"] = std::move(witness);
  } else {
    if (v.failing_facet) out["failing_facet"] = *v.failing_facet;
    out["note"] = v.note;
  }
  return out;
}

json cross_check_json(const CrossCheck& c, const std::vector<std::string>& agents,
                      const SimplicialModel* protocol) {
  json out;
  out["agree"] = c.agree;
  out["verdict"] = c.agree ? (c.map_verdict.solvable ? "solvable" : "unsolvable") : "disagreement";
  out["map"] = verdict_json(c.map_verdict, agents, protocol);
  out["formula"] = verdict_json(c.formula_verdict, agents, protocol);
  return out;
}

json census_json(const Census& census) {
  json out;
  out["ok"] = census.ok;
  out["layers"] = census.layers;
  out["expected_block_size"] = census.expected_block_size;
  json blocks = json::array();
  for (const CensusBlock& b : census.blocks) {
    json jb;
    jb["input_facet"] = b.input_facet;
    jb["size"] = b.size;
    jb["is_path"] = b.is_path;
    jb["endpoints_are_solo"] = b.endpoints_are_solo;
    jb["words"] = b.words;
    blocks.push_back(std::move(jb));
  }
  out["blocks"] = std::move(blocks);
  if (!census.failures.empty()) out["failures"] = census.failures;
  return out;
}

json certificate_json(const ConnectivityCertificate& cert) {
  json out;
  out["applicable"] = cert.applicable;
  out["layers"] = cert.layers;
  if (!cert.applicable) {
    out["reason"] = cert.reason;
    return out;
  }
  out["agreement_facets"] = cert.agreement_facets;
  out["input_subgraph_connected"] = cert.input_subgraph_connected;
  out["protocol_subgraph_connected"] = cert.protocol_subgraph_connected;
  out["same_decision_components"] = cert.same_decision_components;
  out["components_constant"] = cert.components_constant;
  out["clash_facet"] = cert.clash_facet;
  out["derivation"] = cert.derivation;
  return out;
}

std::string to_dot(const SimplicialModel& m, const std::string& graph_name) {
  std::ostringstream out;
  out << "graph " << graph_name << " {\n";
  out << "  node [shape=circle, style=filled];\n";
  for (const Vertex& v : m.vertices) {
    std::string fill = "lightgray";
    std::string font = "black";
    const std::string& name = m.agents[static_cast<size_t>(v.color)];
    if (name == "B") {
      fill = "black";
      font = "white";
    } else if (name == "W") {
      fill = "white";
    }
    out << "  v" << v.id << " [label=\"";
    for (size_t i = 0; i < v.label.size(); ++i) {
      if (i) out << "\\n";
      out << atom_text(v.label[i], m.agents);
    }
    out << "\", fillcolor=" << fill << ", fontcolor=" << font << "];\n";
  }
  for (const auto& facet : m.facets)
    for (size_t i = 0; i < facet.size(); ++i)
      for (size_t j = i + 1; j < facet.size(); ++j)
        out << "  v" << facet[i] << " -- v" << facet[j] << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace delchk
