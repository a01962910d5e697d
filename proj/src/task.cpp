#include "delchk/task.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "delchk/errors.hpp"

namespace delchk {

namespace {

using nlohmann::json;

std::vector<std::vector<long>> all_pairs(const TaskSpec& spec) {
  std::vector<std::vector<long>> out;
  for (long i : spec.inputs[0])
    for (long j : spec.inputs[1]) out.push_back({i, j});
  std::sort(out.begin(), out.end());
  return out;
}

std::string tuple_text(const std::vector<long>& t) {
  std::string out = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

}  // namespace

const std::vector<std::vector<long>>* TaskSpec::outputs_for(const std::vector<long>& input) const {
  for (size_t i = 0; i < input_facets.size(); ++i)
    if (input_facets[i] == input) return &delta[i];
  return nullptr;
}

void validate_task(const TaskSpec& spec) {
  const size_t n = spec.agents.size();
  if (n != 2) throw task_error("task: exactly two agents are supported");
  if (std::set<std::string>(spec.agents.begin(), spec.agents.end()).size() != n)
    throw task_error("task: agent names must be unique");
  if (spec.inputs.size() != n || spec.outputs.size() != n)
    throw task_error("task: one input and one output domain per agent required");
  for (size_t a = 0; a < n; ++a) {
    if (spec.inputs[a].empty()) throw task_error("task: empty input domain for " + spec.agents[a]);
    if (spec.outputs[a].empty())
      throw task_error("task: empty output domain for " + spec.agents[a]);
    if (!std::is_sorted(spec.inputs[a].begin(), spec.inputs[a].end()) ||
        std::adjacent_find(spec.inputs[a].begin(), spec.inputs[a].end()) != spec.inputs[a].end())
      throw task_error("task: input domain of " + spec.agents[a] + " must be sorted and unique");
    if (!std::is_sorted(spec.outputs[a].begin(), spec.outputs[a].end()) ||
        std::adjacent_find(spec.outputs[a].begin(), spec.outputs[a].end()) !=
            spec.outputs[a].end())
      throw task_error("task: output domain of " + spec.agents[a] + " must be sorted and unique");
  }
  if (spec.input_facets.empty()) throw task_error("task: no admitted input pair");
  if (!std::is_sorted(spec.input_facets.begin(), spec.input_facets.end()))
    throw task_error("task: admitted input pairs must be sorted");
  if (std::adjacent_find(spec.input_facets.begin(), spec.input_facets.end()) !=
      spec.input_facets.end())
    throw task_error("task: duplicate admitted input pair");
  if (spec.delta.size() != spec.input_facets.size())
    throw task_error("task: delta must cover every admitted input pair exactly once");

  for (size_t i = 0; i < spec.input_facets.size(); ++i) {
    const auto& in = spec.input_facets[i];
    if (in.size() != n) throw task_error("task: input pair " + tuple_text(in) + " has bad arity");
    for (size_t a = 0; a < n; ++a)
      if (!std::binary_search(spec.inputs[a].begin(), spec.inputs[a].end(), in[a]))
        throw task_error("task: input pair " + tuple_text(in) + " uses a value outside the " +
                         spec.agents[a] + " domain");
    if (spec.delta[i].empty())
      throw task_error("task: no allowed output pair for input " + tuple_text(in));
    for (const auto& out : spec.delta[i]) {
      if (out.size() != n)
        throw task_error("task: output pair " + tuple_text(out) + " has bad arity");
      for (size_t a = 0; a < n; ++a)
        if (!std::binary_search(spec.outputs[a].begin(), spec.outputs[a].end(), out[a]))
          throw task_error("task: output pair " + tuple_text(out) + " uses a value outside the " +
                           spec.agents[a] + " domain");
    }
    if (!std::is_sorted(spec.delta[i].begin(), spec.delta[i].end()) ||
        std::adjacent_find(spec.delta[i].begin(), spec.delta[i].end()) != spec.delta[i].end())
      throw task_error("task: outputs for " + tuple_text(in) + " must be sorted and unique");
  }
}

TaskSpec builtin_task(Builtin which) {
  TaskSpec spec;
  spec.agents = {"B", "W"};
  switch (which) {
    case Builtin::EqualityNegation: {
      spec.inputs = {{0, 1, 2}, {0, 1, 2}};
      spec.outputs = {{0, 1}, {0, 1}};
      spec.input_facets = all_pairs(spec);
      for (const auto& in : spec.input_facets) {
        if (in[0] == in[1])
          spec.delta.push_back({{0, 1}, {1, 0}});  // equal inputs: decide differently
        else
          spec.delta.push_back({{0, 0}, {1, 1}});  // distinct inputs: agree
      }
      break;
    }
    case Builtin::Consensus2:
    case Builtin::Consensus3: {
      const long k = which == Builtin::Consensus2 ? 2 : 3;
      std::vector<long> domain;
      for (long v = 0; v < k; ++v) domain.push_back(v);
      spec.inputs = {domain, domain};
      spec.outputs = {domain, domain};
      spec.input_facets = all_pairs(spec);
      for (const auto& in : spec.input_facets) {
        std::vector<std::vector<long>> outs;
        outs.push_back({in[0], in[0]});
        if (in[1] != in[0]) outs.push_back({in[1], in[1]});
        std::sort(outs.begin(), outs.end());
        spec.delta.push_back(std::move(outs));
      }
      break;
    }
    case Builtin::ConstantZero: {
      spec.inputs = {{0, 1}, {0, 1}};
      spec.outputs = {{0}, {0}};
      spec.input_facets = all_pairs(spec);
      for (size_t i = 0; i < spec.input_facets.size(); ++i) spec.delta.push_back({{0, 0}});
      break;
    }
    case Builtin::FreeChoice: {
      spec.inputs = {{0, 1}, {0, 1}};
      spec.outputs = {{0, 1}, {0, 1}};
      spec.input_facets = all_pairs(spec);
      for (size_t i = 0; i < spec.input_facets.size(); ++i)
        spec.delta.push_back({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
      break;
    }
  }
  validate_task(spec);
  return spec;
}

std::optional<Builtin> builtin_by_name(std::string_view name) {
  if (name == "eqneg") return Builtin::EqualityNegation;
  if (name == "consensus2") return Builtin::Consensus2;
  if (name == "consensus3") return Builtin::Consensus3;
  if (name == "const0") return Builtin::ConstantZero;
  if (name == "free") return Builtin::FreeChoice;
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"eqneg", "consensus2", "consensus3", "const0", "free"};
}

SimplicialModel build_input_model(const TaskSpec& spec) {
  validate_task(spec);
  SimplicialModel m;
  m.agents = spec.agents;

  std::map<std::pair<int, long>, int> vertex_id;
  for (int a = 0; a < m.agent_count(); ++a) {
    std::set<long> used;
    for (const auto& in : spec.input_facets) used.insert(in[static_cast<size_t>(a)]);
    for (long v : used) {
      int id = static_cast<int>(m.vertices.size());
      m.vertices.push_back(Vertex{id, a, {input_atom(a, v)}});
      vertex_id[{a, v}] = id;
    }
  }
  for (const auto& in : spec.input_facets) {
    std::vector<int> facet;
    for (int a = 0; a < m.agent_count(); ++a)
      facet.push_back(vertex_id.at({a, in[static_cast<size_t>(a)]}));
    std::sort(facet.begin(), facet.end());
    m.facets.push_back(std::move(facet));
  }
  if (!validate_model(m).empty()) throw internal_error("input model failed validation");
  return m;
}

ActionModel build_task_action_model(const TaskSpec& spec, const SimplicialModel& input_model) {
  validate_task(spec);
  // one action per output tuple appearing in some delta image
  std::map<std::vector<long>, std::vector<int>> pre_of;  // tuple -> admitted facet ids
  for (size_t i = 0; i < spec.input_facets.size(); ++i)
    for (const auto& out : spec.delta[i]) pre_of[out].push_back(static_cast<int>(i));

  std::vector<Action> actions;
  std::vector<std::vector<int>> pre;
  for (auto& [tuple, facets] : pre_of) {
    if (facets.empty()) continue;  // never fires
    Action act;
    act.label = tuple_text(tuple);
    act.decisions = tuple;
    actions.push_back(std::move(act));
    pre.push_back(facets);
  }

  std::vector<std::vector<long>> decisions;
  for (const Action& a : actions) decisions.push_back(a.decisions);
  return make_action_model(
      input_model.agent_count(), std::move(actions), std::move(pre), input_model.facet_count(),
      [&decisions](int agent, int t, int u) {
        return decisions[static_cast<size_t>(t)][static_cast<size_t>(agent)] ==
               decisions[static_cast<size_t>(u)][static_cast<size_t>(agent)];
      },
      true);
}

OutputModels output_model(const TaskSpec& spec) {
  OutputModels out;
  out.input = build_input_model(spec);
  const ActionModel t = build_task_action_model(spec, out.input);
  out.plain = product_update(out.input, t);
  out.extended = extended_product_update(out.input, t);
  return out;
}

// --- Task file format --------------------------------------------------------

namespace {

[[noreturn]] void semantic_fail(const std::string& what) { throw task_error("task file: " + what); }

std::vector<long> long_array(const json& j, const std::string& where) {
  if (!j.is_array()) semantic_fail(where + " must be an array of integers");
  std::vector<long> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) semantic_fail(where + " must contain only integers");
    out.push_back(x.get<long>());
  }
  return out;
}

}  // namespace

TaskSpec parse_task_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; keep it as the column of line 1
    throw parse_error(std::string("task file: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  if (!doc.is_object()) semantic_fail("top level must be an object");

  static const std::set<std::string> known = {"agents", "inputs", "input_facets", "outputs",
                                              "delta"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known.count(key)) semantic_fail("unknown field '" + key + "'");
  }
  for (const auto& key : known)
    if (!doc.contains(key)) semantic_fail("missing field '" + key + "'");

  TaskSpec spec;
  if (!doc["agents"].is_array() || doc["agents"].size() != 2)
    semantic_fail("'agents' must be an array of 2 names");
  for (const auto& a : doc["agents"]) {
    if (!a.is_string()) semantic_fail("'agents' must contain strings");
    spec.agents.push_back(a.get<std::string>());
  }

  auto domains = [&](const char* key) {
    std::vector<std::vector<long>> out;
    const json& obj = doc[key];
    if (!obj.is_object()) semantic_fail(std::string("'") + key + "' must map agents to arrays");
    for (const auto& name : spec.agents) {
      if (!obj.contains(name))
        semantic_fail(std::string("'") + key + "' missing agent '" + name + "'");
      out.push_back(long_array(obj[name], std::string(key) + "." + name));
    }
    if (obj.size() != spec.agents.size())
      semantic_fail(std::string("'") + key + "' names an unknown agent");
    return out;
  };
  spec.inputs = domains("inputs");
  spec.outputs = domains("outputs");

  const json& facets = doc["input_facets"];
  if (facets.is_string() && facets.get<std::string>() == "all") {
    spec.input_facets = all_pairs(spec);
  } else if (facets.is_array()) {
    for (const auto& f : facets) spec.input_facets.push_back(long_array(f, "input_facets entry"));
    std::sort(spec.input_facets.begin(), spec.input_facets.end());
  } else {
    semantic_fail("'input_facets' must be \"all\" or an array of pairs");
  }

  if (!doc["delta"].is_array()) semantic_fail("'delta' must be an array");
  std::map<std::vector<long>, std::vector<std::vector<long>>> delta_map;
  for (const auto& entry : doc["delta"]) {
    if (!entry.is_object() || !entry.contains("in") || !entry.contains("out"))
      semantic_fail("each delta entry needs 'in' and 'out'");
    for (const auto& [key, value] : entry.items()) {
      (void)value;
      if (key != "in" && key != "out") semantic_fail("unknown delta field '" + key + "'");
    }
    std::vector<long> in = long_array(entry["in"], "delta.in");
    if (!entry["out"].is_array()) semantic_fail("delta.out must be an array of pairs");
    std::vector<std::vector<long>> outs;
    for (const auto& o : entry["out"]) outs.push_back(long_array(o, "delta.out entry"));
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    if (!delta_map.emplace(std::move(in), std::move(outs)).second)
      semantic_fail("duplicate delta entry");
  }
  for (const auto& in : spec.input_facets) {
    auto it = delta_map.find(in);
    if (it == delta_map.end())
      semantic_fail("delta missing admitted input pair " + tuple_text(in));
    spec.delta.push_back(it->second);
  }
  if (delta_map.size() != spec.input_facets.size())
    semantic_fail("delta names a pair that is not admitted");

  validate_task(spec);
  return spec;
}

std::string serialize_task(const TaskSpec& spec) {
  // hand-formatted so the golden files stay compact and bit-exact
  auto ints = [](const std::vector<long>& xs) {
    std::string out = "[";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(xs[i]);
    }
    return out + "]";
  };
  auto domains = [&](const std::vector<std::vector<long>>& per_agent) {
    std::string out = "{";
    for (size_t a = 0; a < spec.agents.size(); ++a) {
      if (a) out += ", ";
      out += json(spec.agents[a]).dump() + ": " + ints(per_agent[a]);
    }
    return out + "}";
  };

  std::ostringstream out;
  out << "{\n";
  out << "  \"agents\": [";
  for (size_t a = 0; a < spec.agents.size(); ++a) {
    if (a) out << ", ";
    out << json(spec.agents[a]).dump();
  }
  out << "],\n";
  out << "  \"inputs\": " << domains(spec.inputs) << ",\n";
  if (spec.input_facets == all_pairs(spec)) {
    out << "  \"input_facets\": \"all\",\n";
  } else {
    out << "  \"input_facets\": [";
    for (size_t i = 0; i < spec.input_facets.size(); ++i) {
      if (i) out << ", ";
      out << ints(spec.input_facets[i]);
    }
    out << "],\n";
  }
  out << "  \"outputs\": " << domains(spec.outputs) << ",\n";
  out << "  \"delta\": [\n";
  for (size_t i = 0; i < spec.input_facets.size(); ++i) {
    out << "    {\"in\": " << ints(spec.input_facets[i]) << ", \"out\": [";
    for (size_t j = 0; j < spec.delta[i].size(); ++j) {
      if (j) out << ", ";
      out << ints(spec.delta[i][j]);
    }
    out << "]}" << (i + 1 < spec.input_facets.size() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

TaskSpec load_task(const std::string& name_or_path) {
  if (auto builtin = builtin_by_name(name_or_path)) return builtin_task(*builtin);
  std::ifstream in(name_or_path);
  if (!in) throw task_error("cannot open task file '" + name_or_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_task_file(buffer.str());
}

}  // namespace delchk
