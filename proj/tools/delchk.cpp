// delchk: decide two-process task solvability in the layered message-passing
// model, evaluate epistemic formulas on the associated simplicial models,
// compute bisimulations, run the subdivision census and export models.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "delchk/analysis.hpp"
#include "delchk/errors.hpp"
#include "delchk/layered.hpp"
#include "delchk/report.hpp"
#include "delchk/task.hpp"

using namespace delchk;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("DELCHK_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

struct ModelChoice {
  SimplicialModel model;
  std::vector<std::string> agents;
};

ModelChoice build_model(const TaskSpec& spec, const std::string& which, int layers) {
  const SimplicialModel input = build_input_model(spec);
  if (which == "input") return {input, spec.agents};
  if (which == "protocol") return {protocol_model(input, layers).model, spec.agents};
  const OutputModels o = output_model(spec);
  if (which == "output") return {o.plain.model, spec.agents};
  if (which == "extended-output") return {o.extended.model, spec.agents};
  throw std::invalid_argument("unknown model '" + which + "'");
}

std::string facet_text(const SimplicialModel& m, int facet) {
  std::vector<int> by_name(m.facets[static_cast<size_t>(facet)]);
  std::sort(by_name.begin(), by_name.end(), [&](int a, int b) {
    return m.agents[static_cast<size_t>(m.vertices[static_cast<size_t>(a)].color)] <
           m.agents[static_cast<size_t>(m.vertices[static_cast<size_t>(b)].color)];
  });
  std::string out;
  for (int v : by_name) {
    const Vertex& vert = m.vertices[static_cast<size_t>(v)];
    if (!out.empty()) out += ' ';
    out += m.agents[static_cast<size_t>(vert.color)] + "{";
    for (size_t i = 0; i < vert.label.size(); ++i) {
      if (i) out += ' ';
      out += atom_text(vert.label[i], m.agents);
    }
    out += '}';
  }
  return out;
}

int run_solve(const std::string& task, int layers, const std::string& method,
              const std::string& format) {
  const TaskSpec spec = load_task(task);
  const SimplicialModel input = build_input_model(spec);
  const SimplicialModel protocol = protocol_model(input, layers).model;

  json out;
  out["task"] = task;
  out["layers"] = layers;
  bool agree = true;
  std::string verdict_word;

  if (method == "both") {
    const CrossCheck cc = cross_check(input, spec, layers);
    agree = cc.agree;
    verdict_word =
        cc.agree ? (cc.map_verdict.solvable ? "solvable" : "unsolvable") : "disagreement";
    out.update(cross_check_json(cc, spec.agents, &protocol));
    if (format == "text") {
      std::cout << "task " << task << "  layers " << layers << "\n";
      std::cout << "map-search: " << (cc.map_verdict.solvable ? "solvable" : "unsolvable") << " ("
                << cc.map_verdict.nodes << " nodes)\n";
      std::cout << "formula-extension: "
                << (cc.formula_verdict.solvable ? "solvable" : "unsolvable") << " ("
                << cc.formula_verdict.nodes << " nodes)\n";
      std::cout << "verdicts agree: " << (cc.agree ? verdict_word : "NO") << "\n";
    }
  } else {
    const ActionModel t = build_task_action_model(spec, input);
    const Verdict v =
        method == "map" ? solve_by_map(input, t, layers) : solve_by_formula(input, spec, layers);
    verdict_word = v.solvable ? "solvable" : "unsolvable";
    out.update(verdict_json(v, spec.agents, &protocol));
    if (format == "text") {
      std::cout << "task " << task << "  layers " << layers << "\n";
      std::cout << (method == "map" ? "map-search: " : "formula-extension: ") << verdict_word
                << " (" << v.nodes << " nodes)\n";
      if (v.solvable) {
        std::cout << "witness decisions:";
        for (size_t u = 0; u < v.decisions.size(); ++u) std::cout << ' ' << v.decisions[u];
        std::cout << "\n";
      } else if (v.failing_facet) {
        std::cout << "deepest conflict at world " << *v.failing_facet << ": "
                  << facet_text(protocol, *v.failing_facet) << "\n";
      }
    }
  }

  if (format == "json") std::cout << out.dump(2) << "\n";
  if (!agree) {
    std::cerr << "internal invariant violation: the deciders disagree\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int run_eval(const std::string& task, const std::string& formula_text, const std::string& which,
             int layers, const std::string& format) {
  const TaskSpec spec = load_task(task);
  const ModelChoice chosen = build_model(spec, which, layers);
  const Formula phi = parse_formula(formula_text, chosen.agents);

  std::vector<int> failing;
  for (int f = 0; f < chosen.model.facet_count(); ++f)
    if (!eval(chosen.model, f, phi)) failing.push_back(f);

  if (format == "json") {
    json out;
    out["task"] = task;
    out["model"] = which;
    out["formula"] = to_text(phi, chosen.agents);
    out["worlds"] = chosen.model.facet_count();
    out["failing_worlds"] = failing;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "model " << which << "  worlds " << chosen.model.facet_count() << "\n";
    std::cout << "formula " << to_text(phi, chosen.agents) << " holds in "
              << chosen.model.facet_count() - static_cast<int>(failing.size()) << "/"
              << chosen.model.facet_count() << " worlds\n";
    for (int f : failing)
      std::cout << "fails at world " << f << ": " << facet_text(chosen.model, f) << "\n";
  }
  return kExitOk;
}

int run_bisim(const std::string& task, int formulas, int depth, const std::string& format) {
  const TaskSpec spec = load_task(task);
  const OutputModels o = output_model(spec);
  const std::vector<AtomKind> kinds{AtomKind::Input};

  BisimRelation projection_pairs;
  for (int f = 0; f < o.plain.model.facet_count(); ++f)
    projection_pairs.pairs.push_back({o.plain.provenance[static_cast<size_t>(f)].first, f});
  std::sort(projection_pairs.pairs.begin(), projection_pairs.pairs.end());

  const BisimCheck check = check_bisimulation(projection_pairs, o.input, o.plain.model, kinds);
  const BisimRelation max = max_bisimulation(o.input, o.plain.model, kinds);

  long sampled = 0;
  long mismatches = 0;
  if (formulas > 0) {
    std::vector<Atom> universe;
    for (const Vertex& v : o.input.vertices)
      for (const Atom& a : v.label) universe.push_back(a);
    std::sort(universe.begin(), universe.end());
    const std::uint64_t seed = seed_from_env();
    for (int k = 0; k < formulas; ++k) {
      const Formula phi =
          random_formula(seed + static_cast<std::uint64_t>(k), depth, universe, false);
      for (const auto& [x, y] : max.pairs) {
        ++sampled;
        if (eval(o.input, x, phi) != eval(o.plain.model, y, phi)) ++mismatches;
      }
    }
  }

  if (format == "json") {
    json out;
    out["task"] = task;
    out["max_bisimulation_size"] = max.pairs.size();
    out["projection_pairs"] = projection_pairs.pairs.size();
    out["projection_is_bisimulation"] = check.ok;
    if (!check.ok) {
      json ce;
      ce["clause"] = check.counterexample->clause;
      ce["pair"] = {check.counterexample->pair.first, check.counterexample->pair.second};
      ce["agent"] = check.counterexample->agent >= 0
                        ? json(spec.agents[static_cast<size_t>(check.counterexample->agent)])
                        : json(nullptr);
      ce["neighbor"] = check.counterexample->facet;
      out["counterexample"] = std::move(ce);
    }
    if (formulas > 0) {
      out["sampled_evaluations"] = sampled;
      out["truth_mismatches"] = mismatches;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "max bisimulation size: " << max.pairs.size() << "\n";
    if (check.ok) {
      std::cout << "projection pairs (" << projection_pairs.pairs.size()
                << ") form a bisimulation\n";
    } else {
      const BisimCounterexample& ce = *check.counterexample;
      std::cout << "projection pairs rejected: clause " << ce.clause << " fails for worlds ("
                << facet_text(o.input, ce.pair.first) << ") / ("
                << facet_text(o.plain.model, ce.pair.second) << ")";
      if (ce.agent >= 0)
        std::cout << " at agent " << spec.agents[static_cast<size_t>(ce.agent)] << ", neighbor "
                  << ce.facet;
      std::cout << "\n";
    }
    if (formulas > 0)
      std::cout << "sampled " << sampled << " evaluations over bisimilar pairs, " << mismatches
                << " mismatches\n";
  }
  return mismatches == 0 ? kExitOk : kExitInvariant;
}

int run_census(const std::string& task, int layers, const std::string& format) {
  const TaskSpec spec = load_task(task);
  const SimplicialModel input = build_input_model(spec);
  const Census census = subdivision_census(input, layers);

  if (format == "json") {
    json out = census_json(census);
    out["task"] = task;
    std::cout << out.dump(2) << "\n";
  } else {
    long total = 0;
    for (const CensusBlock& b : census.blocks) {
      total += b.size;
      std::cout << "input facet " << b.input_facet << ": " << b.size << " facets, "
                << (b.is_path ? "path [" : "NOT A PATH [");
      for (size_t i = 0; i < b.words.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << (b.words[i].empty() ? "-" : b.words[i]);
      }
      std::cout << "]\n";
    }
    std::cout << "total " << total << " facets in " << census.blocks.size() << " blocks of "
              << census.expected_block_size << "\n";
    std::cout << (census.ok ? "census ok" : "census FAILED") << "\n";
  }
  return census.ok ? kExitOk : kExitInvariant;
}

int run_export(const std::string& task, const std::string& which, int layers,
               const std::string& out_path) {
  const TaskSpec spec = load_task(task);
  const ModelChoice chosen = build_model(spec, which, layers);
  const std::string dot = to_dot(chosen.model, "delchk");
  if (out_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream out(out_path);
    if (!out) throw task_error("cannot write '" + out_path + "'");
    out << dot;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"task solvability in the two-process layered message-passing model"};
  app.require_subcommand(1);

  std::string task;
  int layers = 0;
  std::string format = "text";
  std::string method = "both";
  std::string model = "protocol";
  std::string formula;
  std::string out_path;
  int formulas = 0;
  int depth = 4;

  auto add_common = [&](CLI::App* cmd, bool with_layers) {
    cmd->add_option("--task", task,
                    "builtin name (eqneg, consensus2, consensus3, const0, free) or task file")
        ->required();
    if (with_layers) cmd->add_option("--layers", layers, "number of layers N >= 0");
    cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "decide task solvability");
  add_common(solve, true);
  solve->add_option("--method", method, "map, formula or both")
      ->check(CLI::IsMember({"map", "formula", "both"}));

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a formula at every world");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--formula", formula, "epistemic formula")->required();
  eval_cmd->add_option("--model", model, "protocol, output or extended-output")
      ->check(CLI::IsMember({"protocol", "output", "extended-output"}));

  CLI::App* bisim = app.add_subcommand("bisim", "bisimulation between input and output models");
  add_common(bisim, false);
  bisim->add_option("--formulas", formulas,
                    "sample this many random formulas (seeded by DELCHK_SEED)");
  bisim->add_option("--depth", depth, "depth bound for sampled formulas");

  CLI::App* census = app.add_subcommand("census", "per-edge subdivision census of the protocol");
  add_common(census, true);

  CLI::App* export_cmd = app.add_subcommand("export", "write a model as a DOT graph");
  add_common(export_cmd, true);
  export_cmd->add_option("--model", model, "input, protocol, output or extended-output")
      ->check(CLI::IsMember({"input", "protocol", "output", "extended-output"}));
  export_cmd->add_flag("--dot", "DOT output (the only supported format)");
  export_cmd->add_option("--out", out_path, "output file (defaults to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (layers < 0) throw std::invalid_argument("--layers must be >= 0");
    if (solve->parsed()) return run_solve(task, layers, method, format);
    if (eval_cmd->parsed()) return run_eval(task, formula, model, layers, format);
    if (bisim->parsed()) return run_bisim(task, formulas, depth, format);
    if (census->parsed()) return run_census(task, layers, format);
    if (export_cmd->parsed()) return run_export(task, model, layers, out_path);
    return kExitUsage;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", column " << e.column << ")\n";
    return kExitInput;
  } catch (const task_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const internal_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
