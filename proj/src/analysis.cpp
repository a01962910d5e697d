#include "delchk/analysis.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "delchk/errors.hpp"
#include "delchk/layered.hpp"

namespace delchk {

namespace {

// Vertices in BFS order over facet adjacency, starting from the lowest-id
// facet (restarting for disconnected models). Keeps the search deterministic
// and lets facet constraints fire as early as possible.
std::vector<int> bfs_vertex_order(const SimplicialModel& m) {
  std::vector<int> order;
  std::vector<bool> facet_seen(static_cast<size_t>(m.facet_count()), false);
  std::vector<bool> vertex_seen(static_cast<size_t>(m.vertex_count()), false);
  for (int start = 0; start < m.facet_count(); ++start) {
    if (facet_seen[static_cast<size_t>(start)]) continue;
    std::queue<int> queue;
    queue.push(start);
    facet_seen[static_cast<size_t>(start)] = true;
    while (!queue.empty()) {
      int f = queue.front();
      queue.pop();
      for (int a = 0; a < m.agent_count(); ++a) {
        int v = m.vertex_of(f, a);
        if (v >= 0 && !vertex_seen[static_cast<size_t>(v)]) {
          vertex_seen[static_cast<size_t>(v)] = true;
          order.push_back(v);
        }
      }
      for (int g = 0; g < m.facet_count(); ++g)
        if (!facet_seen[static_cast<size_t>(g)] && m.share_any_vertex(f, g)) {
          facet_seen[static_cast<size_t>(g)] = true;
          queue.push(g);
        }
    }
  }
  return order;
}

struct SearchOutcome {
  bool found = false;
  std::vector<long> assignment;  // vertex -> chosen payload
  long nodes = 0;
  int deepest = -1;     // index in visit order of the deepest conflict
  int fail_facet = -1;  // facet rejecting the deepest partial assignment
};

// Backtracking over per-vertex candidate payloads; a facet is checked as soon
// as all of its vertices are assigned.
SearchOutcome backtrack_assign(
    const SimplicialModel& m, const std::vector<std::vector<long>>& candidates,
    const std::function<bool(int facet, const std::vector<long>& assignment)>& facet_ok) {
  SearchOutcome out;
  out.assignment.assign(static_cast<size_t>(m.vertex_count()), 0);
  std::vector<bool> assigned(static_cast<size_t>(m.vertex_count()), false);
  const std::vector<int> order = bfs_vertex_order(m);

  std::vector<std::vector<int>> facets_at(static_cast<size_t>(m.vertex_count()));
  for (int f = 0; f < m.facet_count(); ++f)
    for (int v : m.facets[static_cast<size_t>(f)]) facets_at[static_cast<size_t>(v)].push_back(f);

  std::function<bool(size_t)> dfs = [&](size_t i) -> bool {
    if (i == order.size()) return true;
    const int v = order[i];
    for (long payload : candidates[static_cast<size_t>(v)]) {
      ++out.nodes;
      out.assignment[static_cast<size_t>(v)] = payload;
      assigned[static_cast<size_t>(v)] = true;
      bool ok = true;
      for (int f : facets_at[static_cast<size_t>(v)]) {
        bool complete = true;
        for (int w : m.facets[static_cast<size_t>(f)])
          if (!assigned[static_cast<size_t>(w)]) {
            complete = false;
            break;
          }
        if (complete && !facet_ok(f, out.assignment)) {
          ok = false;
          if (static_cast<int>(i) > out.deepest) {
            out.deepest = static_cast<int>(i);
            out.fail_facet = f;
          }
          break;
        }
      }
      if (ok && dfs(i + 1)) return true;
      assigned[static_cast<size_t>(v)] = false;
    }
    return false;
  };
  out.found = dfs(0);
  return out;
}

// Decision value of an output-model vertex (the class atom of its agent).
long output_vertex_decision(const UpdateResult& output, const ActionModel& task_actions, int w) {
  const int color = output.model.vertices[static_cast<size_t>(w)].color;
  const int cls = output.vertex_class[static_cast<size_t>(w)].second;
  const int rep = task_actions.class_rep(color, cls);
  return task_actions.actions[static_cast<size_t>(rep)].decisions[static_cast<size_t>(color)];
}

void validate_witness(const SimplicialModel& protocol, const std::vector<int>& protocol_proj,
                      const UpdateResult& output, const std::vector<int>& decision_map) {
  Morphism delta{&protocol, &output.model, decision_map};
  const MorphismCheck mc = check_morphism(delta);
  if (!mc.ok) throw internal_error("solvable witness is not a morphism: " + mc.violation);
  for (int v = 0; v < protocol.vertex_count(); ++v)
    if (output.projection[static_cast<size_t>(decision_map[static_cast<size_t>(v)])] !=
        protocol_proj[static_cast<size_t>(v)])
      throw internal_error("solvable witness breaks the commuting projections at vertex " +
                           std::to_string(v));
}

}  // namespace

namespace {

// Shared setup of the commuting-map search: per-vertex candidate output
// vertices (decision values ascending) and the facet-image constraint.
struct MapSearch {
  UpdateResult protocol;
  UpdateResult output;
  std::vector<std::vector<long>> candidates;
  std::set<std::vector<int>> output_facets;
  int starved_vertex = -1;  // protocol vertex with no candidate, if any

  bool facet_ok(int f, const std::vector<long>& assignment) const {
    std::vector<int> image;
    for (int v : protocol.model.facets[static_cast<size_t>(f)])
      image.push_back(static_cast<int>(assignment[static_cast<size_t>(v)]));
    std::sort(image.begin(), image.end());
    return output_facets.count(image) > 0;
  }
};

MapSearch map_search_setup(const SimplicialModel& input_model, const ActionModel& task_actions,
                           int layers) {
  MapSearch s;
  s.protocol = protocol_model(input_model, layers);
  s.output = product_update(input_model, task_actions);

  std::vector<std::vector<std::pair<long, int>>> above(
      static_cast<size_t>(input_model.vertex_count()));
  for (int w = 0; w < s.output.model.vertex_count(); ++w)
    above[static_cast<size_t>(s.output.projection[static_cast<size_t>(w)])].push_back(
        {output_vertex_decision(s.output, task_actions, w), w});
  for (auto& opts : above) std::sort(opts.begin(), opts.end());

  s.candidates.resize(static_cast<size_t>(s.protocol.model.vertex_count()));
  for (int v = 0; v < s.protocol.model.vertex_count(); ++v) {
    for (const auto& [d, w] :
         above[static_cast<size_t>(s.protocol.projection[static_cast<size_t>(v)])])
      s.candidates[static_cast<size_t>(v)].push_back(w);
    if (s.candidates[static_cast<size_t>(v)].empty() && s.starved_vertex < 0)
      s.starved_vertex = v;
  }
  s.output_facets.insert(s.output.model.facets.begin(), s.output.model.facets.end());
  return s;
}

}  // namespace

Verdict solve_by_map(const SimplicialModel& input_model, const ActionModel& task_actions,
                     int layers) {
  Verdict verdict;
  verdict.method = SolveMethod::MapSearch;
  verdict.layers = layers;

  const MapSearch setup = map_search_setup(input_model, task_actions, layers);
  const UpdateResult& protocol = setup.protocol;
  const UpdateResult& output = setup.output;
  if (setup.starved_vertex >= 0) {
    verdict.solvable = false;
    verdict.note = "no output vertex above input vertex " +
                   std::to_string(protocol.projection[static_cast<size_t>(setup.starved_vertex)]);
    return verdict;
  }

  auto facet_ok = [&](int f, const std::vector<long>& assignment) {
    return setup.facet_ok(f, assignment);
  };
  const SearchOutcome outcome = backtrack_assign(protocol.model, setup.candidates, facet_ok);
  verdict.nodes = outcome.nodes;
  if (!outcome.found) {
    verdict.solvable = false;
    if (outcome.fail_facet >= 0) verdict.failing_facet = outcome.fail_facet;
    verdict.note = "decision-map search exhausted";
    return verdict;
  }

  verdict.solvable = true;
  verdict.decision_map.reserve(static_cast<size_t>(protocol.model.vertex_count()));
  for (long w : outcome.assignment) verdict.decision_map.push_back(static_cast<int>(w));
  for (int v = 0; v < protocol.model.vertex_count(); ++v)
    verdict.decisions.push_back(
        output_vertex_decision(output, task_actions, verdict.decision_map[static_cast<size_t>(v)]));
  validate_witness(protocol.model, protocol.projection, output, verdict.decision_map);
  return verdict;
}

long count_decision_maps(const SimplicialModel& input_model, const ActionModel& task_actions,
                         int layers, long limit) {
  const MapSearch setup = map_search_setup(input_model, task_actions, layers);
  if (setup.starved_vertex >= 0) return 0;
  const SimplicialModel& m = setup.protocol.model;

  const std::vector<int> order = bfs_vertex_order(m);
  std::vector<std::vector<int>> facets_at(static_cast<size_t>(m.vertex_count()));
  for (int f = 0; f < m.facet_count(); ++f)
    for (int v : m.facets[static_cast<size_t>(f)]) facets_at[static_cast<size_t>(v)].push_back(f);

  std::vector<long> assignment(static_cast<size_t>(m.vertex_count()), 0);
  std::vector<bool> assigned(static_cast<size_t>(m.vertex_count()), false);
  long count = 0;
  std::function<void(size_t)> dfs = [&](size_t i) {
    if (count >= limit) return;
    if (i == order.size()) {
      ++count;
      return;
    }
    const int v = order[i];
    for (long payload : setup.candidates[static_cast<size_t>(v)]) {
      assignment[static_cast<size_t>(v)] = payload;
      assigned[static_cast<size_t>(v)] = true;
      bool ok = true;
      for (int f : facets_at[static_cast<size_t>(v)]) {
        bool complete = true;
        for (int w : m.facets[static_cast<size_t>(f)])
          if (!assigned[static_cast<size_t>(w)]) {
            complete = false;
            break;
          }
        if (complete && !setup.facet_ok(f, assignment)) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(i + 1);
      assigned[static_cast<size_t>(v)] = false;
    }
  };
  dfs(0);
  return count;
}

Formula task_formula(const TaskSpec& spec) {
  validate_task(spec);
  std::vector<Formula> clauses;
  for (size_t i = 0; i < spec.input_facets.size(); ++i) {
    std::vector<Formula> inputs;
    for (size_t a = 0; a < spec.agents.size(); ++a)
      inputs.push_back(fml::atom(input_atom(static_cast<int>(a), spec.input_facets[i][a])));
    std::vector<Formula> options;
    for (const auto& out : spec.delta[i]) {
      std::vector<Formula> decides;
      for (size_t a = 0; a < spec.agents.size(); ++a)
        decides.push_back(fml::atom(decide_atom(static_cast<int>(a), out[a])));
      options.push_back(fml::conj(std::move(decides)));
    }
    clauses.push_back(fml::implies(fml::conj(std::move(inputs)), fml::disj(std::move(options))));
  }
  return fml::conj(std::move(clauses));
}

Verdict solve_by_formula(const SimplicialModel& input_model, const TaskSpec& spec, int layers) {
  Verdict verdict;
  verdict.method = SolveMethod::FormulaExtension;
  verdict.layers = layers;

  // admitted-pair indexing below requires the build_input_model facet order
  if (input_model.facet_count() != static_cast<int>(spec.input_facets.size()))
    throw std::invalid_argument("solve_by_formula: input model does not match the task");
  for (size_t i = 0; i < spec.input_facets.size(); ++i) {
    for (int v : input_model.facets[i]) {
      const Vertex& vert = input_model.vertices[static_cast<size_t>(v)];
      if (vert.label.size() != 1 ||
          vert.label[0] != input_atom(vert.color, spec.input_facets[i][static_cast<size_t>(
                               vert.color)]))
        throw std::invalid_argument("solve_by_formula: input model does not match the task");
    }
  }

  const UpdateResult protocol = protocol_model(input_model, layers);
  const ActionModel task_actions = build_task_action_model(spec, input_model);
  const UpdateResult output = product_update(input_model, task_actions);

  std::vector<std::vector<long>> candidates(static_cast<size_t>(protocol.model.vertex_count()));
  for (int v = 0; v < protocol.model.vertex_count(); ++v)
    candidates[static_cast<size_t>(v)] =
        spec.outputs[static_cast<size_t>(protocol.model.vertices[static_cast<size_t>(v)].color)];

  // the build_input_model facet order follows spec.input_facets, so the
  // admitted-pair index of a protocol facet is its provenance base facet
  auto facet_ok = [&](int f, const std::vector<long>& assignment) {
    const int base = protocol.provenance[static_cast<size_t>(f)].first;
    std::vector<long> tuple(spec.agents.size(), 0);
    for (int v : protocol.model.facets[static_cast<size_t>(f)])
      tuple[static_cast<size_t>(protocol.model.vertices[static_cast<size_t>(v)].color)] =
          assignment[static_cast<size_t>(v)];
    const auto& allowed = spec.delta[static_cast<size_t>(base)];
    return std::binary_search(allowed.begin(), allowed.end(), tuple);
  };

  const SearchOutcome outcome = backtrack_assign(protocol.model, candidates, facet_ok);
  verdict.nodes = outcome.nodes;
  if (!outcome.found) {
    verdict.solvable = false;
    if (outcome.fail_facet >= 0) verdict.failing_facet = outcome.fail_facet;
    verdict.note = "formula-extension search exhausted";
    return verdict;
  }

  verdict.solvable = true;
  verdict.decisions = outcome.assignment;

  // the found extension must satisfy the task formula at every world
  const SimplicialModel extension = with_decisions(protocol.model, verdict.decisions);
  if (auto bad = find_failing_world(extension, task_formula(spec)))
    throw internal_error("formula extension fails at world " + std::to_string(*bad));

  // induced decision map (the constructive direction of the extension theorem)
  std::map<std::pair<int, long>, int> output_vertex;  // (input vertex, decision) -> id
  for (int w = 0; w < output.model.vertex_count(); ++w)
    output_vertex[{output.projection[static_cast<size_t>(w)],
                   output_vertex_decision(output, task_actions, w)}] = w;
  for (int v = 0; v < protocol.model.vertex_count(); ++v) {
    auto it = output_vertex.find({protocol.projection[static_cast<size_t>(v)],
                                  verdict.decisions[static_cast<size_t>(v)]});
    if (it == output_vertex.end())
      throw internal_error("no output vertex realizes the decision at vertex " +
                           std::to_string(v));
    verdict.decision_map.push_back(it->second);
  }
  validate_witness(protocol.model, protocol.projection, output, verdict.decision_map);
  return verdict;
}

CrossCheck cross_check(const SimplicialModel& input_model, const TaskSpec& spec, int layers) {
  CrossCheck out;
  const ActionModel task_actions = build_task_action_model(spec, input_model);
  out.map_verdict = solve_by_map(input_model, task_actions, layers);
  out.formula_verdict = solve_by_formula(input_model, spec, layers);
  out.agree = out.map_verdict.solvable == out.formula_verdict.solvable;
  // solvable witnesses were validated inside the deciders; they need not be
  // equal maps
  out.witnesses_valid = out.agree;
  return out;
}

std::optional<int> find_failing_world(const SimplicialModel& m, const Formula& phi) {
  for (int f = 0; f < m.facet_count(); ++f)
    if (!eval(m, f, phi)) return f;
  return std::nullopt;
}

SimplicialModel with_decisions(const SimplicialModel& m, const std::vector<long>& decisions) {
  if (decisions.size() != static_cast<size_t>(m.vertex_count()))
    throw std::invalid_argument("with_decisions: one decision per vertex required");
  SimplicialModel out = m;
  for (Vertex& v : out.vertices)
    label_insert(v.label, decide_atom(v.color, decisions[static_cast<size_t>(v.id)]));
  return out;
}

// --- Bisimulation ------------------------------------------------------------

namespace {

// exists Y' with Y R Y' sharing the agent vertex with X'
bool forth_holds(const std::vector<std::vector<bool>>& rel, const SimplicialModel& m_prime,
                 int x_prime, int agent, int y) {
  for (int y_prime : neighbors_via(m_prime, x_prime, agent))
    if (rel[static_cast<size_t>(y)][static_cast<size_t>(y_prime)]) return true;
  return false;
}

// exists Y with Y R Y' sharing the agent vertex with X
bool back_holds(const std::vector<std::vector<bool>>& rel, const SimplicialModel& m, int x,
                int agent, int y_prime) {
  for (int y : neighbors_via(m, x, agent))
    if (rel[static_cast<size_t>(y)][static_cast<size_t>(y_prime)]) return true;
  return false;
}

std::vector<std::vector<bool>> relation_matrix(const BisimRelation& r, const SimplicialModel& m,
                                               const SimplicialModel& m_prime) {
  std::vector<std::vector<bool>> rel(
      static_cast<size_t>(m.facet_count()),
      std::vector<bool>(static_cast<size_t>(m_prime.facet_count()), false));
  for (const auto& [x, x_prime] : r.pairs)
    rel.at(static_cast<size_t>(x)).at(static_cast<size_t>(x_prime)) = true;
  return rel;
}

}  // namespace

BisimRelation max_bisimulation(const SimplicialModel& m, const SimplicialModel& m_prime,
                               const std::vector<AtomKind>& atom_kinds) {
  if (m.agent_count() != m_prime.agent_count())
    throw std::invalid_argument("max_bisimulation: agent sets differ");

  std::vector<std::vector<bool>> rel(
      static_cast<size_t>(m.facet_count()),
      std::vector<bool>(static_cast<size_t>(m_prime.facet_count()), false));
  std::vector<Label> left(static_cast<size_t>(m.facet_count()));
  std::vector<Label> right(static_cast<size_t>(m_prime.facet_count()));
  for (int x = 0; x < m.facet_count(); ++x) left[static_cast<size_t>(x)] =
      label_restrict(m.facet_label(x), atom_kinds);
  for (int y = 0; y < m_prime.facet_count(); ++y) right[static_cast<size_t>(y)] =
      label_restrict(m_prime.facet_label(y), atom_kinds);
  for (int x = 0; x < m.facet_count(); ++x)
    for (int y = 0; y < m_prime.facet_count(); ++y)
      rel[static_cast<size_t>(x)][static_cast<size_t>(y)] =
          left[static_cast<size_t>(x)] == right[static_cast<size_t>(y)];

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < m.facet_count(); ++x)
      for (int x_prime = 0; x_prime < m_prime.facet_count(); ++x_prime) {
        if (!rel[static_cast<size_t>(x)][static_cast<size_t>(x_prime)]) continue;
        bool keep = true;
        for (int a = 0; keep && a < m.agent_count(); ++a) {
          for (int y : neighbors_via(m, x, a))
            if (!forth_holds(rel, m_prime, x_prime, a, y)) {
              keep = false;
              break;
            }
          if (!keep) break;
          for (int y_prime : neighbors_via(m_prime, x_prime, a))
            if (!back_holds(rel, m, x, a, y_prime)) {
              keep = false;
              break;
            }
        }
        if (!keep) {
          rel[static_cast<size_t>(x)][static_cast<size_t>(x_prime)] = false;
          changed = true;
        }
      }
  }

  BisimRelation out;
  for (int x = 0; x < m.facet_count(); ++x)
    for (int y = 0; y < m_prime.facet_count(); ++y)
      if (rel[static_cast<size_t>(x)][static_cast<size_t>(y)]) out.pairs.push_back({x, y});
  return out;
}

BisimCheck check_bisimulation(const BisimRelation& r, const SimplicialModel& m,
                              const SimplicialModel& m_prime,
                              const std::vector<AtomKind>& atom_kinds) {
  const auto rel = relation_matrix(r, m, m_prime);
  std::vector<std::pair<int, int>> pairs = r.pairs;
  std::sort(pairs.begin(), pairs.end());

  for (const auto& pair : pairs) {
    const auto [x, x_prime] = pair;
    if (label_restrict(m.facet_label(x), atom_kinds) !=
        label_restrict(m_prime.facet_label(x_prime), atom_kinds))
      return {false, BisimCounterexample{1, pair, -1, -1}};
    for (int a = 0; a < m.agent_count(); ++a) {
      for (int y : neighbors_via(m, x, a))
        if (!forth_holds(rel, m_prime, x_prime, a, y))
          return {false, BisimCounterexample{2, pair, a, y}};
      for (int y_prime : neighbors_via(m_prime, x_prime, a))
        if (!back_holds(rel, m, x, a, y_prime))
          return {false, BisimCounterexample{3, pair, a, y_prime}};
    }
  }
  return {true, std::nullopt};
}

bool forth_condition_holds(const BisimRelation& r, const SimplicialModel& m,
                           const SimplicialModel& m_prime, std::pair<int, int> pair, int agent,
                           int neighbor_facet) {
  const auto rel = relation_matrix(r, m, m_prime);
  return forth_holds(rel, m_prime, pair.second, agent, neighbor_facet);
}

// --- Properties and certificates ---------------------------------------------

NoFormulaReport demonstrate_no_positive_formula(int layers, int trials, int depth,
                                                std::uint64_t seed) {
  NoFormulaReport report;
  report.layers = layers;
  report.trials = trials;
  report.depth = depth;

  const TaskSpec spec = builtin_task(Builtin::EqualityNegation);
  const SimplicialModel input = build_input_model(spec);
  const UpdateResult output = product_update(input, build_task_action_model(spec, input));
  const UpdateResult protocol = protocol_model(input, layers);

  std::vector<Atom> universe;
  for (const Vertex& v : input.vertices)
    for (const Atom& a : v.label) universe.push_back(a);
  std::sort(universe.begin(), universe.end());

  // (protocol facet, output facet) pairs above the same input facet
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < protocol.model.facet_count(); ++x)
    for (int y = 0; y < output.model.facet_count(); ++y)
      if (protocol.provenance[static_cast<size_t>(x)].first ==
          output.provenance[static_cast<size_t>(y)].first)
        pairs.push_back({x, y});

  for (int k = 0; k < trials; ++k) {
    const Formula phi = random_formula(seed + static_cast<std::uint64_t>(k), depth, universe, true);
    for (const auto& [x, y] : pairs) {
      ++report.pairs_checked;
      if (eval(output.model, y, phi) && !eval(protocol.model, x, phi)) ++report.violations;
    }
  }
  report.ok = report.violations == 0;
  return report;
}

ConnectivityCertificate connectivity_certificate(const TaskSpec& spec, int layers) {
  ConnectivityCertificate cert;
  cert.layers = layers;
  validate_task(spec);

  const SimplicialModel input = build_input_model(spec);
  const ActionModel task_actions = build_task_action_model(spec, input);
  const UpdateResult output = product_update(input, task_actions);

  auto constant = [](const std::vector<long>& tuple) {
    for (long v : tuple)
      if (v != tuple.front()) return false;
    return true;
  };

  // (a) input pairs whose allowed outputs all agree, and their protocol image
  for (size_t i = 0; i < spec.input_facets.size(); ++i) {
    bool all_const = true;
    for (const auto& out : spec.delta[i]) all_const = all_const && constant(out);
    if (all_const) cert.agreement_facets.push_back(static_cast<int>(i));
  }
  if (cert.agreement_facets.empty()) {
    cert.reason = "no admitted input pair forces the processes to agree";
    return cert;
  }
  cert.input_subgraph_connected = is_connected(input, cert.agreement_facets);
  if (!cert.input_subgraph_connected) {
    cert.reason = "the agreement-forced input subgraph is disconnected";
    return cert;
  }
  const UpdateResult protocol = protocol_model(input, layers);
  std::vector<int> protocol_subset;
  std::set<int> agreement(cert.agreement_facets.begin(), cert.agreement_facets.end());
  for (int f = 0; f < protocol.model.facet_count(); ++f)
    if (agreement.count(protocol.provenance[static_cast<size_t>(f)].first))
      protocol_subset.push_back(f);
  cert.protocol_subgraph_connected = is_connected(protocol.model, protocol_subset);
  if (!cert.protocol_subgraph_connected) {
    cert.reason = "the agreement-forced protocol subcomplex is disconnected";
    return cert;
  }

  // (b) the constant-decision part of the output model must split
  std::vector<int> same_decision;
  for (int f = 0; f < output.model.facet_count(); ++f) {
    const int action = output.provenance[static_cast<size_t>(f)].second;
    if (constant(task_actions.actions[static_cast<size_t>(action)].decisions))
      same_decision.push_back(f);
  }
  if (same_decision.empty()) {
    cert.reason = "the output model has no agreeing world";
    return cert;
  }
  std::vector<std::vector<int>> components;
  {
    std::set<int> left(same_decision.begin(), same_decision.end());
    while (!left.empty()) {
      std::vector<int> comp;
      std::queue<int> queue;
      queue.push(*left.begin());
      left.erase(left.begin());
      while (!queue.empty()) {
        int f = queue.front();
        queue.pop();
        comp.push_back(f);
        for (auto it = left.begin(); it != left.end();) {
          if (output.model.share_any_vertex(f, *it)) {
            queue.push(*it);
            it = left.erase(it);
          } else {
            ++it;
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  }
  cert.same_decision_components = static_cast<int>(components.size());
  if (cert.same_decision_components < 2) {
    cert.reason = "the agreeing part of the output model is connected";
    return cert;
  }
  cert.components_constant = true;
  for (const auto& comp : components) {
    std::set<long> values;
    for (int f : comp) {
      const int action = output.provenance[static_cast<size_t>(f)].second;
      values.insert(task_actions.actions[static_cast<size_t>(action)].decisions[0]);
    }
    if (values.size() != 1) cert.components_constant = false;
  }
  if (!cert.components_constant) {
    cert.reason = "an agreeing output component mixes decision values";
    return cert;
  }

  // (c) an admitted pair that forbids agreement, with both of its solo views
  // inside the agreement region
  std::set<int> covered;
  for (int f : cert.agreement_facets)
    for (int v : input.facets[static_cast<size_t>(f)]) covered.insert(v);
  for (size_t i = 0; i < spec.input_facets.size() && cert.clash_facet < 0; ++i) {
    bool no_const = true;
    for (const auto& out : spec.delta[i]) no_const = no_const && !constant(out);
    if (!no_const) continue;
    bool inside = true;
    for (int v : input.facets[i]) inside = inside && covered.count(v) > 0;
    if (inside) cert.clash_facet = static_cast<int>(i);
  }
  if (cert.clash_facet < 0) {
    cert.reason = "no admitted input pair forbids agreement inside the agreement region";
    return cert;
  }

  // the output worlds above the clash pair must never let both processes
  // choose the same value within one connected piece
  std::vector<int> over_clash;
  for (int f = 0; f < output.model.facet_count(); ++f)
    if (output.provenance[static_cast<size_t>(f)].first == cert.clash_facet)
      over_clash.push_back(f);
  {
    std::set<int> left(over_clash.begin(), over_clash.end());
    while (!left.empty()) {
      std::vector<int> comp;
      std::queue<int> queue;
      queue.push(*left.begin());
      left.erase(left.begin());
      while (!queue.empty()) {
        int f = queue.front();
        queue.pop();
        comp.push_back(f);
        for (auto it = left.begin(); it != left.end();) {
          if (output.model.share_any_vertex(f, *it)) {
            queue.push(*it);
            it = left.erase(it);
          } else {
            ++it;
          }
        }
      }
      std::set<std::pair<int, long>> seen;  // (agent, decision)
      for (int f : comp)
        for (int v : output.model.facets[static_cast<size_t>(f)])
          seen.insert({output.model.vertices[static_cast<size_t>(v)].color,
                       output_vertex_decision(output, task_actions, v)});
      for (const auto& [agent, d] : seen) {
        if (agent != 0) continue;
        if (seen.count({1, d})) {
          cert.reason = "an output component over the clash pair lets both processes decide " +
                        std::to_string(d);
          return cert;
        }
      }
    }
  }

  cert.applicable = true;
  cert.derivation =
      "the protocol worlds over the agreement region form one connected subcomplex, so any "
      "decision map sends them into a single fixed-decision component; both solo views of input "
      "pair " +
      std::to_string(cert.clash_facet) +
      " then carry that same decision, yet every output world over that pair gives the two "
      "processes different decisions";
  return cert;
}

}  // namespace delchk
