#pragma once

// Shared helpers for the test suites. The oracles here deliberately take a
// different route than the library: the brute-force evaluator materializes
// the full indistinguishability relation between facets, and connectivity is
// decided by transitive closure instead of search.

#include <set>
#include <utility>
#include <vector>

#include "delchk/logic.hpp"
#include "delchk/model.hpp"

namespace testsupport {

using namespace delchk;

/// Two-agent input model over agents B, W from explicit (B value, W value)
/// pairs, vertex ids in (agent, value) order, facets in the given order.
inline SimplicialModel input_model_from_pairs(const std::vector<std::pair<long, long>>& pairs) {
  SimplicialModel m;
  m.agents = {"B", "W"};
  std::set<long> b_values, w_values;
  for (auto [i, j] : pairs) {
    b_values.insert(i);
    w_values.insert(j);
  }
  std::vector<std::pair<int, long>> keyed;
  for (long v : b_values) keyed.push_back({0, v});
  for (long v : w_values) keyed.push_back({1, v});
  for (size_t id = 0; id < keyed.size(); ++id)
    m.vertices.push_back(Vertex{static_cast<int>(id), keyed[id].first,
                                {input_atom(keyed[id].first, keyed[id].second)}});
  auto vertex_id = [&](int agent, long value) {
    for (size_t id = 0; id < keyed.size(); ++id)
      if (keyed[id] == std::make_pair(agent, value)) return static_cast<int>(id);
    return -1;
  };
  for (auto [i, j] : pairs) {
    std::vector<int> facet{vertex_id(0, i), vertex_id(1, j)};
    std::sort(facet.begin(), facet.end());
    m.facets.push_back(std::move(facet));
  }
  return m;
}

/// Brute-force satisfaction: precomputes the agent relations between facets
/// as explicit matrices and recurses over them.
class KripkeOracle {
 public:
  explicit KripkeOracle(const SimplicialModel& m) : m_(m) {
    const size_t f = static_cast<size_t>(m.facet_count());
    rel_.assign(static_cast<size_t>(m.agent_count()),
                std::vector<std::vector<bool>>(f, std::vector<bool>(f, false)));
    for (int a = 0; a < m.agent_count(); ++a)
      for (int x = 0; x < m.facet_count(); ++x)
        for (int y = 0; y < m.facet_count(); ++y)
          rel_[static_cast<size_t>(a)][static_cast<size_t>(x)][static_cast<size_t>(y)] =
              m.share_agent_vertex(x, y, a);
  }

  bool eval(int facet, const Formula& phi) const {
    switch (phi.kind) {
      case FormulaKind::AtomRef:
        return label_contains(m_.facet_label(facet), phi.atom);
      case FormulaKind::Not:
        return !eval(facet, phi.children[0]);
      case FormulaKind::And:
        for (const Formula& c : phi.children)
          if (!eval(facet, c)) return false;
        return true;
      case FormulaKind::Or:
        for (const Formula& c : phi.children)
          if (eval(facet, c)) return true;
        return false;
      case FormulaKind::Implies:
        return !eval(facet, phi.children[0]) || eval(facet, phi.children[1]);
      case FormulaKind::Know: {
        const auto& row = rel_[static_cast<size_t>(phi.agents[0])][static_cast<size_t>(facet)];
        for (int y = 0; y < m_.facet_count(); ++y)
          if (row[static_cast<size_t>(y)] && !eval(y, phi.children[0])) return false;
        return true;
      }
      case FormulaKind::CommonKnow: {
        // reflexive-transitive closure of the union relation, by iteration
        const size_t f = static_cast<size_t>(m_.facet_count());
        std::vector<std::vector<bool>> closure(f, std::vector<bool>(f, false));
        for (size_t x = 0; x < f; ++x) closure[x][x] = true;
        for (int a : phi.agents)
          for (size_t x = 0; x < f; ++x)
            for (size_t y = 0; y < f; ++y)
              if (rel_[static_cast<size_t>(a)][x][y]) closure[x][y] = true;
        for (size_t k = 0; k < f; ++k)
          for (size_t x = 0; x < f; ++x)
            for (size_t y = 0; y < f; ++y)
              if (closure[x][k] && closure[k][y]) closure[x][y] = true;
        for (int y = 0; y < m_.facet_count(); ++y)
          if (closure[static_cast<size_t>(facet)][static_cast<size_t>(y)] &&
              !eval(y, phi.children[0]))
            return false;
        return true;
      }
    }
    return false;
  }

 private:
  const SimplicialModel& m_;
  std::vector<std::vector<std::vector<bool>>> rel_;
};

/// Connectivity by full transitive closure over shared-vertex adjacency.
inline bool brute_connected(const SimplicialModel& m, const std::vector<int>& subset) {
  if (subset.empty()) return true;
  const size_t n = subset.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      reach[i][j] = i == j || m.share_any_vertex(subset[i], subset[j]);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (size_t j = 0; j < n; ++j)
    if (!reach[0][j]) return false;
  return true;
}

/// Input atoms of a model, sorted.
inline std::vector<Atom> input_universe(const SimplicialModel& m) {
  std::vector<Atom> out;
  for (const Vertex& v : m.vertices)
    for (const Atom& a : v.label)
      if (a.kind == AtomKind::Input) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace testsupport
