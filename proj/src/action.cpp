#include "delchk/action.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "delchk/errors.hpp"

namespace delchk {

namespace {

// Union-find over action ids.
struct Partition {
  std::vector<int> parent;
  explicit Partition(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

ActionModel make_action_model(
    int agent_count, std::vector<Action> actions, std::vector<std::vector<int>> pre,
    int base_facet_count,
    const std::function<bool(int agent, int t, int u)>& indistinguishable, bool task_payload) {
  if (actions.size() != pre.size())
    throw std::invalid_argument("make_action_model: one precondition set per action required");
  for (size_t t = 0; t < pre.size(); ++t) {
    if (pre[t].empty())
      throw std::invalid_argument("make_action_model: action " + std::to_string(t) +
                                  " can never fire (empty precondition)");
    std::sort(pre[t].begin(), pre[t].end());
    pre[t].erase(std::unique(pre[t].begin(), pre[t].end()), pre[t].end());
    for (int f : pre[t])
      if (f < 0 || f >= base_facet_count)
        throw std::invalid_argument("make_action_model: precondition facet " + std::to_string(f) +
                                    " outside the base model");
  }

  ActionModel out;
  out.agent_count = agent_count;
  out.actions = std::move(actions);
  out.pre = std::move(pre);
  out.task_payload = task_payload;

  const int n = out.action_count();
  out.class_of.assign(static_cast<size_t>(agent_count), std::vector<int>(static_cast<size_t>(n), -1));
  out.classes.assign(static_cast<size_t>(agent_count), {});
  for (int a = 0; a < agent_count; ++a) {
    Partition part(n);
    for (int t = 0; t < n; ++t)
      for (int u = t + 1; u < n; ++u)
        if (indistinguishable(a, t, u)) part.unite(t, u);
    // class index order = ascending canonical representative
    std::map<int, int> index_of_rep;
    for (int t = 0; t < n; ++t) index_of_rep.try_emplace(part.find(t), 0);
    int next = 0;
    for (auto& [rep, idx] : index_of_rep) idx = next++;
    out.classes[static_cast<size_t>(a)].assign(index_of_rep.size(), {});
    for (int t = 0; t < n; ++t) {
      int cls = index_of_rep.at(part.find(t));
      out.class_of[static_cast<size_t>(a)][static_cast<size_t>(t)] = cls;
      out.classes[static_cast<size_t>(a)][static_cast<size_t>(cls)].push_back(t);
    }
  }
  out.proper = is_proper(out);
  return out;
}

bool is_proper(const ActionModel& a) {
  // two actions with identical class vectors are indistinguishable to everyone
  std::map<std::vector<int>, int> seen;
  for (int t = 0; t < a.action_count(); ++t) {
    std::vector<int> key;
    key.reserve(static_cast<size_t>(a.agent_count));
    for (int ag = 0; ag < a.agent_count; ++ag)
      key.push_back(a.class_of[static_cast<size_t>(ag)][static_cast<size_t>(t)]);
    if (!seen.try_emplace(std::move(key), t).second) return false;
  }
  return true;
}

namespace {

UpdateResult update_impl(const SimplicialModel& m, const ActionModel& a, bool extended) {
  for (const auto& facets : a.pre)
    for (int f : facets)
      if (f < 0 || f >= m.facet_count())
        throw std::invalid_argument("product_update: precondition names facet " +
                                    std::to_string(f) + " outside the base model");

  UpdateResult out;
  out.model.agents = m.agents;

  std::map<std::pair<int, int>, int> vertex_id;  // (base vertex, class) -> new id
  auto vertex_for = [&](int base_vertex, int cls) {
    auto [it, fresh] = vertex_id.try_emplace({base_vertex, cls},
                                             static_cast<int>(vertex_id.size()));
    if (fresh) {
      const Vertex& v = m.vertices[static_cast<size_t>(base_vertex)];
      Label label = v.label;
      if (extended) {
        const int rep = a.class_rep(v.color, cls);
        if (a.task_payload)
          label_insert(label, decide_atom(v.color, a.actions[static_cast<size_t>(rep)]
                                                       .decisions[static_cast<size_t>(v.color)]));
        else
          label_insert(label, class_atom(v.color, rep));
      }
      out.model.vertices.push_back(Vertex{it->second, v.color, std::move(label)});
      out.projection.push_back(base_vertex);
      out.vertex_class.push_back({base_vertex, cls});
    }
    return it->second;
  };

  std::map<std::vector<int>, int> facet_ids;
  for (int t = 0; t < a.action_count(); ++t) {
    for (int x : a.pre[static_cast<size_t>(t)]) {
      std::vector<int> facet;
      for (int v : m.facets[static_cast<size_t>(x)]) {
        const int color = m.vertices[static_cast<size_t>(v)].color;
        facet.push_back(
            vertex_for(v, a.class_of[static_cast<size_t>(color)][static_cast<size_t>(t)]));
      }
      std::sort(facet.begin(), facet.end());
      // non-proper action models can yield the same vertex set twice; facet
      // identity is the vertex set, provenance keeps the first pair
      if (facet_ids.try_emplace(facet, out.model.facet_count()).second) {
        out.model.facets.push_back(std::move(facet));
        out.provenance.push_back({x, t});
      }
    }
  }
  if (out.model.facets.empty())
    throw empty_update_error("product update: no facet satisfies any precondition");

  if (!validate_model(out.model).empty())
    throw internal_error("product update produced an invalid model");
  // Label preservation is judged on shared atom kinds, so the check also
  // covers the extended update (class atoms are absent from the base).
  MorphismCheck check = check_morphism(out.projection_morphism(m));
  if (!check.ok)
    throw internal_error("product update projection is not a morphism: " + check.violation);
  return out;
}

}  // namespace

UpdateResult product_update(const SimplicialModel& m, const ActionModel& a) {
  return update_impl(m, a, false);
}

UpdateResult extended_product_update(const SimplicialModel& m, const ActionModel& a) {
  return update_impl(m, a, true);
}

}  // namespace delchk
