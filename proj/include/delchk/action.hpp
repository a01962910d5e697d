#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "delchk/model.hpp"

namespace delchk {

/// One action of an action model. Task actions carry a per-agent decision
/// vector; message-passing actions carry a layer word and a generating input
/// facet. Payload kind is homogeneous within one model.
struct Action {
  std::string label;
  std::vector<long> decisions;  // task payload; empty otherwise
  std::string word;             // MP payload, rendered over `_BW`
  int base_facet = -1;          // MP payload
};

/// An action model: actions, per-agent indistinguishability partitions and
/// extensional preconditions (the facets of a declared base model where each
/// action fires). Every action's precondition set is nonempty.
struct ActionModel {
  int agent_count = 0;
  std::vector<Action> actions;
  std::vector<std::vector<int>> pre;                   // per action, sorted facet ids
  std::vector<std::vector<int>> class_of;              // [agent][action] -> class index
  std::vector<std::vector<std::vector<int>>> classes;  // [agent][class] -> sorted action ids
  bool task_payload = false;
  bool proper = false;  // computed at build time

  int action_count() const { return static_cast<int>(actions.size()); }
  /// Canonical name of a class: the smallest action id it contains.
  int class_rep(int agent, int cls) const { return classes[agent][cls].front(); }
};

/// Builds partitions from a pairwise indistinguishability predicate (must be
/// an equivalence on actions). Classes are indexed by ascending canonical
/// representative. Rejects empty preconditions and out-of-range facet ids.
ActionModel make_action_model(
    int agent_count, std::vector<Action> actions, std::vector<std::vector<int>> pre,
    int base_facet_count,
    const std::function<bool(int agent, int t, int u)>& indistinguishable, bool task_payload);

/// True iff any two distinct actions are distinguished by some agent.
bool is_proper(const ActionModel& a);

/// A product update result: the new model, the projection onto the base
/// model, and the provenance of every facet and vertex.
struct UpdateResult {
  SimplicialModel model;
  std::vector<int> projection;                    // vertex -> base vertex id
  std::vector<std::pair<int, int>> provenance;    // facet -> (base facet, action)
  std::vector<std::pair<int, int>> vertex_class;  // vertex -> (base vertex, class index)

  Morphism projection_morphism(const SimplicialModel& base) const {
    return Morphism{&model, &base, projection};
  }
};

/// Product update: facets are the pairs (X,t) with X in pre(t); the vertex of
/// color p in facet (X,t) is (v_p(X), class of t under ~_p); labels are copied
/// from the base. Facets are ordered by (action id, base facet id). Throws
/// empty_update_error when no precondition fires.
UpdateResult product_update(const SimplicialModel& m, const ActionModel& a);

/// Same complex as product_update, but every vertex additionally carries its
/// class atom: decide(p,d) for task action models, class(p,rep) otherwise.
UpdateResult extended_product_update(const SimplicialModel& m, const ActionModel& a);

}  // namespace delchk
