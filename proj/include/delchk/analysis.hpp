#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delchk/action.hpp"
#include "delchk/logic.hpp"
#include "delchk/model.hpp"
#include "delchk/task.hpp"

namespace delchk {

enum class SolveMethod { MapSearch, FormulaExtension };

/// Outcome of a solvability decision. A Solvable verdict carries the decision
/// map (protocol vertex -> output-model vertex) and the per-vertex decision
/// values; it is machine-checked against the morphism and commutation
/// conditions before being returned. An Unsolvable verdict records the facet
/// at the deepest search conflict.
struct Verdict {
  bool solvable = false;
  SolveMethod method = SolveMethod::MapSearch;
  int layers = 0;
  long nodes = 0;  // candidate placements explored

  std::vector<int> decision_map;  // solvable: protocol vertex -> output vertex
  std::vector<long> decisions;    // solvable: protocol vertex -> decision value

  std::optional<int> failing_facet;  // unsolvable: facet at the deepest conflict
  std::string note;
};

/// Exhaustive backtracking for a morphism delta with pi . delta = pi: each
/// protocol vertex may map only to output vertices above the same input
/// vertex, and every protocol facet must land on an output facet. Vertices
/// are visited in BFS order from the lowest-id facet, decision values
/// ascending; the first solution in that order is returned.
Verdict solve_by_map(const SimplicialModel& input_model, const ActionModel& task_actions,
                     int layers);

/// Enumeration variant of solve_by_map for small instances: the number of
/// distinct commuting decision maps, capped at `limit`.
long count_decision_maps(const SimplicialModel& input_model, const ActionModel& task_actions,
                         int layers, long limit = 1000000);

/// The task formula: one clause per admitted input pair, stating that those
/// inputs imply one of the allowed decision combinations.
Formula task_formula(const TaskSpec& spec);

/// Searches over extensions that assign one decide atom per protocol vertex,
/// with facet-local propagation; Solvable iff some extension satisfies the
/// task formula at every world. On success the induced decision map is
/// rebuilt and validated like a solve_by_map witness.
Verdict solve_by_formula(const SimplicialModel& input_model, const TaskSpec& spec, int layers);

/// Runs both deciders and compares verdicts. Disagreement falsifies the
/// implementation, not the theory; callers treat it as fatal.
struct CrossCheck {
  Verdict map_verdict;
  Verdict formula_verdict;
  bool agree = false;
  bool witnesses_valid = false;  // meaningful when solvable
};

CrossCheck cross_check(const SimplicialModel& input_model, const TaskSpec& spec, int layers);

/// First facet (in id order) where the formula is false; absent if none.
std::optional<int> find_failing_world(const SimplicialModel& m, const Formula& phi);

/// Copy of the model with decide(color(v), decisions[v]) added to each label.
SimplicialModel with_decisions(const SimplicialModel& m, const std::vector<long>& decisions);

/// A facet relation between two models; pairs are kept sorted.
struct BisimRelation {
  std::vector<std::pair<int, int>> pairs;
};

/// Greatest bisimulation whose label-equality clause compares only the given
/// atom kinds: starts from all label-equal facet pairs and deletes pairs
/// violating forth or back until the fixpoint.
BisimRelation max_bisimulation(const SimplicialModel& m, const SimplicialModel& m_prime,
                               const std::vector<AtomKind>& atom_kinds);

struct BisimCounterexample {
  int clause = 0;  // 1 = label equality, 2 = forth, 3 = back
  std::pair<int, int> pair{-1, -1};
  int agent = -1;  // clauses 2 and 3
  int facet = -1;  // the neighbor with no matching partner
};

struct BisimCheck {
  bool ok = false;
  std::optional<BisimCounterexample> counterexample;
};

/// Verifies all three bisimulation clauses, reporting the first violation in
/// (pair, clause, agent, neighbor) order.
BisimCheck check_bisimulation(const BisimRelation& r, const SimplicialModel& m,
                              const SimplicialModel& m_prime,
                              const std::vector<AtomKind>& atom_kinds);

/// Forth condition for one (pair, agent, neighbor) instance, relative to r.
bool forth_condition_holds(const BisimRelation& r, const SimplicialModel& m,
                           const SimplicialModel& m_prime, std::pair<int, int> pair, int agent,
                           int neighbor_facet);

/// Property run for the equality-negation no-formula result: for random
/// positive formulas over input atoms and every protocol/output facet pair
/// above the same input facet, truth at the output facet must imply truth at
/// the protocol facet. Any violation is an implementation bug.
struct NoFormulaReport {
  int layers = 0;
  int trials = 0;
  int depth = 0;
  long pairs_checked = 0;
  long violations = 0;
  bool ok = false;
};

NoFormulaReport demonstrate_no_positive_formula(int layers, int trials, int depth,
                                                std::uint64_t seed);

/// The connectivity-based unsolvability certificate: (a) the subcomplex of
/// protocol worlds whose inputs force agreement is connected, (b) the
/// constant-decision part of the output model splits into two or more
/// components of fixed decision, (c) some admitted input pair forbids
/// agreement although its solo views are shared with the agreement region.
/// Not applicable when any premise fails; when applicable the task is
/// unsolvable and the certificate must agree with the general deciders.
struct ConnectivityCertificate {
  bool applicable = false;
  std::string reason;  // failing premise, empty when applicable
  int layers = 0;
  std::vector<int> agreement_facets;  // input facets whose outputs all agree
  bool input_subgraph_connected = false;
  bool protocol_subgraph_connected = false;
  int same_decision_components = 0;
  bool components_constant = false;
  int clash_facet = -1;  // admitted facet with no agreeing output
  std::string derivation;
};

ConnectivityCertificate connectivity_certificate(const TaskSpec& spec, int layers);

}  // namespace delchk
