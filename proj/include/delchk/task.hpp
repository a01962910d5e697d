#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delchk/action.hpp"
#include "delchk/model.hpp"

namespace delchk {

/// A two-process task: input domains, admitted input pairs, output domains
/// and the relation from each admitted input pair to its allowed output
/// pairs. Input tuples and output tuples are indexed by agent.
struct TaskSpec {
  std::vector<std::string> agents;
  std::vector<std::vector<long>> inputs;        // per agent, sorted unique
  std::vector<std::vector<long>> input_facets;  // admitted tuples, sorted
  std::vector<std::vector<long>> outputs;       // per agent, sorted unique
  // parallel to input_facets; each entry holds the allowed output tuples,
  // sorted, nonempty
  std::vector<std::vector<std::vector<long>>> delta;

  bool operator==(const TaskSpec&) const = default;

  /// Allowed output tuples of an admitted input tuple, or nullptr.
  const std::vector<std::vector<long>>* outputs_for(const std::vector<long>& input) const;
};

/// Throws task_error naming the first violated invariant.
void validate_task(const TaskSpec& spec);

enum class Builtin { EqualityNegation, Consensus2, Consensus3, ConstantZero, FreeChoice };

TaskSpec builtin_task(Builtin which);
std::optional<Builtin> builtin_by_name(std::string_view name);
std::vector<std::string> builtin_names();

/// One vertex per (agent, value) occurring in an admitted pair, labeled with
/// its singleton input atom; one facet per admitted pair.
SimplicialModel build_input_model(const TaskSpec& spec);

/// One action per output tuple in some delta image, indistinguishable to an
/// agent exactly when its own component agrees; pre = the admitted facets
/// allowing the tuple. Output tuples allowed nowhere are dropped.
ActionModel build_task_action_model(const TaskSpec& spec, const SimplicialModel& input_model);

struct OutputModels {
  SimplicialModel input;
  UpdateResult plain;     // I[T]
  UpdateResult extended;  // I[T] with decide atoms
};

OutputModels output_model(const TaskSpec& spec);

/// JSON task file format; see README. Rejects unknown fields; syntax errors
/// carry a position, semantic errors name the violated invariant.
TaskSpec parse_task_file(const std::string& text);
std::string serialize_task(const TaskSpec& spec);

/// Loads a builtin by name or a task file by path.
TaskSpec load_task(const std::string& name_or_path);

}  // namespace delchk
