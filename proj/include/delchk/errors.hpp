#pragma once

#include <stdexcept>
#include <string>

namespace delchk {

/// Result of restricting to zero facets; the complexes handled here are
/// nonempty by construction.
struct empty_complex_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Product update with no (world, action) pair satisfying a precondition.
struct empty_update_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in a task file or formula, with a position.
struct parse_error : std::runtime_error {
  int line;
  int column;
  parse_error(const std::string& what, int line_, int column_)
      : std::runtime_error(what), line(line_), column(column_) {}
};

/// Semantic violation in a task specification; the message names the
/// violated invariant.
struct task_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Internal invariant violation (a bug in this library, not in the input).
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace delchk
