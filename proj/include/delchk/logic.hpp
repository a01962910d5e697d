#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "delchk/model.hpp"

namespace delchk {

enum class FormulaKind { AtomRef, Not, And, Or, Implies, Know, CommonKnow };

/// Epistemic formula over typed atoms. And/Or hold one or more children,
/// Implies exactly two, Know/CommonKnow one. Know names a single agent,
/// CommonKnow a nonempty sorted group.
struct Formula {
  FormulaKind kind = FormulaKind::AtomRef;
  Atom atom{AtomKind::Input, 0, 0};  // AtomRef only
  std::vector<Formula> children;
  std::vector<int> agents;  // Know: one id; CommonKnow: sorted group

  bool operator==(const Formula&) const = default;
};

namespace fml {
Formula atom(Atom a);
Formula neg(Formula f);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula implies(Formula lhs, Formula rhs);
Formula know(int agent, Formula f);
Formula common(std::vector<int> agents, Formula f);
}  // namespace fml

/// Satisfaction at a facet. Know(a,phi) quantifies over every facet sharing
/// the a-colored vertex with X; CommonKnow(G,phi) over every facet reachable
/// from X through chains of shared-vertex steps colored by agents in G.
/// Atoms absent from the model's universe evaluate false.
/// Throws std::out_of_range for an unknown facet.
bool eval(const SimplicialModel& m, int facet, const Formula& phi);

/// Positive iff negations appear only directly above atoms and the formula
/// contains no Implies node (an implication hides a negation).
enum class Positivity { Positive, NotPositive };
Positivity is_positive(const Formula& phi);

/// Deterministic in the seed; positive by construction when requested;
/// depth bounded by max_depth >= 1. Throws std::invalid_argument on an
/// empty atom universe.
Formula random_formula(std::uint64_t seed, int max_depth,
                       const std::vector<Atom>& atom_universe, bool positive_only);

/// Surface syntax: `input(B,2)`, `decide(W,1)`, `class(B,0)`, `!`, `&`, `|`,
/// `->`, `K[B] phi`, `C[B,W] phi`, parentheses. Precedence, loosest first:
/// `->` (right-assoc), `|`, `&`, then `!`/`K`/`C`.
std::string to_text(const Formula& phi, const std::vector<std::string>& agents);
Formula parse_formula(std::string_view text, const std::vector<std::string>& agents);

}  // namespace delchk
