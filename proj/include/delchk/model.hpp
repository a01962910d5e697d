#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "delchk/errors.hpp"

namespace delchk {

/// Kinds of atomic propositions. Input atoms state a process's private input
/// value, Decide atoms its chosen output value, ActionClass atoms the
/// equivalence class of the action it witnessed.
enum class AtomKind { Input, Decide, ActionClass };

struct Atom {
  AtomKind kind;
  int agent;   // agent id within the owning model's agent list
  long value;  // input/decide value, or canonical class id

  auto operator<=>(const Atom&) const = default;
};

Atom input_atom(int agent, long value);
Atom decide_atom(int agent, long value);
Atom class_atom(int agent, long class_id);

/// A vertex label: a sorted, duplicate-free set of atoms, all concerning the
/// vertex's own agent.
using Label = std::vector<Atom>;

void label_insert(Label& label, const Atom& atom);
bool label_contains(const Label& label, const Atom& atom);
Label label_restrict(const Label& label, const std::vector<AtomKind>& kinds);

struct Vertex {
  int id;     // dense, assigned in construction order
  int color;  // agent id
  Label label;
};

/// A pure chromatic labeled simplicial model. Only facets are stored; lower
/// faces are implicit. Models are immutable after construction and safe to
/// read concurrently.
struct SimplicialModel {
  std::vector<std::string> agents;       // display names; agent id = index
  std::vector<Vertex> vertices;          // vertex id = index
  std::vector<std::vector<int>> facets;  // sorted vertex ids, duplicate-free

  int agent_count() const { return static_cast<int>(agents.size()); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int facet_count() const { return static_cast<int>(facets.size()); }

  /// Id of the named agent, or -1.
  int agent_id(std::string_view name) const;

  /// The vertex of the given color in a facet, or -1 if absent.
  int vertex_of(int facet, int agent) const;

  /// Union of the labels of a facet's vertices, sorted.
  Label facet_label(int facet) const;

  /// True iff the two facets share their agent-colored vertex.
  bool share_agent_vertex(int facet_a, int facet_b, int agent) const;

  /// True iff the two facets share at least one vertex.
  bool share_any_vertex(int facet_a, int facet_b) const;
};

struct Diagnostic {
  enum class Code {
    Purity,        // facet dimension differs from |Ag|-1
    Chromatic,     // repeated color within a facet
    UnusedVertex,  // vertex in no facet
    DuplicateFacet,
    ForeignAtom,   // label atom concerning another agent
    BadVertexRef,  // facet names a vertex id out of range
    BadColor,      // vertex color out of range
  };
  Code code;
  int index;  // offending facet id, or vertex id for vertex diagnostics
  std::string message;
};

/// Checks every structural invariant; empty result means the model is valid.
std::vector<Diagnostic> validate_model(const SimplicialModel& m);

/// All facets Y (including X itself) sharing the agent's vertex with X.
/// Throws std::out_of_range for an unknown facet.
std::vector<int> neighbors_via(const SimplicialModel& m, int facet, int agent);

/// Connectivity of the sub-hypergraph on the given facets under
/// shared-vertex adjacency. The empty subset counts as connected.
bool is_connected(const SimplicialModel& m, const std::vector<int>& facet_subset);

/// A color- and label-preserving simplicial map between two models. Label
/// preservation is judged on the atom kinds both models carry.
struct Morphism {
  const SimplicialModel* source = nullptr;
  const SimplicialModel* target = nullptr;
  std::vector<int> vertex_map;  // total on source vertices
};

struct MorphismCheck {
  bool ok = false;
  std::string violation;  // first failing vertex or facet, empty when ok
};

MorphismCheck check_morphism(const Morphism& f);

/// g after f; requires f.target == g.source.
Morphism compose(const Morphism& g, const Morphism& f);

/// The atom kinds occurring in any vertex label of the model.
std::vector<AtomKind> atom_kinds_of(const SimplicialModel& m);

struct Subcomplex {
  SimplicialModel model;
  std::vector<int> facet_origin;   // new facet id -> old facet id
  std::vector<int> vertex_origin;  // new vertex id -> old vertex id
};

/// Model containing exactly the kept facets and their vertices. Throws
/// empty_complex_error when nothing is kept.
Subcomplex induced_subcomplex(const SimplicialModel& m,
                              const std::function<bool(int)>& keep_facet);

/// Rendering: `input(B,2)`, `decide(W,0)`, `class(B,3)`.
std::string atom_text(const Atom& atom, const std::vector<std::string>& agents);

/// Canonical textual form: one line per facet, each facet rendered as its
/// vertices in agent-name order, lines sorted lexicographically.
std::string canonical_text(const SimplicialModel& m);

}  // namespace delchk
