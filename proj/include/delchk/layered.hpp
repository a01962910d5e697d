#pragma once

#include <memory>
#include <string>
#include <vector>

#include "delchk/action.hpp"
#include "delchk/model.hpp"

namespace delchk {

/// An execution word: one symbol per layer over the alphabet {lost-nothing,
/// B-lost, W-lost}, rendered `_`, `B`, `W`. `_BW` means both messages arrived
/// in layer one, B's message was lost in layer two, W's in layer three.
using LayerWord = std::string;

constexpr char kBothArrive = '_';
constexpr char kBlackLost = 'B';
constexpr char kWhiteLost = 'W';

/// All words of the given length in lexicographic order with `_` < B < W.
std::vector<LayerWord> all_words(int layers);

/// A process's full-information local state: an input value, or a pair of
/// component views where `#` marks a message that never arrived. `#` never
/// occurs as a whole view.
class View {
 public:
  static View input(long value);
  static View absent();
  static View pair(View first, View second);

  bool is_input() const;
  bool is_absent() const;
  bool is_pair() const;
  long value() const;   // input views only
  View first() const;   // pair views only
  View second() const;  // pair views only

  bool operator==(const View& other) const;
  bool operator!=(const View& other) const { return !(*this == other); }

  std::string to_text() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

/// The two-agent N-layer message-passing action model over an input model.
/// Requires agents named exactly B,W and singleton input-atom labels.
/// Actions are ordered by (input facet, word); pre(word,X) = {X}.
ActionModel build_mp(const SimplicialModel& input_model, int layers);

/// product_update(input, build_mp(input, layers)).
UpdateResult protocol_model(const SimplicialModel& input_model, int layers);

/// The recursively defined view of an agent after executing a word from an
/// input facet.
View view_of(const SimplicialModel& input_model, const LayerWord& word, int facet, int agent);

/// The protocol graph built directly from views: vertices identified by
/// (agent, view), one facet per (word, input facet).
struct ViewGraph {
  SimplicialModel model;
  std::vector<std::pair<int, int>> provenance;  // facet -> (base facet, word index)
  std::vector<LayerWord> words;                 // word index -> word
  std::vector<View> vertex_view;                // vertex -> its view
};

ViewGraph protocol_graph_from_views(const SimplicialModel& input_model, int layers);

/// Builds both routes to the protocol complex and checks that the canonical
/// map (v,E) -> (color(v), view(word, facet)) is a well-defined isomorphism.
struct ViewIsoReport {
  bool ok = false;
  std::string failure;
  UpdateResult update;          // product-update route
  ViewGraph graph;              // view route
  std::vector<int> vertex_map;  // update vertex -> graph vertex

  Morphism iso_morphism() const { return Morphism{&update.model, &graph.model, vertex_map}; }
};

ViewIsoReport check_view_isomorphism(const SimplicialModel& input_model, int layers);

/// Per-input-facet census of the protocol complex: block sizes must be 3^N
/// and each block must be a path whose endpoints are the solo-execution
/// vertices. Block facets and words are reported in path order, solo-B end
/// first.
struct CensusBlock {
  int input_facet = -1;
  int size = 0;
  bool is_path = false;
  bool endpoints_are_solo = false;
  std::vector<int> facets;       // path order
  std::vector<LayerWord> words;  // path order
};

struct Census {
  bool ok = false;
  int layers = 0;
  long expected_block_size = 0;  // 3^N
  std::vector<CensusBlock> blocks;
  std::vector<std::string> failures;
};

Census subdivision_census(const SimplicialModel& input_model, int layers);

}  // namespace delchk
