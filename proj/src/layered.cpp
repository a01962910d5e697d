#include "delchk/layered.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "delchk/errors.hpp"

namespace delchk {

namespace {

constexpr char kAlphabet[3] = {kBothArrive, kBlackLost, kWhiteLost};

long pow3(int n) {
  long out = 1;
  for (int i = 0; i < n; ++i) out *= 3;
  return out;
}

void require_mp_input(const SimplicialModel& m) {
  if (m.agents != std::vector<std::string>{"B", "W"})
    throw std::invalid_argument("layered model: input model must have exactly the agents B, W");
  for (const Vertex& v : m.vertices)
    if (v.label.size() != 1 || v.label[0].kind != AtomKind::Input)
      throw std::invalid_argument("layered model: vertex " + std::to_string(v.id) +
                                  " must carry a singleton input atom");
}

long input_value(const SimplicialModel& m, int facet, int agent) {
  const int v = m.vertex_of(facet, agent);
  if (v < 0) throw internal_error("input facet lacks an agent vertex");
  return m.vertices[static_cast<size_t>(v)].label[0].value;
}

// (word1,facet1) ~_agent (word2,facet2), by induction on the word length.
// A layer symbol is opaque to an agent when it lost the other's message.
bool mp_indistinguishable(const SimplicialModel& m, int agent, const LayerWord& w1, int f1,
                          const LayerWord& w2, int f2) {
  if (w1.empty()) return input_value(m, f1, agent) == input_value(m, f2, agent);
  const char opaque = agent == 0 ? kWhiteLost : kBlackLost;
  const char p = w1.back();
  const char q = w2.back();
  const LayerWord p1 = w1.substr(0, w1.size() - 1);
  const LayerWord p2 = w2.substr(0, w2.size() - 1);
  if (p == opaque && q == opaque) return mp_indistinguishable(m, agent, p1, f1, p2, f2);
  if (p != opaque && q != opaque) return f1 == f2 && p1 == p2;
  return false;
}

}  // namespace

std::vector<LayerWord> all_words(int layers) {
  std::vector<LayerWord> out{""};
  for (int i = 0; i < layers; ++i) {
    std::vector<LayerWord> next;
    next.reserve(out.size() * 3);
    for (const LayerWord& w : out)
      for (char c : kAlphabet) next.push_back(w + c);
    out = std::move(next);
  }
  return out;
}

// --- View ------------------------------------------------------------------

struct View::Node {
  enum class Kind { Value, Absent, Pair } kind;
  long value = 0;
  std::shared_ptr<const Node> first, second;
};

View View::input(long value) {
  View v;
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Value;
  node->value = value;
  v.node_ = std::move(node);
  return v;
}

View View::absent() {
  View v;
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Absent;
  v.node_ = std::move(node);
  return v;
}

View View::pair(View first, View second) {
  View v;
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Pair;
  node->first = first.node_;
  node->second = second.node_;
  v.node_ = std::move(node);
  return v;
}

bool View::is_input() const { return node_->kind == Node::Kind::Value; }
bool View::is_absent() const { return node_->kind == Node::Kind::Absent; }
bool View::is_pair() const { return node_->kind == Node::Kind::Pair; }

long View::value() const {
  if (!is_input()) throw internal_error("View::value on a non-value view");
  return node_->value;
}

View View::first() const {
  if (!is_pair()) throw internal_error("View::first on a non-pair view");
  View v;
  v.node_ = node_->first;
  return v;
}

View View::second() const {
  if (!is_pair()) throw internal_error("View::second on a non-pair view");
  View v;
  v.node_ = node_->second;
  return v;
}

bool View::operator==(const View& other) const {
  const Node* a = node_.get();
  const Node* b = other.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Node::Kind::Value: return a->value == b->value;
    case Node::Kind::Absent: return true;
    case Node::Kind::Pair: return first() == other.first() && second() == other.second();
  }
  return false;
}

std::string View::to_text() const {
  switch (node_->kind) {
    case Node::Kind::Value: return std::to_string(node_->value);
    case Node::Kind::Absent: return "#";
    case Node::Kind::Pair: return "(" + first().to_text() + "," + second().to_text() + ")";
  }
  return "?";
}

// --- Builders ----------------------------------------------------------------

ActionModel build_mp(const SimplicialModel& input_model, int layers) {
  if (layers < 0) throw std::invalid_argument("build_mp: layer count must be >= 0");
  require_mp_input(input_model);
  const std::vector<LayerWord> words = all_words(layers);

  std::vector<Action> actions;
  std::vector<std::vector<int>> pre;
  std::vector<std::pair<LayerWord, int>> key;  // action id -> (word, input facet)
  for (int f = 0; f < input_model.facet_count(); ++f)
    for (const LayerWord& w : words) {
      Action act;
      act.label = "(" + w + "|" + std::to_string(f) + ")";
      act.word = w;
      act.base_facet = f;
      actions.push_back(std::move(act));
      pre.push_back({f});
      key.push_back({w, f});
    }

  return make_action_model(
      2, std::move(actions), std::move(pre), input_model.facet_count(),
      [&input_model, &key](int agent, int t, int u) {
        const auto& [wt, ft] = key[static_cast<size_t>(t)];
        const auto& [wu, fu] = key[static_cast<size_t>(u)];
        return mp_indistinguishable(input_model, agent, wt, ft, wu, fu);
      },
      false);
}

UpdateResult protocol_model(const SimplicialModel& input_model, int layers) {
  const ActionModel mp = build_mp(input_model, layers);
  UpdateResult out = product_update(input_model, mp);
  if (out.model.facet_count() != mp.action_count())
    throw internal_error("protocol model facet count differs from the action count");
  return out;
}

View view_of(const SimplicialModel& input_model, const LayerWord& word, int facet, int agent) {
  if (word.empty()) return View::input(input_value(input_model, facet, agent));
  const LayerWord prefix = word.substr(0, word.size() - 1);
  const View vb = view_of(input_model, prefix, facet, 0);
  const View vw = view_of(input_model, prefix, facet, 1);
  switch (word.back()) {
    case kBlackLost:  // W did not hear from B
      return agent == 0 ? View::pair(vb, vw) : View::pair(View::absent(), vw);
    case kWhiteLost:  // B did not hear from W
      return agent == 0 ? View::pair(vb, View::absent()) : View::pair(vb, vw);
    case kBothArrive:
      return View::pair(vb, vw);
    default:
      throw std::invalid_argument("view_of: bad layer symbol in word " + word);
  }
}

ViewGraph protocol_graph_from_views(const SimplicialModel& input_model, int layers) {
  require_mp_input(input_model);
  ViewGraph out;
  out.model.agents = input_model.agents;
  out.words = all_words(layers);

  std::map<std::pair<int, std::string>, int> vertex_id;  // (agent, view text) -> id
  auto vertex_for = [&](int agent, const View& view, long input) {
    auto [it, fresh] =
        vertex_id.try_emplace({agent, view.to_text()}, static_cast<int>(vertex_id.size()));
    if (fresh) {
      out.model.vertices.push_back(Vertex{it->second, agent, {input_atom(agent, input)}});
      out.vertex_view.push_back(view);
    } else if (!label_contains(out.model.vertices[static_cast<size_t>(it->second)].label,
                               input_atom(agent, input))) {
      throw internal_error("equal views with different input values");
    }
    return it->second;
  };

  std::set<std::vector<int>> seen;
  for (int f = 0; f < input_model.facet_count(); ++f)
    for (int wi = 0; wi < static_cast<int>(out.words.size()); ++wi) {
      const LayerWord& w = out.words[static_cast<size_t>(wi)];
      const int b = vertex_for(0, view_of(input_model, w, f, 0), input_value(input_model, f, 0));
      const int v = vertex_for(1, view_of(input_model, w, f, 1), input_value(input_model, f, 1));
      std::vector<int> facet{std::min(b, v), std::max(b, v)};
      if (!seen.insert(facet).second)
        throw internal_error("distinct executions produced identical view pairs");
      out.model.facets.push_back(std::move(facet));
      out.provenance.push_back({f, wi});
    }
  if (!validate_model(out.model).empty())
    throw internal_error("view graph failed model validation");
  return out;
}

ViewIsoReport check_view_isomorphism(const SimplicialModel& input_model, int layers) {
  ViewIsoReport report;
  const ActionModel mp = build_mp(input_model, layers);
  report.update = product_update(input_model, mp);
  report.graph = protocol_graph_from_views(input_model, layers);

  std::map<std::pair<int, std::string>, int> graph_vertex;
  for (const Vertex& v : report.graph.model.vertices)
    graph_vertex[{v.color, report.graph.vertex_view[static_cast<size_t>(v.id)].to_text()}] = v.id;

  report.vertex_map.assign(static_cast<size_t>(report.update.model.vertex_count()), -1);
  for (const Vertex& u : report.update.model.vertices) {
    const auto [base_vertex, cls] = report.update.vertex_class[static_cast<size_t>(u.id)];
    (void)base_vertex;
    std::string view_text;
    for (int t : mp.classes[static_cast<size_t>(u.color)][static_cast<size_t>(cls)]) {
      const Action& act = mp.actions[static_cast<size_t>(t)];
      const std::string txt =
          view_of(input_model, act.word, act.base_facet, u.color).to_text();
      if (view_text.empty()) {
        view_text = txt;
      } else if (view_text != txt) {
        report.failure = "vertex " + std::to_string(u.id) +
                         ": indistinguishable executions with different views";
        return report;
      }
    }
    auto it = graph_vertex.find({u.color, view_text});
    if (it == graph_vertex.end()) {
      report.failure = "vertex " + std::to_string(u.id) + ": view " + view_text +
                       " missing from the protocol graph";
      return report;
    }
    report.vertex_map[static_cast<size_t>(u.id)] = it->second;
  }

  std::set<int> image(report.vertex_map.begin(), report.vertex_map.end());
  if (image.size() != report.vertex_map.size()) {
    report.failure = "canonical map is not injective on vertices";
    return report;
  }
  if (static_cast<int>(image.size()) != report.graph.model.vertex_count()) {
    report.failure = "canonical map is not surjective on vertices";
    return report;
  }

  const MorphismCheck mc = check_morphism(report.iso_morphism());
  if (!mc.ok) {
    report.failure = mc.violation;
    return report;
  }

  std::set<std::vector<int>> graph_facets(report.graph.model.facets.begin(),
                                          report.graph.model.facets.end());
  std::set<std::vector<int>> image_facets;
  for (const auto& facet : report.update.model.facets) {
    std::vector<int> mapped;
    for (int v : facet) mapped.push_back(report.vertex_map[static_cast<size_t>(v)]);
    std::sort(mapped.begin(), mapped.end());
    image_facets.insert(std::move(mapped));
  }
  if (image_facets != graph_facets) {
    report.failure = "facet images do not coincide with the protocol graph facets";
    return report;
  }

  report.ok = true;
  return report;
}

Census subdivision_census(const SimplicialModel& input_model, int layers) {
  Census census;
  census.layers = layers;
  census.expected_block_size = pow3(layers);

  const ActionModel mp = build_mp(input_model, layers);
  const UpdateResult update = product_update(input_model, mp);
  const SimplicialModel& p = update.model;

  // provenance (input facet, action) -> protocol facet
  std::map<std::pair<int, int>, int> facet_of;
  std::vector<std::vector<int>> block(static_cast<size_t>(input_model.facet_count()));
  for (int f = 0; f < p.facet_count(); ++f) {
    const auto [x, t] = update.provenance[static_cast<size_t>(f)];
    facet_of[{x, t}] = f;
    block[static_cast<size_t>(x)].push_back(f);
  }

  const LayerWord solo_b_word(static_cast<size_t>(layers), kWhiteLost);  // B hears nothing
  const LayerWord solo_w_word(static_cast<size_t>(layers), kBlackLost);  // W hears nothing
  auto action_of = [&](int base, const LayerWord& w) {
    for (int t = 0; t < mp.action_count(); ++t)
      if (mp.actions[static_cast<size_t>(t)].base_facet == base &&
          mp.actions[static_cast<size_t>(t)].word == w)
        return t;
    throw internal_error("census: execution not found");
  };

  census.ok = true;
  for (int sigma = 0; sigma < input_model.facet_count(); ++sigma) {
    CensusBlock cb;
    cb.input_facet = sigma;
    const std::vector<int>& facets = block[static_cast<size_t>(sigma)];
    cb.size = static_cast<int>(facets.size());
    if (cb.size != census.expected_block_size) {
      census.failures.push_back("block " + std::to_string(sigma) + " has size " +
                                std::to_string(cb.size));
      census.ok = false;
    }

    // within-block facet adjacency
    std::map<int, std::vector<int>> adj;
    for (int f : facets) adj[f];
    for (size_t i = 0; i < facets.size(); ++i)
      for (size_t j = i + 1; j < facets.size(); ++j)
        if (p.share_any_vertex(facets[i], facets[j])) {
          adj[facets[i]].push_back(facets[j]);
          adj[facets[j]].push_back(facets[i]);
        }
    int degree_one = 0;
    bool degrees_ok = true;
    for (auto& [f, ns] : adj) {
      if (ns.size() > 2) degrees_ok = false;
      if (ns.size() == 1) ++degree_one;
    }
    const int solo_b_facet = facet_of.at({sigma, action_of(sigma, solo_b_word)});
    const int solo_w_facet = facet_of.at({sigma, action_of(sigma, solo_w_word)});

    std::vector<int> subset(facets.begin(), facets.end());
    const bool connected = [&] {
      // connectivity within the block only: walk the block adjacency
      std::set<int> seen{subset.front()};
      std::vector<int> stack{subset.front()};
      while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int g : adj[f])
          if (seen.insert(g).second) stack.push_back(g);
      }
      return seen.size() == subset.size();
    }();

    cb.is_path = degrees_ok && connected &&
                 (layers == 0 ? cb.size == 1 && degree_one == 0 : degree_one == 2);

    if (layers == 0) {
      cb.endpoints_are_solo = true;
      cb.facets = facets;
      cb.words = {""};
    } else if (cb.is_path) {
      cb.endpoints_are_solo =
          adj[solo_b_facet].size() == 1 && adj[solo_w_facet].size() == 1 &&
          solo_b_facet != solo_w_facet;
      // walk from the solo-B end
      int prev = -1;
      int cur = solo_b_facet;
      while (true) {
        cb.facets.push_back(cur);
        cb.words.push_back(
            mp.actions[static_cast<size_t>(update.provenance[static_cast<size_t>(cur)].second)]
                .word);
        int next = -1;
        for (int g : adj[cur])
          if (g != prev) next = g;
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
      if (static_cast<int>(cb.facets.size()) != cb.size) {
        cb.is_path = false;
        census.failures.push_back("block " + std::to_string(sigma) + " walk did not cover it");
      }
    }

    if (!cb.is_path) {
      census.failures.push_back("block " + std::to_string(sigma) + " is not a path");
      census.ok = false;
    } else if (!cb.endpoints_are_solo) {
      census.failures.push_back("block " + std::to_string(sigma) +
                                " endpoints are not the solo executions");
      census.ok = false;
    }
    census.blocks.push_back(std::move(cb));
  }
  return census;
}

}  // namespace delchk
