#include "delchk/model.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace delchk {

Atom input_atom(int agent, long value) { return Atom{AtomKind::Input, agent, value}; }
Atom decide_atom(int agent, long value) { return Atom{AtomKind::Decide, agent, value}; }
Atom class_atom(int agent, long class_id) { return Atom{AtomKind::ActionClass, agent, class_id}; }

void label_insert(Label& label, const Atom& atom) {
  auto it = std::lower_bound(label.begin(), label.end(), atom);
  if (it == label.end() || *it != atom) label.insert(it, atom);
}

bool label_contains(const Label& label, const Atom& atom) {
  return std::binary_search(label.begin(), label.end(), atom);
}

Label label_restrict(const Label& label, const std::vector<AtomKind>& kinds) {
  Label out;
  for (const Atom& a : label)
    if (std::find(kinds.begin(), kinds.end(), a.kind) != kinds.end()) out.push_back(a);
  return out;
}

int SimplicialModel::agent_id(std::string_view name) const {
  for (int i = 0; i < agent_count(); ++i)
    if (agents[i] == name) return i;
  return -1;
}

int SimplicialModel::vertex_of(int facet, int agent) const {
  for (int v : facets.at(facet))
    if (vertices[v].color == agent) return v;
  return -1;
}

Label SimplicialModel::facet_label(int facet) const {
  Label out;
  for (int v : facets.at(facet))
    for (const Atom& a : vertices[v].label) label_insert(out, a);
  return out;
}

bool SimplicialModel::share_agent_vertex(int facet_a, int facet_b, int agent) const {
  int va = vertex_of(facet_a, agent);
  return va >= 0 && va == vertex_of(facet_b, agent);
}

bool SimplicialModel::share_any_vertex(int facet_a, int facet_b) const {
  const auto& fa = facets.at(facet_a);
  const auto& fb = facets.at(facet_b);
  for (int v : fa)
    if (std::binary_search(fb.begin(), fb.end(), v)) return true;
  return false;
}

std::vector<Diagnostic> validate_model(const SimplicialModel& m) {
  std::vector<Diagnostic> out;
  const int n_agents = m.agent_count();
  const int n_vertices = m.vertex_count();

  for (const Vertex& v : m.vertices) {
    if (v.color < 0 || v.color >= n_agents) {
      out.push_back({Diagnostic::Code::BadColor, v.id,
                     "vertex " + std::to_string(v.id) + " has color outside the agent list"});
      continue;
    }
    for (const Atom& a : v.label)
      if (a.agent != v.color)
        out.push_back({Diagnostic::Code::ForeignAtom, v.id,
                       "vertex " + std::to_string(v.id) + " labeled with an atom of agent " +
                           std::to_string(a.agent)});
  }

  std::set<std::vector<int>> seen;
  std::vector<bool> used(static_cast<size_t>(n_vertices), false);
  for (int f = 0; f < m.facet_count(); ++f) {
    const auto& facet = m.facets[f];
    bool refs_ok = true;
    for (int v : facet) {
      if (v < 0 || v >= n_vertices) {
        out.push_back({Diagnostic::Code::BadVertexRef, f,
                       "facet " + std::to_string(f) + " references unknown vertex " +
                           std::to_string(v)});
        refs_ok = false;
      } else {
        used[static_cast<size_t>(v)] = true;
      }
    }
    if (!refs_ok) continue;
    if (static_cast<int>(facet.size()) != n_agents)
      out.push_back({Diagnostic::Code::Purity, f,
                     "facet " + std::to_string(f) + " has " + std::to_string(facet.size()) +
                         " vertices, expected " + std::to_string(n_agents)});
    std::set<int> colors;
    for (int v : facet) colors.insert(m.vertices[v].color);
    if (colors.size() != facet.size())
      out.push_back({Diagnostic::Code::Chromatic, f,
                     "facet " + std::to_string(f) + " repeats an agent color"});
    if (!seen.insert(facet).second)
      out.push_back({Diagnostic::Code::DuplicateFacet, f,
                     "facet " + std::to_string(f) + " duplicates an earlier facet"});
  }
  for (int v = 0; v < n_vertices; ++v)
    if (!used[static_cast<size_t>(v)])
      out.push_back({Diagnostic::Code::UnusedVertex, v,
                     "vertex " + std::to_string(v) + " belongs to no facet"});
  return out;
}

std::vector<int> neighbors_via(const SimplicialModel& m, int facet, int agent) {
  if (facet < 0 || facet >= m.facet_count())
    throw std::out_of_range("neighbors_via: unknown facet " + std::to_string(facet));
  if (agent < 0 || agent >= m.agent_count())
    throw std::out_of_range("neighbors_via: unknown agent " + std::to_string(agent));
  std::vector<int> out;
  int v = m.vertex_of(facet, agent);
  if (v < 0) return out;
  for (int g = 0; g < m.facet_count(); ++g)
    if (m.vertex_of(g, agent) == v) out.push_back(g);
  return out;
}

bool is_connected(const SimplicialModel& m, const std::vector<int>& facet_subset) {
  if (facet_subset.empty()) return true;  // vacuously connected
  std::set<int> want(facet_subset.begin(), facet_subset.end());
  for (int f : want)
    if (f < 0 || f >= m.facet_count())
      throw std::out_of_range("is_connected: unknown facet " + std::to_string(f));
  std::set<int> seen;
  std::queue<int> queue;
  queue.push(*want.begin());
  seen.insert(*want.begin());
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    for (int g : want)
      if (!seen.count(g) && m.share_any_vertex(f, g)) {
        seen.insert(g);
        queue.push(g);
      }
  }
  return seen.size() == want.size();
}

MorphismCheck check_morphism(const Morphism& f) {
  const SimplicialModel& src = *f.source;
  const SimplicialModel& dst = *f.target;
  if (f.vertex_map.size() != static_cast<size_t>(src.vertex_count()))
    return {false, "vertex map is not total on source vertices"};

  const std::vector<AtomKind> shared = [&] {
    std::vector<AtomKind> out;
    for (AtomKind k : atom_kinds_of(src)) {
      auto dk = atom_kinds_of(dst);
      if (std::find(dk.begin(), dk.end(), k) != dk.end()) out.push_back(k);
    }
    return out;
  }();

  for (const Vertex& v : src.vertices) {
    int w = f.vertex_map[static_cast<size_t>(v.id)];
    if (w < 0 || w >= dst.vertex_count())
      return {false, "vertex " + std::to_string(v.id) + " maps outside the target"};
    if (dst.vertices[w].color != v.color)
      return {false, "color violation at vertex " + std::to_string(v.id)};
    if (label_restrict(dst.vertices[w].label, shared) != label_restrict(v.label, shared))
      return {false, "label violation at vertex " + std::to_string(v.id)};
  }

  std::set<std::vector<int>> target_facets(dst.facets.begin(), dst.facets.end());
  for (int x = 0; x < src.facet_count(); ++x) {
    std::vector<int> image;
    for (int v : src.facets[x]) image.push_back(f.vertex_map[static_cast<size_t>(v)]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (!target_facets.count(image))
      return {false, "facet violation at facet " + std::to_string(x)};
  }
  return {true, ""};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target != g.source) throw internal_error("compose: morphisms do not chain");
  Morphism out{f.source, g.target, {}};
  out.vertex_map.reserve(f.vertex_map.size());
  for (int v : f.vertex_map) out.vertex_map.push_back(g.vertex_map.at(static_cast<size_t>(v)));
  return out;
}

std::vector<AtomKind> atom_kinds_of(const SimplicialModel& m) {
  bool has[3] = {false, false, false};
  for (const Vertex& v : m.vertices)
    for (const Atom& a : v.label) has[static_cast<int>(a.kind)] = true;
  std::vector<AtomKind> out;
  for (AtomKind k : {AtomKind::Input, AtomKind::Decide, AtomKind::ActionClass})
    if (has[static_cast<int>(k)]) out.push_back(k);
  return out;
}

Subcomplex induced_subcomplex(const SimplicialModel& m,
                              const std::function<bool(int)>& keep_facet) {
  Subcomplex out;
  out.model.agents = m.agents;
  std::map<int, int> new_id;
  for (int f = 0; f < m.facet_count(); ++f) {
    if (!keep_facet(f)) continue;
    std::vector<int> facet;
    for (int v : m.facets[f]) {
      auto [it, fresh] = new_id.try_emplace(v, static_cast<int>(new_id.size()));
      if (fresh) {
        out.model.vertices.push_back(
            Vertex{it->second, m.vertices[v].color, m.vertices[v].label});
        out.vertex_origin.push_back(v);
      }
      facet.push_back(it->second);
    }
    std::sort(facet.begin(), facet.end());
    out.model.facets.push_back(std::move(facet));
    out.facet_origin.push_back(f);
  }
  if (out.model.facets.empty()) throw empty_complex_error("induced subcomplex is empty");
  return out;
}

std::string atom_text(const Atom& atom, const std::vector<std::string>& agents) {
  const std::string name = atom.agent >= 0 && atom.agent < static_cast<int>(agents.size())
                               ? agents[static_cast<size_t>(atom.agent)]
                               : "?" + std::to_string(atom.agent);
  switch (atom.kind) {
    case AtomKind::Input: return "input(" + name + "," + std::to_string(atom.value) + ")";
    case AtomKind::Decide: return "decide(" + name + "," + std::to_string(atom.value) + ")";
    case AtomKind::ActionClass: return "class(" + name + "," + std::to_string(atom.value) + ")";
  }
  return "?";
}

std::string canonical_text(const SimplicialModel& m) {
  std::vector<std::string> lines;
  for (const auto& facet : m.facets) {
    std::vector<int> by_name(facet.begin(), facet.end());
    std::sort(by_name.begin(), by_name.end(), [&](int a, int b) {
      return m.agents[static_cast<size_t>(m.vertices[a].color)] <
             m.agents[static_cast<size_t>(m.vertices[b].color)];
    });
    std::ostringstream line;
    bool first_vertex = true;
    for (int v : by_name) {
      if (!first_vertex) line << ' ';
      first_vertex = false;
      line << m.agents[static_cast<size_t>(m.vertices[v].color)] << '{';
      bool first_atom = true;
      for (const Atom& a : m.vertices[v].label) {
        if (!first_atom) line << ' ';
        first_atom = false;
        line << atom_text(a, m.agents);
      }
      line << '}';
    }
    lines.push_back(line.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace delchk
