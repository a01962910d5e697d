#include "delchk/logic.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace delchk {

namespace fml {

Formula atom(Atom a) {
  Formula f;
  f.kind = FormulaKind::AtomRef;
  f.atom = a;
  return f;
}

Formula neg(Formula f) {
  Formula out;
  out.kind = FormulaKind::Not;
  out.children.push_back(std::move(f));
  return out;
}

Formula conj(std::vector<Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("conj: empty conjunction");
  if (fs.size() == 1) return std::move(fs.front());
  Formula out;
  out.kind = FormulaKind::And;
  out.children = std::move(fs);
  return out;
}

Formula disj(std::vector<Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("disj: empty disjunction");
  if (fs.size() == 1) return std::move(fs.front());
  Formula out;
  out.kind = FormulaKind::Or;
  out.children = std::move(fs);
  return out;
}

Formula implies(Formula lhs, Formula rhs) {
  Formula out;
  out.kind = FormulaKind::Implies;
  out.children.push_back(std::move(lhs));
  out.children.push_back(std::move(rhs));
  return out;
}

Formula know(int agent, Formula f) {
  Formula out;
  out.kind = FormulaKind::Know;
  out.agents = {agent};
  out.children.push_back(std::move(f));
  return out;
}

Formula common(std::vector<int> agents, Formula f) {
  if (agents.empty()) throw std::invalid_argument("common: empty agent group");
  std::sort(agents.begin(), agents.end());
  agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
  Formula out;
  out.kind = FormulaKind::CommonKnow;
  out.agents = std::move(agents);
  out.children.push_back(std::move(f));
  return out;
}

}  // namespace fml

namespace {

// Facets reachable from `facet` through chains of shared-vertex steps whose
// shared vertex is colored by an agent in the group. Includes the start.
std::vector<int> group_reachable(const SimplicialModel& m, int facet,
                                 const std::vector<int>& group) {
  std::vector<bool> seen(static_cast<size_t>(m.facet_count()), false);
  std::queue<int> queue;
  seen[static_cast<size_t>(facet)] = true;
  queue.push(facet);
  std::vector<int> out;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    out.push_back(f);
    for (int a : group)
      for (int g : neighbors_via(m, f, a))
        if (!seen[static_cast<size_t>(g)]) {
          seen[static_cast<size_t>(g)] = true;
          queue.push(g);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool eval(const SimplicialModel& m, int facet, const Formula& phi) {
  if (facet < 0 || facet >= m.facet_count())
    throw std::out_of_range("eval: unknown facet " + std::to_string(facet));
  switch (phi.kind) {
    case FormulaKind::AtomRef:
      return label_contains(m.facet_label(facet), phi.atom);
    case FormulaKind::Not:
      return !eval(m, facet, phi.children[0]);
    case FormulaKind::And:
      for (const Formula& c : phi.children)
        if (!eval(m, facet, c)) return false;
      return true;
    case FormulaKind::Or:
      for (const Formula& c : phi.children)
        if (eval(m, facet, c)) return true;
      return false;
    case FormulaKind::Implies:
      return !eval(m, facet, phi.children[0]) || eval(m, facet, phi.children[1]);
    case FormulaKind::Know:
      for (int g : neighbors_via(m, facet, phi.agents[0]))
        if (!eval(m, g, phi.children[0])) return false;
      return true;
    case FormulaKind::CommonKnow:
      for (int g : group_reachable(m, facet, phi.agents))
        if (!eval(m, g, phi.children[0])) return false;
      return true;
  }
  return false;
}

Positivity is_positive(const Formula& phi) {
  switch (phi.kind) {
    case FormulaKind::AtomRef:
      return Positivity::Positive;
    case FormulaKind::Not:
      return phi.children[0].kind == FormulaKind::AtomRef ? Positivity::Positive
                                                          : Positivity::NotPositive;
    case FormulaKind::Implies:
      return Positivity::NotPositive;
    default:
      for (const Formula& c : phi.children)
        if (is_positive(c) == Positivity::NotPositive) return Positivity::NotPositive;
      return Positivity::Positive;
  }
}

namespace {

// std::uniform_int_distribution is not reproducible across standard
// libraries; plain modulo keeps seeds portable.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

Formula random_node(std::mt19937_64& rng, int depth, const std::vector<Atom>& universe,
                    const std::vector<int>& agents, bool positive_only) {
  auto leaf = [&]() {
    Formula a = fml::atom(universe[draw(rng, universe.size())]);
    return draw(rng, 2) == 0 ? a : fml::neg(std::move(a));
  };
  if (depth <= 1) return leaf();

  // leaf, not, and, or, implies, know, common
  const int choice = static_cast<int>(draw(rng, positive_only ? 10 : 12));
  switch (choice) {
    case 0:
    case 1:
      return leaf();
    case 2:
    case 3:
    case 4: {
      std::vector<Formula> kids;
      const int arity = 2 + static_cast<int>(draw(rng, 2));
      for (int i = 0; i < arity; ++i)
        kids.push_back(random_node(rng, depth - 1, universe, agents, positive_only));
      return choice == 4 ? fml::disj(std::move(kids)) : fml::conj(std::move(kids));
    }
    case 5: {
      std::vector<Formula> kids;
      const int arity = 2 + static_cast<int>(draw(rng, 2));
      for (int i = 0; i < arity; ++i)
        kids.push_back(random_node(rng, depth - 1, universe, agents, positive_only));
      return fml::disj(std::move(kids));
    }
    case 6:
    case 7:
    case 8:
      return fml::know(agents[draw(rng, agents.size())],
                       random_node(rng, depth - 1, universe, agents, positive_only));
    case 9: {
      std::vector<int> group;
      for (int a : agents)
        if (draw(rng, 2) == 0) group.push_back(a);
      if (group.empty()) group.push_back(agents[draw(rng, agents.size())]);
      return fml::common(std::move(group),
                         random_node(rng, depth - 1, universe, agents, positive_only));
    }
    case 10:
      return fml::neg(random_node(rng, depth - 1, universe, agents, positive_only));
    default:
      return fml::implies(random_node(rng, depth - 1, universe, agents, positive_only),
                          random_node(rng, depth - 1, universe, agents, positive_only));
  }
}

}  // namespace

Formula random_formula(std::uint64_t seed, int max_depth,
                       const std::vector<Atom>& atom_universe, bool positive_only) {
  if (atom_universe.empty()) throw std::invalid_argument("random_formula: empty atom universe");
  if (max_depth < 1) throw std::invalid_argument("random_formula: max_depth must be >= 1");
  std::set<int> agent_set;
  for (const Atom& a : atom_universe) agent_set.insert(a.agent);
  std::vector<int> agents(agent_set.begin(), agent_set.end());
  std::mt19937_64 rng(seed);
  return random_node(rng, max_depth, atom_universe, agents, positive_only);
}

// ---------------------------------------------------------------------------
// Surface syntax.

namespace {

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Implies: return 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    default: return 4;  // atoms and prefix operators never need parentheses
  }
}

void print_node(const Formula& phi, const std::vector<std::string>& agents,
                std::ostringstream& out, int parent_prec) {
  const int prec = precedence(phi.kind);
  const bool parens = prec < parent_prec;
  if (parens) out << '(';
  switch (phi.kind) {
    case FormulaKind::AtomRef:
      out << atom_text(phi.atom, agents);
      break;
    case FormulaKind::Not:
      out << '!';
      print_node(phi.children[0], agents, out, 4);
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* op = phi.kind == FormulaKind::And ? " & " : " | ";
      for (size_t i = 0; i < phi.children.size(); ++i) {
        if (i) out << op;
        // children at the same precedence keep explicit parentheses so the
        // parser's flattening reproduces the tree shape
        print_node(phi.children[i], agents, out, prec + 1);
      }
      break;
    }
    case FormulaKind::Implies:
      print_node(phi.children[0], agents, out, 2);
      out << " -> ";
      print_node(phi.children[1], agents, out, 1);
      break;
    case FormulaKind::Know:
      out << "K[" << agents.at(static_cast<size_t>(phi.agents[0])) << "] ";
      print_node(phi.children[0], agents, out, 4);
      break;
    case FormulaKind::CommonKnow: {
      out << "C[";
      for (size_t i = 0; i < phi.agents.size(); ++i) {
        if (i) out << ',';
        out << agents.at(static_cast<size_t>(phi.agents[i]));
      }
      out << "] ";
      print_node(phi.children[0], agents, out, 4);
      break;
    }
  }
  if (parens) out << ')';
}

struct Parser {
  std::string_view text;
  size_t pos = 0;
  const std::vector<std::string>& agents;

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("formula: " + what, 1, static_cast<int>(pos) + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat(std::string_view word) {
    skip_ws();
    if (text.substr(pos, word.size()) == word) {
      pos += word.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected an identifier");
    return std::string(text.substr(start, pos - start));
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1)) fail("expected an integer");
    try {
      return std::stol(std::string(text.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  int agent_ref() {
    std::string name = identifier();
    for (size_t i = 0; i < agents.size(); ++i)
      if (agents[i] == name) return static_cast<int>(i);
    fail("unknown agent '" + name + "'");
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (eat("->")) return fml::implies(std::move(lhs), formula());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> kids;
    kids.push_back(conjunction());
    while (true) {
      skip_ws();
      // `|` but not `|something-else`; only one pipe token exists
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        kids.push_back(conjunction());
      } else {
        break;
      }
    }
    return kids.size() == 1 ? std::move(kids.front()) : fml::disj(std::move(kids));
  }

  Formula conjunction() {
    std::vector<Formula> kids;
    kids.push_back(unary());
    while (eat('&')) kids.push_back(unary());
    return kids.size() == 1 ? std::move(kids.front()) : fml::conj(std::move(kids));
  }

  Formula unary() {
    skip_ws();
    if (eat('!')) return fml::neg(unary());
    if (pos < text.size() && (text[pos] == 'K' || text[pos] == 'C') && pos + 1 < text.size() &&
        text[pos + 1] == '[') {
      const char op = text[pos];
      pos += 2;
      std::vector<int> group;
      group.push_back(agent_ref());
      while (eat(',')) group.push_back(agent_ref());
      if (!eat(']')) fail("expected ']'");
      Formula body = unary();
      if (op == 'K') {
        if (group.size() != 1) fail("K takes exactly one agent");
        return fml::know(group[0], std::move(body));
      }
      return fml::common(std::move(group), std::move(body));
    }
    return primary();
  }

  Formula primary() {
    skip_ws();
    if (eat('(')) {
      Formula inner = formula();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    std::string head = identifier();
    AtomKind kind;
    if (head == "input")
      kind = AtomKind::Input;
    else if (head == "decide")
      kind = AtomKind::Decide;
    else if (head == "class")
      kind = AtomKind::ActionClass;
    else
      fail("expected input(...), decide(...) or class(...), got '" + head + "'");
    if (!eat('(')) fail("expected '('");
    int agent = agent_ref();
    if (!eat(',')) fail("expected ','");
    long value = integer();
    if (!eat(')')) fail("expected ')'");
    return fml::atom(Atom{kind, agent, value});
  }
};

}  // namespace

std::string to_text(const Formula& phi, const std::vector<std::string>& agents) {
  std::ostringstream out;
  print_node(phi, agents, out, 0);
  return out.str();
}

Formula parse_formula(std::string_view text, const std::vector<std::string>& agents) {
  Parser p{text, 0, agents};
  Formula out = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace delchk
