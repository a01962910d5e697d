#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "delchk/layered.hpp"
#include "delchk/model.hpp"
#include "delchk/task.hpp"
#include "support.hpp"

using namespace delchk;
using namespace testsupport;

namespace {

std::vector<std::pair<long, long>> all_pairs_012() {
  std::vector<std::pair<long, long>> out;
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) out.push_back({i, j});
  return out;
}

}  // namespace

TEST_CASE("validate_model accepts the equality-negation input model") {
  const SimplicialModel m = input_model_from_pairs(all_pairs_012());
  CHECK(m.vertex_count() == 6);
  CHECK(m.facet_count() == 9);
  CHECK(validate_model(m).empty());
}

TEST_CASE("validate_model flags a monochromatic facet") {
  SimplicialModel m;
  m.agents = {"B", "W"};
  m.vertices.push_back(Vertex{0, 0, {input_atom(0, 1)}});
  m.vertices.push_back(Vertex{1, 0, {input_atom(0, 2)}});
  m.facets.push_back({0, 1});
  const auto diags = validate_model(m);
  REQUIRE(!diags.empty());
  CHECK(std::any_of(diags.begin(), diags.end(),
                    [](const Diagnostic& d) { return d.code == Diagnostic::Code::Chromatic; }));
}

TEST_CASE("validate_model flags a purity violation") {
  SimplicialModel m;
  m.agents = {"B", "W"};
  m.vertices.push_back(Vertex{0, 0, {input_atom(0, 1)}});
  m.vertices.push_back(Vertex{1, 1, {input_atom(1, 2)}});
  m.vertices.push_back(Vertex{2, 1, {input_atom(1, 3)}});
  m.facets.push_back({0});     // too small
  m.facets.push_back({0, 1});  // fine
  m.facets.push_back({2});     // too small
  const auto diags = validate_model(m);
  CHECK(std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
          return d.code == Diagnostic::Code::Purity;
        }) == 2);
}

TEST_CASE("validate_model flags duplicates, foreign atoms and unused vertices") {
  SimplicialModel m;
  m.agents = {"B", "W"};
  m.vertices.push_back(Vertex{0, 0, {input_atom(1, 0)}});  // atom talks about W
  m.vertices.push_back(Vertex{1, 1, {input_atom(1, 0)}});
  m.vertices.push_back(Vertex{2, 1, {input_atom(1, 1)}});  // never used
  m.facets.push_back({0, 1});
  m.facets.push_back({0, 1});
  const auto diags = validate_model(m);
  auto has = [&](Diagnostic::Code c) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == c; });
  };
  CHECK(has(Diagnostic::Code::ForeignAtom));
  CHECK(has(Diagnostic::Code::DuplicateFacet));
  CHECK(has(Diagnostic::Code::UnusedVertex));
}

TEST_CASE("neighbors_via is reflexive on a single edge") {
  const SimplicialModel m = input_model_from_pairs({{1, 2}});
  CHECK(neighbors_via(m, 0, 0) == std::vector<int>{0});
  CHECK(neighbors_via(m, 0, 1) == std::vector<int>{0});
  CHECK_THROWS_AS(neighbors_via(m, 7, 0), std::out_of_range);
}

TEST_CASE("neighbors_via on the one-layer protocol of a single edge") {
  // path of three facets: words W, _, B in path order; facet ids follow the
  // word order _, B, W
  const SimplicialModel input = input_model_from_pairs({{1, 2}});
  const UpdateResult p = protocol_model(input, 1);
  REQUIRE(p.model.facet_count() == 3);
  const ActionModel mp = build_mp(input, 1);
  auto facet_of_word = [&](const std::string& w) {
    for (int f = 0; f < p.model.facet_count(); ++f)
      if (mp.actions[static_cast<size_t>(p.provenance[static_cast<size_t>(f)].second)].word == w)
        return f;
    return -1;
  };
  const int f_mid = facet_of_word("_");
  const int f_b = facet_of_word("B");
  const int f_w = facet_of_word("W");

  // the middle world: B cannot tell it from the B-lost world
  std::vector<int> via_b = neighbors_via(p.model, f_mid, 0);
  std::sort(via_b.begin(), via_b.end());
  CHECK(via_b == std::vector<int>{std::min(f_mid, f_b), std::max(f_mid, f_b)});

  // the W world shares its white vertex with the middle world
  std::vector<int> via_w = neighbors_via(p.model, f_w, 1);
  std::sort(via_w.begin(), via_w.end());
  CHECK(via_w == std::vector<int>{std::min(f_mid, f_w), std::max(f_mid, f_w)});
}

TEST_CASE("is_connected on the equality-negation input and its parts") {
  const SimplicialModel m = input_model_from_pairs(all_pairs_012());
  std::vector<int> all(9);
  for (int i = 0; i < 9; ++i) all[static_cast<size_t>(i)] = i;
  CHECK(is_connected(m, all));

  // the distinct-input subgraph G is connected
  std::vector<int> distinct;
  for (int f = 0; f < 9; ++f) {
    const Label l = m.facet_label(f);
    if (l[0].value != l[1].value) distinct.push_back(f);
  }
  CHECK(distinct.size() == 6);
  CHECK(is_connected(m, distinct));

  CHECK(is_connected(m, {}));  // vacuous
}

TEST_CASE("the binary-consensus output model is disconnected") {
  const OutputModels o = output_model(builtin_task(Builtin::Consensus2));
  std::vector<int> all;
  for (int f = 0; f < o.plain.model.facet_count(); ++f) all.push_back(f);
  CHECK(!is_connected(o.plain.model, all));
}

TEST_CASE("is_connected agrees with the transitive-closure oracle") {
  std::vector<SimplicialModel> models;
  models.push_back(input_model_from_pairs(all_pairs_012()));
  models.push_back(protocol_model(models[0], 1).model);
  models.push_back(output_model(builtin_task(Builtin::EqualityNegation)).plain.model);
  models.push_back(output_model(builtin_task(Builtin::Consensus2)).plain.model);

  std::mt19937_64 rng(2024);
  for (const SimplicialModel& m : models) {
    REQUIRE(m.facet_count() <= 200);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> subset;
      for (int f = 0; f < m.facet_count(); ++f)
        if (rng() % 3 == 0) subset.push_back(f);
      CHECK(is_connected(m, subset) == brute_connected(m, subset));
    }
  }
}

TEST_CASE("check_morphism accepts identities and projections") {
  const SimplicialModel input = input_model_from_pairs(all_pairs_012());
  std::vector<int> id(static_cast<size_t>(input.vertex_count()));
  for (int v = 0; v < input.vertex_count(); ++v) id[static_cast<size_t>(v)] = v;
  CHECK(check_morphism({&input, &input, id}).ok);

  const UpdateResult p = protocol_model(input, 1);
  CHECK(check_morphism(p.projection_morphism(input)).ok);
}

TEST_CASE("check_morphism rejects color, label and facet violations") {
  const SimplicialModel m = input_model_from_pairs({{1, 2}});
  // vertex 0 is B, vertex 1 is W
  MorphismCheck color = check_morphism({&m, &m, {1, 0}});
  CHECK(!color.ok);
  CHECK(color.violation.find("color") != std::string::npos);

  const SimplicialModel two = input_model_from_pairs({{1, 2}, {3, 2}});
  // sending B1 to B3 breaks the labeling
  const int b1 = 0, b3 = 1;
  std::vector<int> bad(static_cast<size_t>(two.vertex_count()));
  for (int v = 0; v < two.vertex_count(); ++v) bad[static_cast<size_t>(v)] = v;
  bad[static_cast<size_t>(b1)] = b3;
  MorphismCheck label = check_morphism({&two, &two, bad});
  CHECK(!label.ok);
  CHECK(label.violation.find("label") != std::string::npos);

  // a map with good colors/labels but an image that is not a facet
  const SimplicialModel square = input_model_from_pairs({{0, 0}, {0, 1}, {1, 1}});
  const SimplicialModel target = input_model_from_pairs({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  // identify by (agent, value); (B1,W0) exists in target but not in square
  std::vector<int> map(static_cast<size_t>(square.vertex_count()), -1);
  for (const Vertex& v : square.vertices)
    for (const Vertex& w : target.vertices)
      if (v.color == w.color && v.label == w.label) map[static_cast<size_t>(v.id)] = w.id;
  CHECK(check_morphism({&square, &target, map}).ok);
  std::vector<int> rev(static_cast<size_t>(target.vertex_count()), -1);
  for (const Vertex& w : target.vertices)
    for (const Vertex& v : square.vertices)
      if (v.color == w.color && v.label == w.label) rev[static_cast<size_t>(w.id)] = v.id;
  MorphismCheck facet = check_morphism({&target, &square, rev});
  CHECK(!facet.ok);
  CHECK(facet.violation.find("facet") != std::string::npos);
}

TEST_CASE("composition of valid morphisms is a valid morphism") {
  const SimplicialModel input = input_model_from_pairs(all_pairs_012());
  const UpdateResult p1 = protocol_model(input, 1);
  const UpdateResult p2 = protocol_model(input, 2);
  const ViewIsoReport iso = check_view_isomorphism(input, 1);
  REQUIRE(iso.ok);

  const Morphism pi1 = p1.projection_morphism(input);
  const Morphism pi2 = p2.projection_morphism(input);
  CHECK(check_morphism(pi1).ok);
  CHECK(check_morphism(pi2).ok);

  // compose an isomorphism inverse with the projection
  std::vector<int> inverse(iso.vertex_map.size());
  for (size_t v = 0; v < iso.vertex_map.size(); ++v)
    inverse[static_cast<size_t>(iso.vertex_map[v])] = static_cast<int>(v);
  const Morphism from_views{&iso.graph.model, &iso.update.model, inverse};
  REQUIRE(check_morphism(from_views).ok);
  const Morphism pi_update = iso.update.projection_morphism(input);
  const Morphism composed = compose(pi_update, from_views);
  CHECK(check_morphism(composed).ok);
}

TEST_CASE("induced_subcomplex keeps exactly the requested facets") {
  const SimplicialModel m = input_model_from_pairs(all_pairs_012());

  const Subcomplex distinct = induced_subcomplex(m, [&](int f) {
    const Label l = m.facet_label(f);
    return l[0].value != l[1].value;
  });
  CHECK(distinct.model.facet_count() == 6);  // 9 total minus 3 equal-input facets
  CHECK(validate_model(distinct.model).empty());

  const Subcomplex everything = induced_subcomplex(m, [](int) { return true; });
  CHECK(everything.model.facet_count() == m.facet_count());
  CHECK(everything.model.vertex_count() == m.vertex_count());
  CHECK(canonical_text(everything.model) == canonical_text(m));

  CHECK_THROWS_AS(induced_subcomplex(m, [](int) { return false; }), empty_complex_error);
}

TEST_CASE("canonical text is sorted and stable") {
  const SimplicialModel m = input_model_from_pairs({{1, 2}});
  CHECK(canonical_text(m) == "B{input(B,1)} W{input(W,2)}\n");

  const SimplicialModel two = input_model_from_pairs({{3, 2}, {1, 2}});
  CHECK(canonical_text(two) == "B{input(B,1)} W{input(W,2)}\nB{input(B,3)} W{input(W,2)}\n");
}

TEST_CASE("neighbors_via always contains the facet itself") {
  const SimplicialModel input = input_model_from_pairs(all_pairs_012());
  const UpdateResult p = protocol_model(input, 1);
  for (const SimplicialModel* m : {&input, &p.model})
    for (int f = 0; f < m->facet_count(); ++f)
      for (int a = 0; a < m->agent_count(); ++a) {
        const std::vector<int> ns = neighbors_via(*m, f, a);
        CHECK(std::find(ns.begin(), ns.end(), f) != ns.end());
      }
}
