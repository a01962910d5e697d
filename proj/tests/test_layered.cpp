#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "delchk/layered.hpp"
#include "delchk/task.hpp"
#include "support.hpp"

using namespace delchk;
using namespace testsupport;

TEST_CASE("layer words are enumerated with _ < B < W") {
  CHECK(all_words(0) == std::vector<LayerWord>{""});
  CHECK(all_words(1) == std::vector<LayerWord>{"_", "B", "W"});
  CHECK(all_words(2)[0] == "__");
  CHECK(all_words(2).size() == 9);
  CHECK(all_words(3).size() == 27);
}

TEST_CASE("zero-layer action model distinguishes exactly the own inputs") {
  const SimplicialModel input = build_input_model(builtin_task(Builtin::EqualityNegation));
  const ActionModel mp = build_mp(input, 0);
  CHECK(mp.action_count() == 9);
  CHECK(mp.classes[0].size() == 3);  // one class per B input value
  CHECK(mp.classes[1].size() == 3);
  CHECK(mp.proper);
}

TEST_CASE("one layer over a single edge: B cannot distinguish B-lost from lossless") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}});
  const ActionModel mp = build_mp(input, 1);
  REQUIRE(mp.action_count() == 3);
  auto action_of = [&](const std::string& w) {
    for (int t = 0; t < mp.action_count(); ++t)
      if (mp.actions[static_cast<size_t>(t)].word == w) return t;
    return -1;
  };
  const int a_none = action_of("_");
  const int a_b = action_of("B");
  const int a_w = action_of("W");
  CHECK(mp.class_of[0][static_cast<size_t>(a_none)] == mp.class_of[0][static_cast<size_t>(a_b)]);
  CHECK(mp.class_of[0][static_cast<size_t>(a_none)] != mp.class_of[0][static_cast<size_t>(a_w)]);
  CHECK(mp.class_of[1][static_cast<size_t>(a_none)] == mp.class_of[1][static_cast<size_t>(a_w)]);
  CHECK(mp.class_of[1][static_cast<size_t>(a_none)] != mp.class_of[1][static_cast<size_t>(a_b)]);
}

TEST_CASE("protocol model sizes follow the subdivision formula") {
  const SimplicialModel edge = input_model_from_pairs({{1, 2}});
  const SimplicialModel eqneg = build_input_model(builtin_task(Builtin::EqualityNegation));
  long power = 1;
  for (int n = 0; n <= 4; ++n) {
    CHECK(protocol_model(edge, n).model.facet_count() == power);
    if (n <= 3) CHECK(protocol_model(eqneg, n).model.facet_count() == 9 * power);
    power *= 3;
  }
  CHECK(protocol_model(eqneg, 1).model.facet_count() == 27);
  const UpdateResult two = protocol_model(edge, 2);
  CHECK(two.model.facet_count() == 9);
  CHECK(two.model.vertex_count() == 10);
}

TEST_CASE("a zero-layer protocol is a relabeled copy of the input") {
  const SimplicialModel input = build_input_model(builtin_task(Builtin::EqualityNegation));
  const UpdateResult p = protocol_model(input, 0);
  CHECK(p.model.facet_count() == input.facet_count());
  CHECK(p.model.vertex_count() == input.vertex_count());
  CHECK(canonical_text(p.model) == canonical_text(input));
}

TEST_CASE("views follow the recursive definition") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}});
  CHECK(view_of(input, "", 0, 0) == View::input(1));
  CHECK(view_of(input, "", 0, 1) == View::input(2));
  CHECK(view_of(input, "B", 0, 1).to_text() == "(#,2)");
  CHECK(view_of(input, "B", 0, 0).to_text() == "(1,2)");
  CHECK(view_of(input, "BB", 0, 0).to_text() == "((1,2),(#,2))");
  CHECK(view_of(input, "BB", 0, 1).to_text() == "(#,(#,2))");
  CHECK(view_of(input, "W", 0, 0).to_text() == "(1,#)");
  CHECK(view_of(input, "_", 0, 0) == view_of(input, "_", 0, 1));
}

TEST_CASE("the view graph of one edge after one layer is the pictured path") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}});
  const ViewGraph g = protocol_graph_from_views(input, 1);
  CHECK(g.model.facet_count() == 3);
  CHECK(g.model.vertex_count() == 4);
  std::vector<std::string> texts;
  for (const View& v : g.vertex_view) texts.push_back(v.to_text());
  std::sort(texts.begin(), texts.end());
  CHECK(texts == std::vector<std::string>{"(#,2)", "(1,#)", "(1,2)", "(1,2)"});
}

TEST_CASE("a lost message leaves the white view on two protocol edges") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}, {3, 2}});
  const ViewGraph g = protocol_graph_from_views(input, 1);
  CHECK(g.model.facet_count() == 6);
  int box_j = -1;
  for (const Vertex& v : g.model.vertices)
    if (g.vertex_view[static_cast<size_t>(v.id)].to_text() == "(#,2)") box_j = v.id;
  REQUIRE(box_j >= 0);
  int degree = 0;
  for (const auto& facet : g.model.facets)
    degree += std::count(facet.begin(), facet.end(), box_j);
  CHECK(degree == 2);
}

TEST_CASE("equal views imply equal executions") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}, {3, 2}, {3, 4}});
  for (int n = 0; n <= 2; ++n) {
    const std::vector<LayerWord> words = all_words(n);
    for (int agent = 0; agent < 2; ++agent)
      for (size_t wi = 0; wi < words.size(); ++wi)
        for (int f = 0; f < input.facet_count(); ++f)
          for (size_t wj = 0; wj < words.size(); ++wj)
            for (int g = 0; g < input.facet_count(); ++g) {
              if (wi == wj && f == g) continue;
              const bool b_equal =
                  view_of(input, words[wi], f, 0) == view_of(input, words[wj], g, 0);
              const bool w_equal =
                  view_of(input, words[wi], f, 1) == view_of(input, words[wj], g, 1);
              CHECK(!(b_equal && w_equal));
              (void)agent;
            }
  }
}

TEST_CASE("views characterize indistinguishability") {
  const SimplicialModel input = input_model_from_pairs({{1, 2}, {3, 2}});
  for (int n = 0; n <= 2; ++n) {
    const ActionModel mp = build_mp(input, n);
    for (int agent = 0; agent < 2; ++agent)
      for (int t = 0; t < mp.action_count(); ++t)
        for (int u = 0; u < mp.action_count(); ++u) {
          const Action& at = mp.actions[static_cast<size_t>(t)];
          const Action& au = mp.actions[static_cast<size_t>(u)];
          const bool same_class = mp.class_of[static_cast<size_t>(agent)][static_cast<size_t>(t)] ==
                                  mp.class_of[static_cast<size_t>(agent)][static_cast<size_t>(u)];
          const bool same_view = view_of(input, at.word, at.base_facet, agent) ==
                                 view_of(input, au.word, au.base_facet, agent);
          CHECK(same_class == same_view);
        }
  }
}

TEST_CASE("view graph and product update are isomorphic") {
  const SimplicialModel edge = input_model_from_pairs({{1, 2}});
  const SimplicialModel eqneg = build_input_model(builtin_task(Builtin::EqualityNegation));
  const SimplicialModel cons = build_input_model(builtin_task(Builtin::Consensus2));
  for (int n = 0; n <= 3; ++n) {
    for (const SimplicialModel* input : {&edge, &eqneg, &cons}) {
      const ViewIsoReport report = check_view_isomorphism(*input, n);
      CHECK(report.ok);
      CHECK(report.failure.empty());
    }
  }
  const ViewIsoReport two = check_view_isomorphism(edge, 2);
  CHECK(two.vertex_map.size() == 10);
}

TEST_CASE("subdivision census: single edge") {
  const SimplicialModel edge = input_model_from_pairs({{1, 2}});

  const Census one = subdivision_census(edge, 1);
  CHECK(one.ok);
  REQUIRE(one.blocks.size() == 1);
  CHECK(one.blocks[0].size == 3);
  CHECK(one.blocks[0].is_path);
  CHECK(one.blocks[0].endpoints_are_solo);
  CHECK(one.blocks[0].words == std::vector<LayerWord>{"W", "_", "B"});

  const Census two = subdivision_census(edge, 2);
  REQUIRE(two.ok);
  CHECK(two.blocks[0].words ==
        std::vector<LayerWord>{"WW", "W_", "WB", "_B", "__", "_W", "BW", "B_", "BB"});

  const Census three = subdivision_census(edge, 3);
  CHECK(three.ok);
  CHECK(three.blocks[0].size == 27);
}

TEST_CASE("subdivision census: equality negation at two layers") {
  const SimplicialModel input = build_input_model(builtin_task(Builtin::EqualityNegation));
  const Census census = subdivision_census(input, 2);
  CHECK(census.ok);
  CHECK(census.blocks.size() == 9);
  long total = 0;
  for (const CensusBlock& b : census.blocks) {
    CHECK(b.size == 9);
    CHECK(b.is_path);
    CHECK(b.endpoints_are_solo);
    total += b.size;
  }
  CHECK(total == 81);
}

TEST_CASE("subdivision preserves connectivity") {
  const SimplicialModel eqneg = build_input_model(builtin_task(Builtin::EqualityNegation));
  const SimplicialModel two_edges = input_model_from_pairs({{1, 2}, {3, 2}});
  for (const SimplicialModel* input : {&eqneg, &two_edges})
    for (int n = 0; n <= 2; ++n) {
      const UpdateResult p = protocol_model(*input, n);
      std::vector<int> all;
      for (int f = 0; f < p.model.facet_count(); ++f) all.push_back(f);
      CHECK(is_connected(p.model, all));
    }
}

TEST_CASE("canonical text matches the golden files") {
  auto read_file = [](const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string dir = DELCHK_DATA_DIR;
  const SimplicialModel edge = input_model_from_pairs({{1, 2}});
  CHECK(canonical_text(extended_product_update(edge, build_mp(edge, 1)).model) ==
        read_file(dir + "/golden/single_edge_extended_protocol_1.txt"));
  CHECK(canonical_text(extended_product_update(edge, build_mp(edge, 2)).model) ==
        read_file(dir + "/golden/single_edge_extended_protocol_2.txt"));
  const TaskSpec eqneg = builtin_task(Builtin::EqualityNegation);
  CHECK(canonical_text(build_input_model(eqneg)) == read_file(dir + "/golden/eqneg_input.txt"));
  CHECK(canonical_text(output_model(eqneg).extended.model) ==
        read_file(dir + "/golden/eqneg_extended_output.txt"));
}

TEST_CASE("layered builders reject malformed inputs") {
  SimplicialModel wrong_agents;
  wrong_agents.agents = {"B", "W", "R"};
  CHECK_THROWS_AS(build_mp(wrong_agents, 1), std::invalid_argument);

  SimplicialModel bad_label = input_model_from_pairs({{1, 2}});
  label_insert(bad_label.vertices[0].label, input_atom(0, 9));
  CHECK_THROWS_AS(build_mp(bad_label, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mp(input_model_from_pairs({{1, 2}}), -1), std::invalid_argument);
}
