#include <doctest.h>

#include <queue>
#include <set>

#include "oracles.hpp"
#include "stirling/error.hpp"
#include "stirling/tree.hpp"

using namespace stirling;

namespace {

bool reaches_all(const LabeledTree& t) {
  std::vector<bool> seen(static_cast<std::size_t>(t.vertex_count() + 1), false);
  std::queue<int> q;
  q.push(1);
  seen[1] = true;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : t.neighbours(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      ++count;
      q.push(w);
    }
  }
  return count == t.vertex_count();
}

}  // namespace

TEST_CASE("parse_tree reads edge lists") {
  const auto single = parse_tree("1 2");
  CHECK(single.vertex_count() == 2);
  CHECK(single.edges() == std::vector<Edge>{{1, 2}});

  const auto star = parse_tree("1 2\n2 3\n2 4");
  CHECK(star.vertex_count() == 4);
  CHECK(star.neighbours(2) == std::vector<int>{1, 3, 4});

  const auto path = parse_tree("1 3\n3 2");
  CHECK(path.edge(1) == Edge{1, 3});
  CHECK(path.edge(2) == Edge{2, 3});
  CHECK(path.edge_id(3, 2) == 2);
  CHECK(path.edge_id(1, 2) == 0);
}

TEST_CASE("parse_tree skips comments and blank lines") {
  const auto t = parse_tree("# a path\n\n2 1\n  # indented comment\n3 2\n");
  CHECK(t.vertex_count() == 3);
  CHECK(t.inline_form() == "1-2,2-3");
}

TEST_CASE("parse_tree rejects malformed input") {
  CHECK_THROWS_AS(parse_tree("1 x"), ParseError);
  CHECK_THROWS_AS(parse_tree("1 2 3"), ParseError);
  CHECK_THROWS_AS(parse_tree("1"), ParseError);
  CHECK_THROWS_AS(parse_tree("1 -2"), Error);
  // label 3 missing: gaps are not compacted
  CHECK_THROWS_AS(parse_tree("1 2\n2 4"), Error);
  // cycle and disconnection
  CHECK_THROWS_AS(parse_tree("1 2\n2 3\n3 1"), ValidationError);
  CHECK_THROWS_AS(parse_tree("1 2\n3 4\n1 2"), ValidationError);
  CHECK_THROWS_AS(parse_tree("1 1"), ValidationError);
}

TEST_CASE("inline form round trip") {
  const auto t = parse_inline_tree("1-2,2-3,2-4");
  CHECK(t == parse_tree("1 2\n2 3\n2 4"));
  CHECK(parse_inline_tree(t.inline_form()) == t);
  CHECK_THROWS_AS(parse_inline_tree("1-2,2"), ParseError);
}

TEST_CASE("path and star builders") {
  CHECK(path_tree(4).inline_form() == "1-2,2-3,3-4");
  CHECK(star_tree(4).inline_form() == "1-2,1-3,1-4");
  CHECK(LabeledTree::singleton().vertex_count() == 1);
  CHECK(LabeledTree::singleton().edge_count() == 0);
}

TEST_CASE("enumerate_trees matches the edge-subset oracle") {
  for (int m = 1; m <= 6; ++m) {
    CAPTURE(m);
    const auto trees = enumerate_trees(m);
    std::set<oracle::EdgeList> produced;
    for (const auto& t : trees) {
      CHECK(t.edge_count() == m - 1);
      CHECK(reaches_all(t));
      oracle::EdgeList edges;
      for (const auto& e : t.edges()) edges.emplace_back(e.tail, e.head);
      produced.insert(edges);
    }
    CHECK(produced.size() == trees.size());
    CHECK(produced == oracle::all_trees_by_edge_subsets(m));
  }
  CHECK(enumerate_trees(2).size() == 1);
  CHECK(enumerate_trees(4).size() == 16);
  CHECK(enumerate_trees(5).size() == 125);
  CHECK_THROWS_AS(enumerate_trees(0), DomainError);
  CHECK_THROWS_AS(enumerate_trees(9), DomainError);
}

TEST_CASE("enumerate_trees order is deterministic") {
  CHECK(enumerate_trees(5) == enumerate_trees(5));
}

TEST_CASE("Pruefer decode then encode is the identity") {
  for (int m = 2; m <= 6; ++m) {
    CAPTURE(m);
    oracle::for_each_function(m, m - 2, [&](const std::vector<int>& raw) {
      std::vector<int> code;
      for (int x : raw) code.push_back(x + 1);
      CHECK(prufer_encode(prufer_decode(m, code)) == code);
    });
  }
}

TEST_CASE("serialize then parse is the identity") {
  for (int m = 2; m <= 6; ++m)
    for (const auto& t : enumerate_trees(m)) CHECK(parse_tree(t.serialize()) == t);
}

TEST_CASE("sample_trees is reproducible") {
  const auto a = sample_trees(7, 10, 42);
  const auto b = sample_trees(7, 10, 42);
  CHECK(a == b);
  CHECK(a.size() == 10);
  for (const auto& t : a) CHECK(reaches_all(t));
}

TEST_CASE("validate_family") {
  const auto p3 = path_tree(3);
  const auto p4 = path_tree(4);
  CHECK(validate_family(p3, {{1}, {3}}).part_count() == 2);
  CHECK(validate_family(p4, {{1, 2}, {3, 4}}).part_count() == 2);
  CHECK_THROWS_AS(validate_family(p3, {{1, 3}}), ValidationError);
  CHECK_THROWS_AS(validate_family(p3, {{1, 2}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(validate_family(p3, {{}}), ValidationError);
  CHECK_THROWS_AS(validate_family(p3, {{4}}), ValidationError);
}

TEST_CASE("families are stored canonically") {
  const auto p4 = path_tree(4);
  const auto f = validate_family(p4, {{4, 3}, {2, 1}});
  CHECK(f.parts() == std::vector<std::vector<int>>{{1, 2}, {3, 4}});
  CHECK(f.describe() == "{1,2},{3,4}");
  CHECK(f.part_of_vertex(3) == 1);
  CHECK(f.part_of_edge(p4.edge_id(2, 3)) == -1);
  CHECK(f.part_of_edge(p4.edge_id(3, 4)) == 1);
}

TEST_CASE("parse_family_spec grammar") {
  const auto t = path_tree(5);
  CHECK(parse_family_spec(t, "all").part_count() == 5);
  CHECK(parse_family_spec(t, "all").all_singletons());
  CHECK(parse_family_spec(t, "none").part_count() == 0);
  CHECK(parse_family_spec(t, "").describe() == "{}");
  CHECK(parse_family_spec(t, "1,3,4").singleton_vertices() == std::vector<int>{1, 3, 4});
  const auto f = parse_family_spec(t, "{1},{2,3},{5}");
  CHECK(f.part_count() == 3);
  CHECK_FALSE(f.all_singletons());
  CHECK_THROWS_AS(parse_family_spec(t, "{1,3}"), ValidationError);
  CHECK_THROWS_AS(parse_family_spec(t, "{1,2"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(t, "1,x"), ParseError);
}
