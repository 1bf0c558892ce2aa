#include "doctest.h"

#include "fixtures.hpp"
#include "qctl/trees.hpp"

using namespace qctl;
using fixtures::chain;
using fixtures::star;

TEST_SUITE("trees") {

TEST_CASE("unfold") {
  KripkeStructure loop{{{0}}, {{"p"}}};
  TreeModel t = unfold(loop, 0, 2);
  CHECK(same_tree(t, chain({{"p"}, {"p"}, {"p"}})));

  KripkeStructure two{{{1}, {0}}, {{"a"}, {"b"}}};
  CHECK(same_tree(unfold(two, 0, 2), chain({{"a"}, {"b"}, {"a"}})));
  CHECK(same_tree(unfold(two, 1, 0), single_node({"b"})));
}

TEST_CASE("node types") {
  TreeModel t = star({{}, {"p0"}});
  CHECK(node_type(t, t.root, 0, 1));
  CHECK(node_type(t, t.root, 1, 1));
  CHECK_FALSE(node_type(star({{}, {"p0"}, {}}), 0, 1, 1));
  CHECK_FALSE(node_type(star({{"p0"}, {"p0"}}), 0, 1, 1));
}

TEST_CASE("node numbers") {
  CHECK(node_number(single_node({"p1"}), 0, 0, 2) == 2);
  CHECK(node_number(single_node({}), 0, 0, 2) == 0);
  TreeModel t = star({{"val"}, {"p0"}});
  CHECK(node_number(t, 0, 1, 1) == 1);
  t = star({{}, {"p0", "val"}});
  CHECK(node_number(t, 0, 1, 1) == 2);
}

TEST_CASE("variants") {
  CHECK(Variants(single_node(), "p").count() == 2);
  CHECK(Variants(chain({{}, {}}), "p").count() == 4);
  Variants vs(chain({{"p"}, {}, {"p"}}), "p");
  TreeModel first;
  REQUIRE(vs.next(first));
  for (std::size_t v = 0; v < first.size(); ++v) CHECK_FALSE(first.has(static_cast<NodeId>(v), "p"));
  std::size_t seen = 1;
  while (vs.next(first)) ++seen;
  CHECK(seen == 8);
}

TEST_CASE("tree enumeration counts") {
  auto chains = enumerate_trees(1, 2, {});
  REQUIRE(chains.size() == 1);
  CHECK(chains.at(0).size() == 3);
  CHECK(enumerate_trees(2, 1, {}).size() == 2);
  CHECK(enumerate_trees(3, 0, {"p"}).size() == 2);
  // Multisets of size 1..2 over the 4 labelled leaves, times 4 root labels.
  CHECK(enumerate_trees(2, 1, {"p", "q"}).size() == 4 * (4 + 10));
}

TEST_CASE("by_size counts rooted unordered trees") {
  // Unlabelled rooted trees with 1..6 nodes: 1, 1, 2, 4, 9, 20.
  auto s = TreeSpace::by_size(6, {});
  CHECK(s.size() == 37);
  CHECK(TreeSpace::by_size(4, {}, 2).size() == 1 + 1 + 2 + 3);
  CHECK(TreeSpace::estimate_exact_depth(2, 1, 1) >= 2);
  CHECK_THROWS_AS(TreeSpace::by_size(12, {"a", "b"}, 0, -1, 1000), CapExceeded);
}

TEST_CASE("frontier modes") {
  TreeModel t = chain({{}, {"p"}});
  Structure s = apply_frontier(t, FrontierMode::strict());
  CHECK(s.n == 2);
  CHECK(s.succ[1].empty());

  Structure one = apply_frontier(single_node(), FrontierMode::self_loop());
  CHECK(one.n == 1);
  CHECK(one.succ[0] == std::vector<NodeId>{0});

  Structure pad = apply_frontier(single_node({"p"}), FrontierMode::chain_pad(2));
  REQUIRE(pad.n == 3);
  CHECK(pad.succ[0] == std::vector<NodeId>{1});
  CHECK(pad.succ[1] == std::vector<NodeId>{2});
  CHECK(pad.succ[2] == std::vector<NodeId>{2});
  for (NodeId v = 0; v < 3; ++v) CHECK(pad.labelled(v, "p"));
}

TEST_CASE("json round trip and validation") {
  TreeModel t = star({{"x"}, {}}, {"r"});
  TreeModel u = tree_from_json(tree_to_json(t));
  CHECK(same_tree(t, u));
  CHECK_THROWS_AS(tree_from_json("{"), InputError);
  CHECK_THROWS_AS(tree_from_json(R"({"root":0,"nodes":[{"id":0,"children":[0]}]})"), InputError);
  CHECK_THROWS_AS(tree_from_json(R"({"root":1,"nodes":[{"id":0}]})"), InputError);
}

TEST_CASE("tetration") {
  CHECK(tetration(0, 5) == 5);
  CHECK(tetration(1, 3) == 8);
  CHECK(tetration(3, 1) == 16);
  CHECK(tetration(2, 2) == 16);
  CHECK(tetration(3, 2) == 65536);
  CHECK_THROWS_AS(tetration(4, 2), CapExceeded);
}

}
