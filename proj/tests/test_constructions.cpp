#include "doctest.h"

#include <functional>

#include "fixtures.hpp"
#include "qctl/checker.hpp"
#include "qctl/constructions.hpp"

using namespace qctl;
using fixtures::star;

namespace {

bool at_root(const TreeModel& t, const Formula& f) {
  return check(t, FrontierMode::strict(), t.root, f, Backend::Pruned, false).verdict;
}

// Copies `sub` below `parent` of `t`.
void graft(TreeModel& t, NodeId parent, const TreeModel& sub) {
  std::function<void(NodeId, NodeId)> go = [&](NodeId v, NodeId p) {
    NodeId u = t.add_node(sub.labels[static_cast<std::size_t>(v)], p);
    for (NodeId c : sub.children[static_cast<std::size_t>(v)]) go(c, u);
  };
  go(sub.root, parent);
}

AmtpInstance checkerboard_amtp() {
  AmtpInstance inst;
  inst.n = 1;
  inst.tiles = {"a", "b"};
  inst.hori = inst.verti = {{"a", "b"}, {"b", "a"}};
  inst.t0 = {"a", "b"};
  inst.acc = {"a", "b"};
  return inst;
}

TilingInstance checkerboard_tiling() {
  TilingInstance inst;
  inst.tiles = {"a", "b"};
  inst.hori = inst.verti = {{"a", "b"}, {"b", "a"}};
  inst.init = {"a"};
  return inst;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("bind") {
  Fresh fr;
  Formula b1 = bind("x", 1, fr);
  CHECK(at_root(star({{"x"}, {}}), b1));
  CHECK_FALSE(at_root(star({{"x"}, {"x"}}), b1));
  CHECK_FALSE(at_root(star({{"x"}, {}}), bind("x", 2, fr)));
}

TEST_CASE("at paths") {
  Formula p = parse("p");
  CHECK(structurally_equal(at({}, p), p));
  CHECK(structurally_equal(at({"x"}, p), parse("EX (x & p)")));
  CHECK(structurally_equal(at({"x", "y"}, p), parse("EX (x & EX (y & p))")));
}

TEST_CASE("distinct nominals") {
  Fresh fr;
  Formula d = distinct_bind({"x", "y"}, 1, fr);
  CHECK(at_root(star({{"x"}, {"y"}}), d));
  CHECK_FALSE(at_root(star({{"x", "y"}}), d));
  Formula one = distinct_bind({"x"}, 1, fr);
  for (auto kids : std::vector<std::vector<fixtures::Labels>>{{{"x"}, {}}, {{"x"}, {"x"}}, {}})
    CHECK(at_root(star(kids), one) == at_root(star(kids), bind("x", 1, fr)));
}

TEST_CASE("uni") {
  Fresh fr;
  Formula u = uni({"p"}, fr);
  CHECK(at_root(star({{}, {"p"}}), u));
  CHECK_FALSE(at_root(star({{}, {}}), u));
  CHECK(at_root(star({{}}), u));
}

TEST_CASE("counting children") {
  Fresh fr;
  CHECK(at_root(star({{}, {}}), exactly(2, parse("true"), fr)));
  CHECK_FALSE(at_root(star({{}, {}, {}}), exactly(2, parse("true"), fr)));
  CHECK(structurally_equal(exactly(0, parse("p"), fr), parse("AX ~p")));
  CHECK(at_root(star({{"p"}, {}}), exactly_one(parse("p"), fr)));
  CHECK_FALSE(at_root(star({{"p"}, {"p"}}), exactly_one(parse("p"), fr)));
  CHECK(at_root(star({{}, {}}), exactly_two_top(fr)));
  CHECK_FALSE(at_root(star({{}, {}, {}}), at_most_pow2(1, fr)));
  CHECK(at_root(star({{}, {}}), at_most_pow2(1, fr)));
}

TEST_CASE("grid") {
  Fresh fr;
  Formula g = grid(1, fr);
  GridTree gt = canonical_grid_tree(1);
  CHECK(at_root(gt.tree, g));
  TreeModel dup = gt.tree;
  dup.remove_label(gt.leaf[1 * 2 + 0], "h0");  // (1,0) now collides with (0,0)
  CHECK_FALSE(at_root(dup, g));
  CHECK_FALSE(at_root(fixtures::chain({{}, {}, {}}), g));
}

TEST_CASE("neighbours") {
  GridTree gt = canonical_grid_tree(1);
  auto place = [&](std::size_t xh, std::size_t xv, std::size_t yh, std::size_t yv) {
    TreeModel t = gt.tree;
    t.add_label(gt.leaf[xh * 2 + xv], "x");
    t.add_label(gt.leaf[yh * 2 + yv], "y");
    return t;
  };
  Formula hn = neighbor("x", "y", 1, Axis::Horizontal);
  Formula vn = neighbor("x", "y", 1, Axis::Vertical);
  CHECK(at_root(place(0, 0, 1, 0), hn));
  CHECK_FALSE(at_root(place(0, 0, 0, 1), hn));
  CHECK(at_root(place(0, 0, 0, 1), vn));
  CHECK_FALSE(at_root(place(1, 1, 1, 1), hn));
  CHECK_FALSE(at_root(place(1, 0, 0, 0), hn));
}

TEST_CASE("AMTP components on the 2x2 grid") {
  AmtpInstance inst = checkerboard_amtp();
  Fresh fr;
  AmtpComponents c = amtp_components(inst, 1, 2, fr);
  GridTree gt = canonical_grid_tree(1);
  TreeModel board = gt.tree, flat = gt.tree, twice = gt.tree;
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t v = 0; v < 2; ++v) {
      board.add_label(gt.leaf[h * 2 + v], tile_prop((h + v) % 2 ? "b" : "a", 1));
      flat.add_label(gt.leaf[h * 2 + v], tile_prop("a", 1));
      twice.add_label(gt.leaf[h * 2 + v], tile_prop("a", 1));
    }
  twice.add_label(gt.leaf[3], tile_prop("b", 1));
  CHECK(at_root(board, c.tiling));
  CHECK(at_root(flat, c.cov));
  CHECK_FALSE(at_root(flat, c.hori));
  CHECK_FALSE(at_root(twice, c.cov));

  inst.acc.clear();
  Fresh fr2;
  CHECK_FALSE(at_root(board, amtp_components(inst, 1, 2, fr2).acc));
}

TEST_CASE("AMTP reduction shape") {
  AmtpInstance inst;
  inst.n = 2;
  inst.tiles = {"a"};
  inst.hori = inst.verti = inst.multi = {{"a", "a"}};
  inst.t0 = inst.acc = {"a"};
  Fresh fr;
  Formula phi = amtp_reduction(inst, fr);
  REQUIRE(phi->op == Op::And);
  Formula q = phi->b;
  REQUIRE(q->op == Op::Forall);
  CHECK(q->name == "t_a_1");
  REQUIRE(q->a->op == Op::Exists);
  CHECK(q->a->name == "t_a_2");
  CHECK(fragment_of(phi) == Fragment::ExOnly);
  inst.n = 3;
  Fresh fr2;
  CHECK_THROWS_AS(amtp_reduction(inst, fr2), PreconditionError);
}

TEST_CASE("type family") {
  Fresh fr;
  CHECK(structurally_equal(type_family(0, 2, fr).type, parse("true")));
  CHECK(structurally_equal(type_family(0, 2, fr).first, parse("~p1 & ~p0")));
  Formula t1 = type_family(1, 1, fr).type;
  CHECK(at_root(canonical_type_tree(1, 1), t1));
  CHECK_FALSE(at_root(star({{}, {}}), t1));
  CHECK_FALSE(at_root(star({{"p0"}, {"p0"}}), t1));
  CHECK(at_root(canonical_type_tree(2, 1), type_family(2, 1, fr).type));
}

TEST_CASE("comparisons at depth one") {
  Fresh fr;
  Formula succ = compare(1, 2, {"x"}, {"y"}, Relation::Succ, fr);
  CHECK(at_root(star({{"x", "p0"}, {"y", "p1"}}), succ));
  CHECK_FALSE(at_root(star({{"x", "p1"}, {"y", "p0"}}), succ));
  Formula eq = compare(1, 2, {"x"}, {"y"}, Relation::Eq, fr);
  CHECK(at_root(star({{"x", "p0"}, {"y", "p0"}}), eq));
  CHECK_FALSE(at_root(star({{"x", "p0"}, {"y"}}), eq));
}

TEST_CASE("comparisons between type-1 children") {
  Fresh fr;
  auto pair = [](std::uint64_t a, std::uint64_t b) {
    TreeModel t = single_node();
    graft(t, t.root, canonical_type_tree(1, 1, a));
    graft(t, t.root, canonical_type_tree(1, 1, b));
    const auto& kids = t.children[0];
    t.add_label(kids[0], "x");
    t.add_label(kids[1], "y");
    return t;
  };
  Formula gt = compare(2, 1, {"x"}, {"y"}, Relation::Gt, fr);
  CHECK(at_root(pair(1, 2), gt));
  CHECK_FALSE(at_root(pair(2, 1), gt));
  CHECK_FALSE(at_root(pair(3, 3), gt));
  CHECK(at_root(pair(3, 3), compare(2, 1, {"x"}, {"y"}, Relation::Eq, fr)));
  CHECK(at_root(pair(0, 1), compare(2, 1, {"x"}, {"y"}, Relation::Succ, fr)));
}

TEST_CASE("lsr partitions the children of a type-1 node") {
  Fresh fr;
  Formula f = lsr(1, 1, {}, LsrNames{}, fr);
  auto labelled = [](fixtures::Labels c0, fixtures::Labels c1) {
    TreeModel t = canonical_type_tree(1, 1);
    for (const auto& p : c0) t.add_label(t.children[0][0], p);
    for (const auto& p : c1) t.add_label(t.children[0][1], p);
    return t;
  };
  CHECK(at_root(labelled({"rgt"}, {"sel"}), f));
  CHECK_FALSE(at_root(labelled({"sel"}, {"sel"}), f));
  CHECK_FALSE(at_root(labelled({"sel", "lft"}, {"rgt"}), f));
  // The number under rgt is below the one under sel, which is below the one under lft.
  CHECK(at_root(labelled({"sel"}, {"lft"}), f));
  CHECK_FALSE(at_root(labelled({"lft"}, {"sel"}), f));
  CHECK_FALSE(at_root(labelled({"sel"}, {"rgt"}), f));
}

TEST_CASE("tower numbers") {
  CHECK(structurally_equal(nb_eq_tower(1, 1), parse("AX(val <-> (p0))")));
  Formula f = nb_eq_tower(1, 1);
  CHECK(at_root(canonical_type_tree(1, 1, 2), f));
  CHECK_FALSE(at_root(canonical_type_tree(1, 1, 3), f));
  CHECK_FALSE(at_root(canonical_type_tree(1, 1, 1), f));
  CHECK(at_root(canonical_type_tree(2, 1, 4), nb_eq_tower(2, 1)));
}

TEST_CASE("tiling reduction") {
  TilingInstance inst = checkerboard_tiling();
  Fresh fr;
  Formula phi = tiling_reduction(inst, 1, fr);
  REQUIRE(phi->op == Op::And);
  REQUIRE(phi->b->op == Op::Exists);
  CHECK(prefix_length(phi->b) == 3);
  CHECK(fragment_of(phi) == Fragment::ExOnly);

  Tiling tau{2, {0, 1, 1, 0}};
  CHECK(at_root(tiling_witness_tree(inst, 1, tau), phi));
  Tiling flat{2, {0, 0, 0, 0}};
  CHECK_FALSE(at_root(tiling_witness_tree(inst, 1, flat), phi));

  inst.hori.clear();
  Fresh fr2;
  CHECK_FALSE(at_root(tiling_witness_tree(inst, 1, tau), tiling_reduction(inst, 1, fr2)));
}

TEST_CASE("fresh names are deterministic") {
  Fresh a(5), b(5);
  CHECK(render(grid(1, a)) == render(grid(1, b)));
  Fresh c;
  c.avoid({"x0"});
  CHECK(c("x") == "x1");
}

}
