#include "doctest.h"

#include "fixtures.hpp"
#include "qctl/checker.hpp"

using namespace qctl;
using fixtures::chain;
using fixtures::star;

namespace {

bool holds(const TreeModel& t, const char* text, FrontierMode m = FrontierMode::self_loop(),
           Backend b = Backend::Pruned) {
  return check(t, m, t.root, parse(text), b).verdict;
}

}  // namespace

TEST_SUITE("checker") {

TEST_CASE("atomic and quantified verdicts") {
  TreeModel p = single_node({"p"});
  for (Backend b : {Backend::Pruned, Backend::Exhaustive}) {
    CHECK(holds(p, "p", FrontierMode::self_loop(), b));
    CHECK_FALSE(holds(p, "exists q. q & ~p", FrontierMode::self_loop(), b));
    CHECK(holds(star({{"x"}, {}}), "EX x & ~exists q.(EX(x&q) & EX(x&~q))",
                FrontierMode::self_loop(), b));
    CHECK_FALSE(holds(star({{"x"}, {"x"}}), "EX x & ~exists q.(EX(x&q) & EX(x&~q))",
                      FrontierMode::self_loop(), b));
  }
}

TEST_CASE("frontier modes change leaf behaviour") {
  TreeModel leaf = single_node({"p"});
  CHECK_FALSE(holds(leaf, "EX true", FrontierMode::strict()));
  CHECK(holds(leaf, "AX false", FrontierMode::strict()));
  CHECK(holds(leaf, "EX p", FrontierMode::self_loop()));
  CHECK(holds(leaf, "AG p", FrontierMode::chain_pad(3)));
  CHECK(holds(chain({{}, {}, {"q"}}), "EF q"));
  CHECK(holds(chain({{"p"}, {"p"}, {"q"}}), "E[p U q]"));
  CHECK_FALSE(holds(chain({{"p"}, {}, {"q"}}), "E[p U q]"));
  CHECK(holds(star({{"q"}, {"q"}}, {"p"}), "A[p U q]"));
  CHECK_FALSE(holds(star({{"q"}, {}}, {"p"}), "A[p U q]"));
  CHECK(holds(chain({{}, {"q"}}), "EXEF q"));
  CHECK_FALSE(holds(single_node({"q"}), "EXEF q", FrontierMode::strict()));
}

TEST_CASE("second-order quantification ranges over all labellings") {
  // Some labelling marks exactly one child.
  TreeModel t = star({{}, {}, {}});
  CHECK(holds(t, "exists z. (EX z & EX ~z)"));
  CHECK_FALSE(holds(single_node(), "exists z. (z & ~z)"));
  CHECK(holds(t, "forall z. (z -> z)"));
  CHECK_FALSE(holds(t, "forall z. EX z"));
  // Shadowing: the inner z is independent of the outer one.
  CHECK(holds(t, "exists z. (z & exists z. ~z)"));
}

TEST_CASE("witness labellings satisfy the body") {
  TreeModel t = star({{"p"}, {}});
  CheckOutcome r = check(t, FrontierMode::strict(), t.root, parse("exists z. (EX (z & p) & AX (z -> p))"));
  REQUIRE(r.verdict);
  REQUIRE(r.witness);
  TreeModel labelled = apply_labeling(t, *r.witness);
  CHECK(check(labelled, FrontierMode::strict(), t.root, parse("EX (z & p) & AX (z -> p)")).verdict);
}

TEST_CASE("prenex normal form") {
  CHECK(structurally_equal(to_pnf(parse("EX exists p. p")), parse("exists p. EX p")));
  CHECK(structurally_equal(to_pnf(parse("~forall p. EX p")), parse("exists p. ~EX p")));
  CHECK(structurally_equal(to_pnf(parse("exists p. EX p")), parse("exists p. EX p")));
  Formula f = parse("EX exists p. p & AX forall q. (q | r)");
  Formula g = to_pnf(f);
  CHECK(is_prenex(g));
  CHECK(equivalent_on_small_trees(f, g, 2, 1, {"r"}));
}

TEST_CASE("equivalence on small trees") {
  CHECK(equivalent_on_small_trees(parse("EF p"), parse("p | EXEF p"), 2, 2, {"p"}));
  CHECK(equivalent_on_small_trees(parse("EX p"), parse("EX p"), 2, 1, {"p"}));
  CHECK_FALSE(equivalent_on_small_trees(parse("EX p"), parse("AX p"), 2, 1, {"p"}));
}

TEST_CASE("backends agree on a batch of formulas") {
  auto space = TreeSpace::by_size(4, {"p"});
  std::vector<Formula> fs;
  for (const char* s : {"exists z. EX (z & p)", "forall z. (EX z | AX ~z)",
                        "exists z. (z & AG (z -> EX z))", "forall z. exists y. (EX(z <-> y))",
                        "exists z. E[z U p]"})
    fs.push_back(parse(s));
  for (std::size_t i = 0; i < space.size(); ++i) {
    TreeModel t = space.at(i);
    for (const auto& f : fs)
      for (auto m : {FrontierMode::strict(), FrontierMode::self_loop()}) {
        if (m.kind == FrontierMode::Kind::Strict && render(f).find('U') != std::string::npos)
          continue;
        CHECK(check(t, m, t.root, f, Backend::Pruned, false).verdict ==
              check(t, m, t.root, f, Backend::Exhaustive, false).verdict);
      }
  }
}

TEST_CASE("exhaustive backend refuses oversized variant spaces") {
  auto t = TreeSpace::by_size(12, {}, 1).at(11);
  REQUIRE(t.size() == 12);
  CheckOptions o;
  o.backend = Backend::Exhaustive;
  o.variant_cap = 1000;
  Checker c(parse("exists a. exists b. EX (a & b)"), o);
  CHECK_THROWS_AS(c.holds(apply_frontier(t, FrontierMode::strict()), t.root), CapExceeded);
}

}
