#include "doctest.h"

#include "qctl/sat.hpp"

using namespace qctl;

TEST_SUITE("sat") {

TEST_CASE("bounded branching for the EX fragment") {
  Formula f = parse("EX p & EX ~p");
  SatOutcome one = sat_ex_bounded(f, 1);
  CHECK(one.kind == SatOutcome::Kind::Unsat);
  SatOutcome two = sat_ex_bounded(f, 2);
  REQUIRE(two.sat());
  REQUIRE(two.witness);
  const TreeModel& w = *two.witness;
  CHECK(w.children[static_cast<std::size_t>(w.root)].size() == 2);
  CHECK(check(w, FrontierMode::self_loop(), w.root, f).verdict);
  CHECK(sat_ex_bounded(parse("false"), 3).kind == SatOutcome::Kind::Unsat);
}

TEST_CASE("quantified EX formulas") {
  CHECK(sat_ex_bounded(parse("exists z. (EX z & EX ~z)"), 2).sat());
  CHECK_FALSE(sat_ex_bounded(parse("forall z. EX z"), 3).sat());
  CHECK(sat_ex_bounded(parse("AX p & EX EX ~p"), 1).sat());
}

TEST_CASE("EX fragment preconditions") {
  CHECK_THROWS_AS(sat_ex_bounded(parse("EF p"), 2), PreconditionError);
  CHECK_THROWS_AS(sat_ex_bounded(parse("EX p"), 0), PreconditionError);
  SatOptions tight;
  tight.cap = 10;
  CHECK_THROWS_AS(sat_ex_bounded(parse("EX EX EX (p & q)"), 3, tight), CapExceeded);
}

TEST_CASE("finite trees") {
  Formula f = parse("EX true");
  SatOutcome a = sat_finite_tree(f, 1, FrontierMode::strict());
  CHECK(a.kind == SatOutcome::Kind::UnsatWithinBound);
  CHECK_FALSE(a.bound.empty());
  SatOutcome b = sat_finite_tree(f, 2, FrontierMode::strict());
  REQUIRE(b.sat());
  CHECK(b.witness->size() == 2);
  for (unsigned s : {1u, 3u, 5u})
    CHECK(sat_finite_tree(parse("AXAG false & EXEF true"), s, FrontierMode::strict()).kind ==
          SatOutcome::Kind::UnsatWithinBound);
}

TEST_CASE("finite search closes props outside the alphabet") {
  FiniteSatOptions o;
  o.alphabet = std::vector<std::string>{};
  SatOutcome r = sat_finite_tree(parse("EX q & EX ~q"), 3, FrontierMode::strict(), o);
  REQUIRE(r.sat());
  const TreeModel& w = *r.witness;
  CHECK(check(w, FrontierMode::strict(), w.root, parse("EX q & EX ~q")).verdict);
}

TEST_CASE("strict mode rejects until operators") {
  CHECK_THROWS_AS(sat_finite_tree(parse("E[p U q]"), 3, FrontierMode::strict()), PreconditionError);
  CHECK(sat_finite_tree(parse("E[p U q]"), 1, FrontierMode::self_loop()).sat());
  CHECK(sat_finite_tree(parse("EF p & ~p"), 2, FrontierMode::strict()).sat());
}

}
