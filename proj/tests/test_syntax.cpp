#include "doctest.h"

#include "qctl/syntax.hpp"

using namespace qctl;

TEST_SUITE("syntax") {

TEST_CASE("parse builds the expected trees") {
  using namespace qctl::f;
  CHECK(structurally_equal(parse("EX p"), ex(prop("p"))));
  CHECK(structurally_equal(parse("exists p. EX (x & p)"),
                           exists("p", ex(conj(prop("x"), prop("p"))))));
  CHECK(structurally_equal(parse("E[ p U q ]"), eu(prop("p"), prop("q"))));
}

TEST_CASE("render") {
  using namespace qctl::f;
  CHECK(render(ex(prop("p"))) == "EX p");
  CHECK(render(exists("p", conj(prop("p"), neg(prop("p"))))) == "exists p. (p & ~p)");
  CHECK(render(eu(top(), prop("q"))) == "E[ true U q ]");
}

TEST_CASE("render and parse round trip") {
  for (const char* s : {"p", "~(p & q)", "A[ p U EX q ]", "forall z. (z -> AXAG z)",
                        "EF p <-> p | EXEF p", "exists p. forall q. (p & q)"}) {
    Formula x = parse(s);
    CHECK(structurally_equal(parse(render(x)), x));
  }
}

TEST_CASE("modal depth") {
  CHECK(modal_depth(parse("p")) == 0);
  CHECK(modal_depth(parse("EX EX p")) == 2);
  CHECK(modal_depth(parse("exists p. E[p U EX q]")) == 2);
}

TEST_CASE("length") {
  CHECK(length(parse("p")) == 1);
  CHECK(length(parse("~(p & q)")) == 4);
  CHECK(length(parse("EX p")) == 2);
}

TEST_CASE("fragments") {
  CHECK(fragment_of(parse("EX p & AX q")) == Fragment::ExOnly);
  CHECK(fragment_of(parse("EF p")) == Fragment::EfOnly);
  CHECK(fragment_of(parse("EXEF p")) == Fragment::ExefOnly);
  CHECK(fragment_of(parse("EX p & EF q")) == Fragment::Full);
}

TEST_CASE("desugar") {
  CHECK(structurally_equal(desugar(parse("EF p")), parse("E[true U p]")));
  CHECK(structurally_equal(desugar(parse("AX p")), parse("~EX ~p")));
  CHECK(structurally_equal(desugar(parse("p")), parse("p")));
}

TEST_CASE("free props respect binders") {
  auto fp = free_props(parse("(exists p. (p & q)) & p"));
  CHECK(fp == std::set<std::string>{"p", "q"});
  CHECK(free_props(parse("exists p. (p & q) & p")) == std::set<std::string>{"q"});
  CHECK(quantifier_count(parse("exists p. forall q. (p | q)")) == 2);
  CHECK(is_prenex(parse("exists p. EX p")));
  CHECK_FALSE(is_prenex(parse("EX exists p. p")));
}

TEST_CASE("parse errors carry a position") {
  try {
    parse("EX (p &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 7);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("p q"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

}
