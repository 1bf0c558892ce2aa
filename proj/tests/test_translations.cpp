#include "doctest.h"

#include "fixtures.hpp"
#include "qctl/checker.hpp"
#include "qctl/translations.hpp"

using namespace qctl;

namespace {

void conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f->op == Op::And) {
    conjuncts(f->a, out);
    conjuncts(f->b, out);
  } else {
    out.push_back(f);
  }
}

bool has_conjunct(const Formula& f, const Formula& g) {
  std::vector<Formula> xs;
  conjuncts(f, xs);
  for (const auto& x : xs)
    if (structurally_equal(x, g)) return true;
  return false;
}

}  // namespace

TEST_SUITE("translations") {

TEST_CASE("shape formulas") {
  Formula s0 = shape_formula(0);
  CHECK(all_props(s0) == std::set<std::string>{"layer_m1", "layer0", "p"});
  CHECK(has_conjunct(s0, parse("layer0")));
  CHECK(has_conjunct(shape_formula(1),
                     parse("AG(layer1 -> ~exists p.(p & EF(layer1 & ~p)))")));
  // No-stuttering clauses skip layer_m1.
  std::vector<Formula> xs;
  conjuncts(shape_formula(2), xs);
  std::size_t stutter = 0;
  for (const auto& x : xs) {
    if (x->op != Op::AG || x->a->op != Op::Implies || x->a->b->op != Op::Not) continue;
    ++stutter;
    CHECK_FALSE(all_props(x).count("layer_m1"));
  }
  CHECK(stutter == 3);
}

TEST_CASE("layered trees") {
  TreeModel t = fixtures::chain({{"layer1"}, {"layer0"}, {"layer_m1"}});
  CHECK(is_k_layered(t, 1).verdict);
  CHECK(check(t, FrontierMode::self_loop(), t.root, shape_formula(1)).verdict);
  TreeModel no_root = fixtures::chain({{"layer0"}, {"layer_m1"}});
  auto r = is_k_layered(no_root, 1);
  CHECK_FALSE(r.verdict);
  CHECK(r.condition == 'd');
  TreeModel both = fixtures::chain({{"layer1"}, {"layer0", "layer1"}, {"layer_m1"}});
  r = is_k_layered(both, 1);
  CHECK_FALSE(r.verdict);
  CHECK(r.condition == 'a');
  TreeModel stutter = fixtures::chain({{"layer1"}, {"layer1"}, {"layer0"}, {"layer_m1"}});
  CHECK_FALSE(is_k_layered(stutter, 1).verdict);
  CHECK_FALSE(check(stutter, FrontierMode::self_loop(), stutter.root, shape_formula(1)).verdict);
}

TEST_CASE("EX to EF") {
  CHECK(structurally_equal(ex_to_ef(parse("EX p")),
                           f::conj(parse("EF(layer0 & p)"), shape_formula(1))));
  CHECK(structurally_equal(ex_to_ef(parse("p")), f::conj(parse("p"), shape_formula(0))));
  CHECK(structurally_equal(ex_to_ef(parse("exists q. EX q")),
                           f::conj(parse("exists q. EF(layer0 & q)"), shape_formula(1))));
  Formula t = trans_ef(2, parse("AX EX p"));
  CHECK(fragment_of(t) == Fragment::EfOnly);
  CHECK_FALSE(all_props(t).count("layer_m1"));
  CHECK_THROWS_AS(ex_to_ef(parse("EF p")), PreconditionError);
}

TEST_CASE("decorated witnesses satisfy the EF translation") {
  Formula f = parse("EX p & EX ~p & AX EX q");
  TreeModel w = fixtures::star({{"p"}, {}});
  fixtures::Labels q{"q"};
  w.add_node(q, 1);
  w.add_node(q, 2);
  REQUIRE(check(w, FrontierMode::self_loop(), w.root, f).verdict);
  TreeModel d = decorate_layers(w, 2, false);
  CHECK(is_k_layered(d, 2).verdict);
  for (unsigned pad = 1; pad <= 3; ++pad)
    CHECK(check(d, FrontierMode::chain_pad(pad), d.root, ex_to_ef(f)).verdict);
}

TEST_CASE("EX to EXEF over finite trees") {
  CHECK(structurally_equal(ex_to_exef_finite(parse("EX p")),
                           f::conj(parse("EXEF(layer0 & p)"), shape_finite(1))));
  CHECK(has_conjunct(shape_finite(2), parse("AXAG(layer0 -> ~EXEF true)")));
  CHECK(structurally_equal(ex_to_exef_finite(parse("p & ~q")),
                           f::conj(parse("p & ~q"), shape_finite(0))));
  CHECK(fragment_of(ex_to_exef_finite(parse("EX EX p"))) == Fragment::ExefOnly);
  CHECK_FALSE(has_conjunct(shape_finite(2, false), parse("EXEF layer1")));
}

TEST_CASE("finite into infinite") {
  Formula fin = parse("in & AF ~in & AG(~in -> AG ~in)");
  std::vector<Formula> got, want;
  conjuncts(phi_fin(), got);
  conjuncts(fin, want);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(structurally_equal(got[i], want[i]));
  CHECK(structurally_equal(embed_finite_in_infinite(parse("EX p")),
                           f::conj(parse("EX(in & p)"), phi_fin())));
  CHECK(structurally_equal(embed_finite_in_infinite(parse("p")), f::conj(parse("p"), phi_fin())));
}

TEST_CASE("EXEF into infinite trees") {
  CHECK(structurally_equal(phi_fin_gt(), parse("in & AXAG(~in -> AXAG ~in)")));
  GtEmbedding e = embed_gt_in_infinite(parse("EXEF p"));
  CHECK(structurally_equal(e.embedded, f::conj(parse("EXEF(in & p)"), phi_fin_gt())));
  std::vector<Formula> got;
  conjuncts(totalize(parse("p")), got);
  REQUIRE(got.size() == 3);
  CHECK(structurally_equal(got[0], parse("p")));
  CHECK(structurally_equal(got[1], parse("EXEF true")));
  CHECK(structurally_equal(got[2], parse("AXAG EXEF true")));
  CHECK_THROWS_AS(embed_gt_in_infinite(parse("EX p")), PreconditionError);
}

TEST_CASE("modality rewriting") {
  CHECK(structurally_equal(rewrite_modality(parse("EX p"), ModalityMap::ExExef),
                           parse("EXEF p")));
  CHECK(structurally_equal(rewrite_modality(parse("AX p"), ModalityMap::ExExef),
                           parse("AXAG p")));
  CHECK(structurally_equal(rewrite_modality(parse("EX AX p"), ModalityMap::ExEf),
                           parse("EF AG p")));
  for (const char* s : {"EX p & AX ~q", "exists z. EX (z & AX EX z)", "p"}) {
    Formula x = parse(s);
    for (auto m : {ModalityMap::ExExef, ModalityMap::ExEf})
      CHECK(structurally_equal(rewrite_modality(rewrite_modality(x, m), m, true), x));
  }
  CHECK_THROWS_AS(rewrite_modality(parse("EF p"), ModalityMap::ExExef), PreconditionError);
  CHECK_THROWS_AS(parse_modality_map("ex-au"), InputError);
}

}
