#include "doctest.h"

#include "qctl/tiling.hpp"

using namespace qctl;

namespace {

TilingInstance checkerboard() {
  TilingInstance inst;
  inst.tiles = {"a", "b"};
  inst.hori = inst.verti = {{"a", "b"}, {"b", "a"}};
  inst.init = {"a"};
  return inst;
}

AmtpInstance singleton_amtp() {
  AmtpInstance inst;
  inst.n = 2;
  inst.tiles = {"a"};
  inst.hori = inst.verti = inst.multi = {{"a", "a"}};
  inst.t0 = inst.acc = {"a"};
  return inst;
}

}  // namespace

TEST_SUITE("tiling") {

TEST_CASE("validate") {
  TilingInstance inst = checkerboard();
  CHECK(validate_tiling(inst, 1, Tiling{2, {0, 1, 1, 0}}));
  CHECK_FALSE(validate_tiling(inst, 1, Tiling{2, {1, 0, 0, 1}}));
  CHECK_FALSE(validate_tiling(inst, 1, Tiling{2, {0, 0, 0, 0}}));
  CHECK_THROWS(validate_tiling(inst, 1, Tiling{3, std::vector<std::size_t>(9, 0)}));
}

TEST_CASE("solve") {
  TilingInstance inst = checkerboard();
  auto sol = solve_tiling(inst, 1);
  REQUIRE(sol);
  CHECK(validate_tiling(inst, 1, *sol));
  inst.hori.clear();
  CHECK_FALSE(solve_tiling(inst, 1));
  TilingInstance one;
  one.tiles = {"a"};
  one.hori = one.verti = {{"a", "a"}};
  one.init = {"a", "a"};
  auto c = solve_tiling(one, 1);
  REQUIRE(c);
  CHECK(c->side == 4);
  for (auto x : c->cells) CHECK(x == 0);
}

TEST_CASE("solver agrees with enumeration on two tiles") {
  // Every choice of relations over {a,b}, side 2.
  for (unsigned hm = 0; hm < 16; ++hm)
    for (unsigned vm = 0; vm < 16; ++vm) {
      TilingInstance inst;
      inst.tiles = {"a", "b"};
      inst.init = {"a"};
      for (unsigned i = 0; i < 4; ++i) {
        TilePair p{inst.tiles[i / 2], inst.tiles[i % 2]};
        if ((hm >> i) & 1U) inst.hori.push_back(p);
        if ((vm >> i) & 1U) inst.verti.push_back(p);
      }
      bool any = false;
      for (unsigned m = 0; m < 16 && !any; ++m) {
        Tiling t{2, {m & 1U, (m >> 1) & 1U, (m >> 2) & 1U, (m >> 3) & 1U}};
        any = validate_tiling(inst, 1, t);
      }
      CHECK(solve_tiling(inst, 1).has_value() == any);
    }
}

TEST_CASE("AMTP") {
  AmtpInstance inst = singleton_amtp();
  CHECK(solve_amtp(inst));
  inst.acc.clear();
  CHECK_FALSE(solve_amtp(inst));
  AmtpInstance empty = singleton_amtp();
  empty.t0.clear();
  CHECK(solve_amtp(empty));
  AmtpInstance odd = singleton_amtp();
  odd.n = 3;
  CHECK_THROWS(solve_amtp(odd));
}

TEST_CASE("instance files") {
  auto inst = tiling_instance_from_json(
      R"({"tiles":["a","b"],"hori":[["a","b"],["b","a"]],"verti":[["a","b"],["b","a"]],"init":["a"]})");
  CHECK(inst.n() == 1);
  CHECK(solve_tiling(inst, 1).has_value());
  CHECK_THROWS_AS(tiling_instance_from_json(R"({"tiles":["a"],"hori":[["a","c"]],"init":["a"]})"),
                  InputError);
  auto am = amtp_instance_from_json(
      R"({"n":2,"tiles":["a"],"hori":[["a","a"]],"verti":[["a","a"]],"t0":["a"],"acc":["a"],"multi":[["a","a"]]})");
  CHECK(solve_amtp(am));
}

}
