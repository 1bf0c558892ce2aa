#include "doctest.h"

#include <random>

#include "qctl/bits.hpp"

using namespace qctl::bits;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<Word> w(n);
  for (auto& x : w) {
    switch (rng() % 4) {
      case 0: x = 0; break;
      case 1: x = ~Word{0}; break;
      default: x = rng();
    }
  }
  return w;
}

}  // namespace

TEST_SUITE("bits") {

TEST_CASE("avx2 kernels agree with the scalar kernels") {
  const Kernels* v = avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 unavailable, only the scalar kernel is exercised");
    return;
  }
  const Kernels& s = scalar_kernels();
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 64u, 67u}) {
    for (int rep = 0; rep < 50; ++rep) {
      auto a = random_words(rng, n);
      auto b = rep % 5 == 0 ? a : random_words(rng, n);
      if (rep % 7 == 0)
        for (std::size_t i = 0; i < n; ++i) b[i] |= a[i];
      std::vector<Word> d1(n), d2(n);
      s.and_into(d1.data(), a.data(), b.data(), n);
      v->and_into(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
      s.or_into(d1.data(), a.data(), b.data(), n);
      v->or_into(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
      s.andnot_into(d1.data(), a.data(), b.data(), n);
      v->andnot_into(d2.data(), a.data(), b.data(), n);
      CHECK(d1 == d2);
      CHECK(s.any(a.data(), n) == v->any(a.data(), n));
      CHECK(s.intersects(a.data(), b.data(), n) == v->intersects(a.data(), b.data(), n));
      CHECK(s.subset(a.data(), b.data(), n) == v->subset(a.data(), b.data(), n));
      CHECK(s.equal(a.data(), b.data(), n) == v->equal(a.data(), b.data(), n));
      CHECK(s.popcount(a.data(), n) == v->popcount(a.data(), n));
    }
  }
}

TEST_CASE("kernel selection") {
  CHECK(select_kernels("scalar"));
  CHECK(std::string(active_kernels().name) == scalar_kernels().name);
  CHECK_FALSE(select_kernels("neon"));
  CHECK(select_kernels("auto"));
}

TEST_CASE("NodeSet operations") {
  NodeSet a(130), b(130);
  a.set(0);
  a.set(129);
  b.set(129);
  CHECK(a.count() == 2);
  CHECK(b.subset_of(a));
  CHECK_FALSE(a.subset_of(b));
  CHECK(a.intersects(b));
  NodeSet c = a.complement();
  CHECK(c.count() == 128);
  CHECK_FALSE(c.test(0));
  CHECK_FALSE(c.intersects(a));
  a.subtract(b);
  CHECK(a.members() == std::vector<std::size_t>{0});
  a |= b;
  CHECK(a.count() == 2);
  a &= b;
  CHECK(a == b);
  a.clear();
  CHECK(a.none());
  a.fill();
  CHECK(a.count() == 130);
}

}
