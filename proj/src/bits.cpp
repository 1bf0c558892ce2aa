#include "qctl/bits.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>

namespace qctl::bits {

namespace {

void s_and(Word* d, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] & b[i];
}
void s_or(Word* d, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] | b[i];
}
void s_andnot(Word* d, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] & ~b[i];
}
bool s_any(const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return true;
  return false;
}
bool s_intersects(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}
bool s_subset(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}
bool s_equal(const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}
std::size_t s_popcount(const Word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

const Kernels kScalar{"scalar", s_and, s_or, s_andnot, s_any, s_intersects, s_subset, s_equal,
                      s_popcount};

const Kernels* avx2_if_supported() {
  return avx2_kernels();
}

const Kernels* initial() {
  if (const char* env = std::getenv("QCTL_KERNELS")) {
    if (std::string(env) == "scalar") return &kScalar;
  }
  if (const Kernels* k = avx2_if_supported()) return k;
  return &kScalar;
}

std::atomic<const Kernels*>& current() {
  static std::atomic<const Kernels*> k{initial()};
  return k;
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active_kernels() { return *current().load(std::memory_order_relaxed); }

bool select_kernels(const std::string& which) {
  if (which == "scalar") {
    current().store(&kScalar);
    return true;
  }
  if (which == "avx2") {
    const Kernels* k = avx2_if_supported();
    if (!k) return false;
    current().store(k);
    return true;
  }
  if (which == "auto") {
    const Kernels* k = avx2_if_supported();
    current().store(k ? k : &kScalar);
    return true;
  }
  return false;
}

void NodeSet::fill() {
  std::fill(w_.begin(), w_.end(), ~Word{0});
  if (nbits_ & 63) w_.back() &= (Word{1} << (nbits_ & 63)) - 1;
}

NodeSet NodeSet::complement() const {
  NodeSet out(nbits_);
  out.fill();
  out.subtract(*this);
  return out;
}

std::vector<std::size_t> NodeSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < w_.size(); ++wi) {
    Word x = w_[wi];
    while (x) {
      out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

}  // namespace qctl::bits
