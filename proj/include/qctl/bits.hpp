#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qctl::bits {

using Word = std::uint64_t;

struct Kernels {
  const char* name;
  void (*and_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  void (*or_into)(Word* dst, const Word* a, const Word* b, std::size_t n);
  void (*andnot_into)(Word* dst, const Word* a, const Word* b, std::size_t n);  // a & ~b
  bool (*any)(const Word* a, std::size_t n);
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*subset)(const Word* a, const Word* b, std::size_t n);  // a ⊆ b
  bool (*equal)(const Word* a, const Word* b, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the build or the CPU lacks AVX2.
const Kernels* avx2_kernels();
const Kernels& active_kernels();
// Accepts "scalar", "avx2" or "auto"; returns false if the request cannot be honoured.
bool select_kernels(const std::string& which);

inline std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t nbits) : nbits_(nbits), w_(words_for(nbits), 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t words() const { return w_.size(); }
  const Word* data() const { return w_.data(); }
  Word* data() { return w_.data(); }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= Word{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(Word{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(w_.begin(), w_.end(), Word{0}); }
  void fill();

  bool any() const { return active_kernels().any(w_.data(), w_.size()); }
  bool none() const { return !any(); }
  std::size_t count() const { return active_kernels().popcount(w_.data(), w_.size()); }
  bool intersects(const NodeSet& o) const {
    return active_kernels().intersects(w_.data(), o.w_.data(), w_.size());
  }
  bool subset_of(const NodeSet& o) const {
    return active_kernels().subset(w_.data(), o.w_.data(), w_.size());
  }

  NodeSet& operator&=(const NodeSet& o) {
    active_kernels().and_into(w_.data(), w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  NodeSet& operator|=(const NodeSet& o) {
    active_kernels().or_into(w_.data(), w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  NodeSet& subtract(const NodeSet& o) {
    active_kernels().andnot_into(w_.data(), w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  NodeSet complement() const;

  friend bool operator==(const NodeSet& x, const NodeSet& y) {
    return x.nbits_ == y.nbits_ && active_kernels().equal(x.w_.data(), y.w_.data(), x.w_.size());
  }

  std::vector<std::size_t> members() const;

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> w_;
};

}  // namespace qctl::bits
