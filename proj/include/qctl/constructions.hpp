#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qctl/syntax.hpp"
#include "qctl/tiling.hpp"
#include "qctl/trees.hpp"

namespace qctl {

// Deterministic supply of bound-variable names: prefix followed by a per-prefix counter.
class Fresh {
 public:
  explicit Fresh(std::uint64_t seed = 0) : seed_(seed) {}
  std::string operator()(const std::string& prefix);
  void avoid(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }

 private:
  std::uint64_t seed_;
  std::map<std::string, std::uint64_t> next_;
  std::set<std::string> avoid_;
};

using NominalPath = std::vector<std::string>;

// p_i, val, h_i, v_i, layer_i and tile props.
std::string bit_prop(unsigned i);
std::string h_prop(unsigned i);
std::string v_prop(unsigned i);
std::string tile_prop(const std::string& tile, unsigned j);
inline const char* kVal = "val";

Formula ax_n(std::size_t k, Formula a);

// EX^k x & ~exists q.(EX^k(x & q) & EX^k(x & ~q))
Formula bind(const std::string& x, unsigned k, Fresh& fr);
// EX^k(x & f)
Formula at_k(const std::string& x, unsigned k, const Formula& f);
// EX(x1 & EX(x2 & ... f)); the empty path gives f.
Formula at(const NominalPath& path, const Formula& f);
Formula distinct_bind(const NominalPath& xs, unsigned k, Fresh& fr);
// bind(x1,1) & @x1 bind(x2,1) & ... ; the chain hypothesis of at-paths.
Formula bind_chain(const NominalPath& xs, Fresh& fr);
Formula hat(const NominalPath& xs, const NominalPath& ys, Fresh& fr);
Formula uni(const std::vector<std::string>& props, Fresh& fr);

// exists q1..qi (distinct_bind(q1..qi;1) & AX((q1 | ... | qi) <-> psi)); i = 0 gives AX ~psi.
Formula exactly(unsigned i, const Formula& psi, Fresh& fr);
// EX psi & ~exists q.(EX(psi & q) & EX(psi & ~q))
Formula exactly_one(const Formula& psi, Fresh& fr);
// exists x1,x2 (distinct_bind(x1,x2;1) & AX(x1 | x2))
Formula exactly_two_top(Fresh& fr);
Formula at_most_pow2(unsigned n, Fresh& fr);

inline constexpr unsigned kMaxGridExponent = 6;

// grid(2n) over h_0..h_{n-1}, v_0..v_{n-1}.
Formula grid(unsigned n, Fresh& fr);

enum class Axis { Horizontal, Vertical };
Formula neighbor(const std::string& x, const std::string& y, unsigned n, Axis axis);

struct AmtpComponents {
  Formula cov, hori, verti, tiling, init, coinci, acc, multi;
};

// Tile props t_<tile>_j; coinci relates j to jprime and multi relates j to j+1.
AmtpComponents amtp_components(const AmtpInstance& inst, unsigned j, unsigned jprime, Fresh& fr);
Formula amtp_reduction(const AmtpInstance& inst, Fresh& fr);

struct TypeFamily {
  Formula type, first, last, unique, compl_;
};

TypeFamily type_family(unsigned k, unsigned n, Fresh& fr,
                       std::uint64_t cap = kDefaultTetrationCap);

enum class Relation { Succ, Gt, Eq };
const char* relation_name(Relation r);

// Compares the nodes at the ends of xs and ys, both of type k - d. Gt(xs, ys) states
// [[xs]] < [[ys]].
Formula compare(unsigned k, unsigned n, const NominalPath& xs, const NominalPath& ys, Relation rel,
                Fresh& fr);

struct LsrNames {
  std::string l = "lft", s = "sel", r = "rgt";
};

// lsr_k(xs) with d = |xs| < k.
Formula lsr(unsigned k, unsigned n, const NominalPath& xs, const LsrNames& names, Fresh& fr);

Formula number_literal(unsigned value, unsigned n);
Formula nb_eq_tower(unsigned k, unsigned n);

Formula tiling_reduction(const TilingInstance& inst, unsigned k, Fresh& fr,
                         std::uint64_t cap = kDefaultTetrationCap);

// A type-k node numbered `number` with every descendant canonically numbered.
TreeModel canonical_type_tree(unsigned k, unsigned n, std::uint64_t number = 0,
                              std::uint64_t cap = kDefaultTetrationCap);

struct GridTree {
  TreeModel tree;
  std::vector<NodeId> leaf;  // leaf[H * 2^n + V]
};

GridTree canonical_grid_tree(unsigned n);

// Canonical type-(k+1) tree with tau(i,j) written on grandchild (i,j).
TreeModel tiling_witness_tree(const TilingInstance& inst, unsigned k, const Tiling& tau,
                              std::uint64_t cap = kDefaultTetrationCap);

}  // namespace qctl
