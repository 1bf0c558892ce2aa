#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qctl/bits.hpp"
#include "qctl/errors.hpp"
#include "qctl/tetration.hpp"

namespace qctl {

using NodeId = int;

struct TreeModel {
  std::vector<std::vector<NodeId>> children;
  std::vector<std::vector<std::string>> labels;  // sorted, duplicate-free
  std::vector<std::int64_t> ids;                 // external ids, defaults to the index
  NodeId root = 0;

  std::size_t size() const { return children.size(); }
  NodeId add_node(std::vector<std::string> node_labels = {}, NodeId parent = -1);
  bool has(NodeId v, const std::string& p) const;
  void add_label(NodeId v, const std::string& p);
  void remove_label(NodeId v, const std::string& p);

  std::vector<NodeId> parents() const;
  std::vector<int> depths() const;
  int height() const;
  std::vector<NodeId> leaves() const;
  NodeId node_by_id(std::int64_t id) const;
  // Throws InputError when (root, children) is not a rooted tree.
  void validate() const;
};

TreeModel single_node(std::vector<std::string> labels = {});
TreeModel tree_from_json(const std::string& text);
std::string tree_to_json(const TreeModel& t);
TreeModel load_tree(const std::string& path);

bool same_tree(const TreeModel& x, const TreeModel& y);

struct KripkeStructure {
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<std::string>> labels;

  std::size_t size() const { return succ.size(); }
  bool is_total() const;
};

TreeModel unfold(const KripkeStructure& k, int w, std::size_t depth);

struct FrontierMode {
  enum class Kind { Strict, SelfLoop, ChainPad };
  Kind kind = Kind::SelfLoop;
  unsigned pad = 0;

  static FrontierMode strict() { return {Kind::Strict, 0}; }
  static FrontierMode self_loop() { return {Kind::SelfLoop, 0}; }
  static FrontierMode chain_pad(unsigned d) { return {Kind::ChainPad, d}; }
  std::string name() const;
};

FrontierMode parse_frontier(const std::string& s, unsigned pad);

// The finite graph that the checker evaluates: explicit nodes first (same indices as the
// tree), then pad copies.
struct Structure {
  std::size_t n = 0;
  std::size_t n_explicit = 0;
  NodeId root = 0;
  bool strict = false;
  std::vector<std::vector<NodeId>> succ;
  std::vector<NodeId> rep;             // explicit node whose labels a node carries
  std::vector<std::uint8_t> self_loop;
  std::vector<NodeId> order;           // successors before predecessors, self-loops ignored
  std::unordered_map<std::string, bits::NodeSet> label_sets;

  const bits::NodeSet* label_set(const std::string& p) const;
  bool labelled(NodeId v, const std::string& p) const;
};

Structure apply_frontier(const TreeModel& t, FrontierMode m);

// Node types and numbers for the tower-counting construction.
bool node_type(const TreeModel& t, NodeId v, unsigned k, unsigned n,
               std::uint64_t cap = kDefaultTetrationCap);
BigNat node_number(const TreeModel& t, NodeId v, unsigned k, unsigned n,
                   std::uint64_t cap = kDefaultTetrationCap);

// All 2^|T| relabelings of p, in node-index bitmask order.
class Variants {
 public:
  Variants(const TreeModel& t, std::string p);
  std::uint64_t count() const { return std::uint64_t{1} << base_.size(); }
  bool next(TreeModel& out);
  void restart() { mask_ = 0; }

 private:
  TreeModel base_;
  std::string p_;
  std::uint64_t mask_ = 0;
};

inline constexpr std::size_t kDefaultEnumerationCap = 4'000'000;

// A restartable, indexable family of labelled trees. Sibling order is canonical
// (non-decreasing subtree index) so no two members are sibling permutations of each other.
class TreeSpace {
 public:
  // Every branch has exactly `depth` edges.
  static TreeSpace exact_depth(unsigned max_branching, unsigned depth,
                               const std::vector<std::string>& props,
                               std::size_t cap = kDefaultEnumerationCap);
  // Any branch lengths up to `max_depth` (leaves allowed anywhere).
  static TreeSpace up_to_depth(unsigned max_branching, unsigned max_depth,
                               const std::vector<std::string>& props,
                               std::size_t cap = kDefaultEnumerationCap);
  // All trees with at most `max_size` nodes; `max_branching` = 0 means unbounded and
  // `max_depth` < 0 means unbounded.
  static TreeSpace by_size(unsigned max_size, const std::vector<std::string>& props,
                           unsigned max_branching = 0, int max_depth = -1,
                           std::size_t cap = kDefaultEnumerationCap);
  // by_size with every node labelled by one of `masks` (bitmasks over props).
  static TreeSpace by_size_with_labels(unsigned max_size, const std::vector<std::string>& props,
                                       const std::vector<std::uint32_t>& masks,
                                       unsigned max_branching = 0, int max_depth = -1,
                                       std::size_t cap = kDefaultEnumerationCap);

  // Count that the constructor would materialise, without building anything.
  static long double estimate_exact_depth(unsigned max_branching, unsigned depth,
                                          std::size_t nlabels);
  static long double estimate_up_to_depth(unsigned max_branching, unsigned max_depth,
                                          std::size_t nlabels);

  std::size_t size() const { return top_.size(); }
  TreeModel at(std::size_t i) const;
  std::size_t node_count(std::size_t i) const { return entries_[top_[i]].size; }
  const std::vector<std::string>& props() const { return props_; }

 private:
  struct Entry {
    std::uint32_t labels;
    std::uint32_t size;
    std::uint32_t height;
    std::uint32_t first_kid;  // offset into kids_
    std::uint32_t nkids;
  };
  std::vector<std::string> props_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> kids_;
  std::vector<std::uint32_t> top_;

  std::uint32_t push_entry(std::uint32_t labels, const std::vector<std::uint32_t>& kids);
  void sort_top_by_size();
};

TreeSpace enumerate_trees(unsigned max_branching, unsigned exact_depth,
                          const std::vector<std::string>& props,
                          std::size_t cap = kDefaultEnumerationCap);

}  // namespace qctl
