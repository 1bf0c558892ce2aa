#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qctl/checker.hpp"
#include "qctl/syntax.hpp"
#include "qctl/trees.hpp"

namespace qctl {

struct SatOutcome {
  enum class Kind { Sat, UnsatWithinBound, Unsat };
  Kind kind = Kind::Unsat;
  std::optional<TreeModel> witness;
  std::string bound;          // set for UnsatWithinBound
  std::size_t examined = 0;   // candidate trees checked

  bool sat() const { return kind == Kind::Sat; }
};

const char* sat_kind_name(SatOutcome::Kind k);

struct SatOptions {
  Backend backend = Backend::Pruned;
  std::size_t cap = kDefaultEnumerationCap;
};

// Complete for EX-fragment formulas on trees of branching <= N: searches trees whose
// branches all have length md(f), labelled over the free props of f, under SelfLoop.
SatOutcome sat_ex_bounded(const Formula& f, unsigned N, const SatOptions& opts = {});

struct FiniteSatOptions {
  Backend backend = Backend::Pruned;
  std::size_t cap = kDefaultEnumerationCap;
  unsigned max_branching = 0;  // 0: unbounded
  // Props enumerated as labels. Free props of f outside the alphabet are existentially
  // closed and the witness carries the labelling the checker found for them.
  std::optional<std::vector<std::string>> alphabet;
};

// Bounded search over all trees with at most max_size nodes; never answers Unsat.
SatOutcome sat_finite_tree(const Formula& f, unsigned max_size, FrontierMode mode,
                           const FiniteSatOptions& opts = {});

}  // namespace qctl
