#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qctl/syntax.hpp"
#include "qctl/trees.hpp"

namespace qctl {

enum class Backend { Exhaustive, Pruned };

const char* backend_name(Backend b);
Backend parse_backend(const std::string& s);

// Truth sets of the outermost quantifier block, over explicit nodes.
struct Labeling {
  std::vector<std::string> props;
  std::vector<std::vector<NodeId>> true_at;
};

struct CheckOutcome {
  bool verdict = false;
  std::optional<Labeling> witness;
  bool counterexample = false;  // witness refutes an outermost Forall
};

inline constexpr std::uint64_t kDefaultVariantCap = 50'000'000;

struct CheckOptions {
  Backend backend = Backend::Pruned;
  bool want_witness = false;
  std::uint64_t variant_cap = kDefaultVariantCap;  // Exhaustive only
};

class Checker {
 public:
  explicit Checker(const Formula& f, CheckOptions opts = {});
  ~Checker();
  Checker(Checker&&) noexcept;
  Checker& operator=(Checker&&) noexcept;

  bool holds(const Structure& s, NodeId v);
  CheckOutcome run(const Structure& s, NodeId v);

  // Body evaluations the Exhaustive backend performs on a structure with `n_explicit` nodes;
  // saturates at 2^63.
  long double exhaustive_cost(std::size_t n_explicit) const;
  const Formula& formula() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CheckOutcome check(const TreeModel& t, FrontierMode m, NodeId v, const Formula& f,
                   Backend b = Backend::Pruned, bool want_witness = true);

// Applies a labeling to a copy of t.
TreeModel apply_labeling(const TreeModel& t, const Labeling& l);

bool equivalent_on_small_trees(const Formula& f, const Formula& g, unsigned max_branching,
                               unsigned depth, const std::vector<std::string>& props,
                               Backend b = Backend::Pruned,
                               std::size_t cap = kDefaultEnumerationCap);

Formula to_pnf(const Formula& f);

}  // namespace qctl
