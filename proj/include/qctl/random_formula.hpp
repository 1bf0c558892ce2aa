#pragma once

#include <random>
#include <string>
#include <vector>

#include "qctl/syntax.hpp"

namespace qctl {

struct RandomFormulaOptions {
  std::vector<std::string> props{"p", "q"};
  unsigned max_modal_depth = 2;
  unsigned max_quantifiers = 2;
  unsigned max_size = 14;  // connective budget
  bool use_ax = true;
  bool use_iff = false;
};

// EX-fragment formulas; bound names are z0, z1, ... or occasionally a shadowed free prop.
Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts = {});

std::vector<Formula> random_pool(std::uint64_t seed, std::size_t count,
                                 const RandomFormulaOptions& opts = {});

}  // namespace qctl
