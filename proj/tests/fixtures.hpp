#pragma once

#include <string>
#include <vector>

#include "qctl/trees.hpp"

namespace fixtures {

using Labels = std::vector<std::string>;

// Root labelled `root` with one child per entry of `kids`.
inline qctl::TreeModel star(const std::vector<Labels>& kids, Labels root = {}) {
  qctl::TreeModel t;
  t.root = t.add_node(root);
  for (const auto& k : kids) t.add_node(k, t.root);
  return t;
}

inline qctl::TreeModel chain(const std::vector<Labels>& labels) {
  qctl::TreeModel t;
  qctl::NodeId prev = -1;
  for (const auto& l : labels) {
    qctl::NodeId v = t.add_node(l, prev);
    if (prev < 0) t.root = v;
    prev = v;
  }
  return t;
}

}  // namespace fixtures
