#include "qctl/trees.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qctl {

using json = nlohmann::json;

// ---------------------------------------------------------------- TreeModel

NodeId TreeModel::add_node(std::vector<std::string> node_labels, NodeId parent) {
  std::sort(node_labels.begin(), node_labels.end());
  node_labels.erase(std::unique(node_labels.begin(), node_labels.end()), node_labels.end());
  NodeId v = static_cast<NodeId>(children.size());
  children.emplace_back();
  labels.push_back(std::move(node_labels));
  ids.push_back(v);
  if (parent >= 0) children[parent].push_back(v);
  return v;
}

bool TreeModel::has(NodeId v, const std::string& p) const {
  return std::binary_search(labels[v].begin(), labels[v].end(), p);
}

void TreeModel::add_label(NodeId v, const std::string& p) {
  auto& ls = labels[v];
  auto it = std::lower_bound(ls.begin(), ls.end(), p);
  if (it == ls.end() || *it != p) ls.insert(it, p);
}

void TreeModel::remove_label(NodeId v, const std::string& p) {
  auto& ls = labels[v];
  auto it = std::lower_bound(ls.begin(), ls.end(), p);
  if (it != ls.end() && *it == p) ls.erase(it);
}

std::vector<NodeId> TreeModel::parents() const {
  std::vector<NodeId> par(size(), -1);
  for (std::size_t v = 0; v < size(); ++v)
    for (NodeId c : children[v]) par[c] = static_cast<NodeId>(v);
  return par;
}

std::vector<int> TreeModel::depths() const {
  std::vector<int> d(size(), -1);
  if (size() == 0) return d;
  std::deque<NodeId> q{root};
  d[root] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (NodeId c : children[v]) {
      d[c] = d[v] + 1;
      q.push_back(c);
    }
  }
  return d;
}

int TreeModel::height() const {
  auto d = depths();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<NodeId> TreeModel::leaves() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (children[v].empty()) out.push_back(static_cast<NodeId>(v));
  return out;
}

NodeId TreeModel::node_by_id(std::int64_t id) const {
  for (std::size_t v = 0; v < ids.size(); ++v)
    if (ids[v] == id) return static_cast<NodeId>(v);
  throw InputError("unknown node id " + std::to_string(id));
}

void TreeModel::validate() const {
  if (size() == 0) throw InputError("tree has no nodes");
  if (labels.size() != size() || ids.size() != size())
    throw InputError("tree arrays have inconsistent sizes");
  if (root < 0 || static_cast<std::size_t>(root) >= size()) throw InputError("root out of range");
  std::vector<int> indeg(size(), 0);
  for (const auto& cs : children)
    for (NodeId c : cs) {
      if (c < 0 || static_cast<std::size_t>(c) >= size())
        throw InputError("child index out of range");
      ++indeg[c];
    }
  if (indeg[root] != 0) throw InputError("root has a parent (cycle)");
  for (std::size_t v = 0; v < size(); ++v) {
    if (static_cast<NodeId>(v) != root && indeg[v] != 1)
      throw InputError("node " + std::to_string(ids[v]) +
                       (indeg[v] == 0 ? " is an orphan" : " has several parents"));
  }
  auto d = depths();
  for (std::size_t v = 0; v < size(); ++v)
    if (d[v] < 0) throw InputError("node " + std::to_string(ids[v]) + " lies on a cycle");
}

TreeModel single_node(std::vector<std::string> labels) {
  TreeModel t;
  t.add_node(std::move(labels));
  return t;
}

TreeModel tree_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("tree file is not valid JSON: ") + e.what());
  }
  try {
    TreeModel t;
    std::unordered_map<std::int64_t, NodeId> index;
    const auto& nodes = doc.at("nodes");
    for (const auto& n : nodes) {
      std::int64_t id = n.at("id").get<std::int64_t>();
      if (id < 0) throw InputError("negative node id");
      if (index.count(id)) throw InputError("duplicate node id " + std::to_string(id));
      std::vector<std::string> ls;
      if (n.contains("labels")) ls = n.at("labels").get<std::vector<std::string>>();
      NodeId v = t.add_node(std::move(ls));
      t.ids[v] = id;
      index[id] = v;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].contains("children")) continue;
      for (const auto& c : nodes[i].at("children")) {
        auto it = index.find(c.get<std::int64_t>());
        if (it == index.end())
          throw InputError("child id " + std::to_string(c.get<std::int64_t>()) + " is undefined");
        t.children[i].push_back(it->second);
      }
    }
    auto it = index.find(doc.at("root").get<std::int64_t>());
    if (it == index.end()) throw InputError("root id is undefined");
    t.root = it->second;
    t.validate();
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed tree file: ") + e.what());
  }
}

std::string tree_to_json(const TreeModel& t) {
  json nodes = json::array();
  for (std::size_t v = 0; v < t.size(); ++v) {
    json cs = json::array();
    for (NodeId c : t.children[v]) cs.push_back(t.ids[c]);
    nodes.push_back({{"id", t.ids[v]}, {"labels", t.labels[v]}, {"children", cs}});
  }
  json doc = {{"root", t.ids[t.root]}, {"nodes", nodes}};
  return doc.dump();
}

TreeModel load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open tree file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tree_from_json(ss.str());
}

bool same_tree(const TreeModel& x, const TreeModel& y) {
  return x.root == y.root && x.children == y.children && x.labels == y.labels;
}

// ---------------------------------------------------------------- Kripke

bool KripkeStructure::is_total() const {
  return std::all_of(succ.begin(), succ.end(), [](const auto& s) { return !s.empty(); });
}

TreeModel unfold(const KripkeStructure& k, int w, std::size_t depth) {
  if (w < 0 || static_cast<std::size_t>(w) >= k.size())
    throw PreconditionError("world out of range");
  TreeModel t;
  struct Item {
    NodeId node;
    int world;
    std::size_t depth;
  };
  std::deque<Item> q;
  q.push_back({t.add_node(k.labels[w]), w, 0});
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (it.depth == depth) continue;
    for (int u : k.succ[it.world]) {
      NodeId c = t.add_node(k.labels[u], it.node);
      q.push_back({c, u, it.depth + 1});
    }
  }
  return t;
}

// ---------------------------------------------------------------- frontier

std::string FrontierMode::name() const {
  switch (kind) {
    case Kind::Strict: return "strict";
    case Kind::SelfLoop: return "selfloop";
    case Kind::ChainPad: return "chainpad(" + std::to_string(pad) + ")";
  }
  return "?";
}

FrontierMode parse_frontier(const std::string& s, unsigned pad) {
  if (s == "strict") return FrontierMode::strict();
  if (s == "selfloop" || s == "self-loop") return FrontierMode::self_loop();
  if (s == "chainpad" || s == "chain-pad") {
    if (pad == 0) throw InputError("chainpad needs --pad >= 1");
    return FrontierMode::chain_pad(pad);
  }
  throw InputError("unknown frontier mode '" + s + "'");
}

const bits::NodeSet* Structure::label_set(const std::string& p) const {
  auto it = label_sets.find(p);
  return it == label_sets.end() ? nullptr : &it->second;
}

bool Structure::labelled(NodeId v, const std::string& p) const {
  const bits::NodeSet* s = label_set(p);
  return s && s->test(static_cast<std::size_t>(v));
}

Structure apply_frontier(const TreeModel& t, FrontierMode m) {
  Structure s;
  s.n_explicit = t.size();
  s.root = t.root;
  s.strict = m.kind == FrontierMode::Kind::Strict;
  s.succ = t.children;
  s.rep.resize(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) s.rep[v] = static_cast<NodeId>(v);
  s.self_loop.assign(t.size(), 0);
  if (m.kind != FrontierMode::Kind::Strict) {
    unsigned d = m.kind == FrontierMode::Kind::ChainPad ? m.pad : 0;
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (!t.children[v].empty()) continue;
      NodeId prev = static_cast<NodeId>(v);
      for (unsigned i = 0; i < d; ++i) {
        NodeId c = static_cast<NodeId>(s.succ.size());
        s.succ.emplace_back();
        s.rep.push_back(static_cast<NodeId>(v));
        s.self_loop.push_back(0);
        s.succ[prev].push_back(c);
        prev = c;
      }
      s.succ[prev].push_back(prev);
      s.self_loop[prev] = 1;
    }
  }
  s.n = s.succ.size();

  // Post-order over the tree edges.
  std::vector<std::uint8_t> seen(s.n, 0);
  s.order.reserve(s.n);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  auto visit = [&](NodeId start) {
    stack.push_back({start, 0});
    seen[start] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < s.succ[v].size()) {
        NodeId w = s.succ[v][i++];
        if (w != v && !seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        s.order.push_back(v);
        stack.pop_back();
      }
    }
  };
  if (s.n) visit(s.root);
  for (std::size_t v = 0; v < s.n; ++v)
    if (!seen[v]) visit(static_cast<NodeId>(v));

  for (std::size_t v = 0; v < s.n; ++v) {
    for (const auto& p : t.labels[s.rep[v]]) {
      auto it = s.label_sets.find(p);
      if (it == s.label_sets.end()) it = s.label_sets.emplace(p, bits::NodeSet(s.n)).first;
      it->second.set(v);
    }
  }
  return s;
}

// ---------------------------------------------------------------- node types

namespace {

BigNat number_unchecked(const TreeModel& t, NodeId v, unsigned k, unsigned n) {
  BigNat out = 0;
  if (k == 0) {
    for (unsigned i = 0; i < n; ++i)
      if (t.has(v, "p" + std::to_string(i))) bit_set(out, i);
    return out;
  }
  for (NodeId c : t.children[v]) {
    if (!t.has(c, "val")) continue;
    BigNat m = number_unchecked(t, c, k - 1, n);
    if (m > BigNat(std::numeric_limits<unsigned>::max()))
      throw CapExceeded("child number too large to exponentiate", "--tetration-cap");
    bit_set(out, m.convert_to<unsigned>());
  }
  return out;
}

bool type_rec(const TreeModel& t, NodeId v, unsigned k, unsigned n, std::uint64_t cap) {
  if (k == 0) return true;
  std::uint64_t want = tetration_u64(k, n, cap);
  if (t.children[v].size() != want) return false;
  for (NodeId c : t.children[v])
    if (!type_rec(t, c, k - 1, n, cap)) return false;
  std::vector<std::uint8_t> seen(want, 0);
  for (NodeId c : t.children[v]) {
    BigNat m = number_unchecked(t, c, k - 1, n);
    if (m >= want) return false;
    auto i = m.convert_to<std::uint64_t>();
    if (seen[i]) return false;
    seen[i] = 1;
  }
  return true;
}

}  // namespace

bool node_type(const TreeModel& t, NodeId v, unsigned k, unsigned n, std::uint64_t cap) {
  return type_rec(t, v, k, n, cap);
}

BigNat node_number(const TreeModel& t, NodeId v, unsigned k, unsigned n, std::uint64_t cap) {
  if (!type_rec(t, v, k, n, cap))
    throw PreconditionError("node_number: node is not of type " + std::to_string(k));
  return number_unchecked(t, v, k, n);
}

// ---------------------------------------------------------------- variants

Variants::Variants(const TreeModel& t, std::string p) : base_(t), p_(std::move(p)) {
  if (base_.size() > 63) throw CapExceeded("variants over more than 63 nodes", "a smaller tree");
}

bool Variants::next(TreeModel& out) {
  if (mask_ >= count()) return false;
  out = base_;
  for (std::size_t v = 0; v < out.size(); ++v) {
    if ((mask_ >> v) & 1u) {
      out.add_label(static_cast<NodeId>(v), p_);
    } else {
      out.remove_label(static_cast<NodeId>(v), p_);
    }
  }
  ++mask_;
  return true;
}

// ---------------------------------------------------------------- enumeration

namespace {

long double multichoose(long double m, unsigned j) {
  long double r = 1;
  for (unsigned i = 1; i <= j; ++i) r = r * (m + i - 1) / i;
  return r;
}

// Calls fn on every non-decreasing sequence of length `len` over [lo, hi).
void for_each_multiset(std::uint32_t lo, std::uint32_t hi, unsigned len,
                       const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t start) {
    if (cur.size() == len) {
      fn(cur);
      return;
    }
    for (std::uint32_t i = start; i < hi; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  if (len == 0) {
    fn(cur);
    return;
  }
  if (lo < hi) rec(lo);
}

}  // namespace

long double TreeSpace::estimate_exact_depth(unsigned max_branching, unsigned depth,
                                            std::size_t nlabels) {
  long double level = static_cast<long double>(nlabels), total = level;
  for (unsigned h = 1; h <= depth; ++h) {
    long double next = 0;
    for (unsigned j = 1; j <= max_branching; ++j) next += multichoose(level, j);
    level = next * nlabels;
    total += level;
  }
  return total;
}

long double TreeSpace::estimate_up_to_depth(unsigned max_branching, unsigned max_depth,
                                            std::size_t nlabels) {
  long double level = static_cast<long double>(nlabels), total = level;
  for (unsigned h = 1; h <= max_depth; ++h) {
    long double next = 0;
    for (unsigned j = 0; j <= max_branching; ++j) next += multichoose(level, j);
    level = next * nlabels;
    total += level;
  }
  return total;
}

std::uint32_t TreeSpace::push_entry(std::uint32_t labels, const std::vector<std::uint32_t>& kids) {
  Entry e{labels, 1, 0, static_cast<std::uint32_t>(kids_.size()),
          static_cast<std::uint32_t>(kids.size())};
  for (std::uint32_t k : kids) {
    e.size += entries_[k].size;
    e.height = std::max(e.height, entries_[k].height + 1);
    kids_.push_back(k);
  }
  entries_.push_back(e);
  return static_cast<std::uint32_t>(entries_.size() - 1);
}

void TreeSpace::sort_top_by_size() {
  std::stable_sort(top_.begin(), top_.end(), [&](std::uint32_t a, std::uint32_t b) {
    return entries_[a].size < entries_[b].size;
  });
}

static std::size_t label_count(const std::vector<std::string>& props) {
  if (props.size() > 16) throw CapExceeded("more than 16 propositions", "fewer propositions");
  return std::size_t{1} << props.size();
}

TreeSpace TreeSpace::exact_depth(unsigned max_branching, unsigned depth,
                                 const std::vector<std::string>& props, std::size_t cap) {
  std::size_t nl = label_count(props);
  long double est = estimate_exact_depth(max_branching, depth, nl);
  if (est > static_cast<long double>(cap))
    throw CapExceeded("enumeration would build about " + std::to_string(static_cast<double>(est)) +
                          " subtrees", "--enum-cap", est);
  TreeSpace s;
  s.props_ = props;
  std::uint32_t lo = 0, hi = 0;
  for (std::uint32_t m = 0; m < nl; ++m) s.push_entry(m, {});
  hi = static_cast<std::uint32_t>(s.entries_.size());
  for (unsigned h = 1; h <= depth; ++h) {
    std::uint32_t nlo = hi;
    for (unsigned j = 1; j <= max_branching; ++j)
      for_each_multiset(lo, hi, j, [&](const std::vector<std::uint32_t>& kids) {
        for (std::uint32_t m = 0; m < nl; ++m) s.push_entry(m, kids);
      });
    lo = nlo;
    hi = static_cast<std::uint32_t>(s.entries_.size());
  }
  for (std::uint32_t i = lo; i < hi; ++i) s.top_.push_back(i);
  s.sort_top_by_size();
  return s;
}

TreeSpace TreeSpace::up_to_depth(unsigned max_branching, unsigned max_depth,
                                 const std::vector<std::string>& props, std::size_t cap) {
  std::size_t nl = label_count(props);
  long double est = estimate_up_to_depth(max_branching, max_depth, nl);
  if (est > static_cast<long double>(cap))
    throw CapExceeded("enumeration would build about " + std::to_string(static_cast<double>(est)) +
                          " subtrees", "--enum-cap", est);
  TreeSpace s;
  s.props_ = props;
  for (std::uint32_t m = 0; m < nl; ++m) s.push_entry(m, {});
  std::uint32_t lo = 0, hi = static_cast<std::uint32_t>(s.entries_.size());
  for (unsigned h = 1; h <= max_depth; ++h) {
    std::uint32_t nlo = hi;
    for (unsigned j = 0; j <= max_branching; ++j)
      for_each_multiset(lo, hi, j, [&](const std::vector<std::uint32_t>& kids) {
        for (std::uint32_t m = 0; m < nl; ++m) s.push_entry(m, kids);
      });
    lo = nlo;
    hi = static_cast<std::uint32_t>(s.entries_.size());
  }
  for (std::uint32_t i = lo; i < hi; ++i) s.top_.push_back(i);
  s.sort_top_by_size();
  return s;
}

TreeSpace TreeSpace::by_size(unsigned max_size, const std::vector<std::string>& props,
                             unsigned max_branching, int max_depth, std::size_t cap) {
  std::vector<std::uint32_t> masks(label_count(props));
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  return by_size_with_labels(max_size, props, masks, max_branching, max_depth, cap);
}

TreeSpace TreeSpace::by_size_with_labels(unsigned max_size, const std::vector<std::string>& props,
                                         const std::vector<std::uint32_t>& masks,
                                         unsigned max_branching, int max_depth,
                                         std::size_t cap) {
  std::size_t nl = label_count(props);
  for (std::uint32_t m : masks)
    if (m >= nl) throw PreconditionError("label mask outside the proposition set");
  TreeSpace s;
  s.props_ = props;
  if (max_size == 0) return s;
  std::vector<std::uint32_t> size_start{0, 0};  // entries of size z start at size_start[z]
  for (std::uint32_t m : masks) s.push_entry(m, {});
  for (unsigned z = 2; z <= max_size; ++z) {
    size_start.push_back(static_cast<std::uint32_t>(s.entries_.size()));
    std::uint32_t avail = size_start[z];  // entries of size < z
    std::vector<std::uint32_t> cur;
    std::function<void(std::uint32_t, unsigned)> rec = [&](std::uint32_t start, unsigned rem) {
      if (rem == 0) {
        std::uint32_t h = 0;
        for (std::uint32_t k : cur) h = std::max(h, s.entries_[k].height + 1);
        if (max_depth >= 0 && h > static_cast<std::uint32_t>(max_depth)) return;
        for (std::uint32_t m : masks) {
          s.push_entry(m, cur);
          if (s.entries_.size() > cap)
            throw CapExceeded("enumeration exceeded " + std::to_string(cap) + " subtrees",
                              "--enum-cap", static_cast<long double>(cap));
        }
        return;
      }
      if (max_branching && cur.size() == max_branching) return;
      for (std::uint32_t i = start; i < avail; ++i) {
        if (s.entries_[i].size > rem) break;
        cur.push_back(i);
        rec(i, rem - s.entries_[i].size);
        cur.pop_back();
      }
    };
    rec(0, z - 1);
  }
  for (std::uint32_t i = 0; i < s.entries_.size(); ++i) {
    if (max_depth < 0 || s.entries_[i].height <= static_cast<std::uint32_t>(max_depth))
      s.top_.push_back(i);
  }
  return s;
}

TreeModel TreeSpace::at(std::size_t i) const {
  TreeModel t;
  auto labels_of = [&](std::uint32_t mask) {
    std::vector<std::string> ls;
    for (std::size_t b = 0; b < props_.size(); ++b)
      if ((mask >> b) & 1u) ls.push_back(props_[b]);
    return ls;
  };
  std::deque<std::pair<std::uint32_t, NodeId>> q;
  std::uint32_t e0 = top_[i];
  q.push_back({e0, t.add_node(labels_of(entries_[e0].labels))});
  while (!q.empty()) {
    auto [e, v] = q.front();
    q.pop_front();
    const Entry& en = entries_[e];
    for (std::uint32_t k = 0; k < en.nkids; ++k) {
      std::uint32_t ce = kids_[en.first_kid + k];
      NodeId c = t.add_node(labels_of(entries_[ce].labels), v);
      q.push_back({ce, c});
    }
  }
  return t;
}

TreeSpace enumerate_trees(unsigned max_branching, unsigned exact_depth,
                          const std::vector<std::string>& props, std::size_t cap) {
  return TreeSpace::exact_depth(max_branching, exact_depth, props, cap);
}

}  // namespace qctl
