#include "qctl/checker.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <unordered_map>

namespace qctl {

using bits::NodeSet;
using bits::Word;

const char* backend_name(Backend b) { return b == Backend::Exhaustive ? "exhaustive" : "pruned"; }

Backend parse_backend(const std::string& s) {
  if (s == "exhaustive") return Backend::Exhaustive;
  if (s == "pruned") return Backend::Pruned;
  throw InputError("unknown backend '" + s + "'");
}

namespace {

struct CNode {
  Op op;
  int a = -1;
  int b = -1;
  int free_prop = -1;
  int slot = -1;
  std::vector<int> block;
  int body = -1;
  std::vector<int> free_slots;
  bool has_quant = false;
};

struct Compiled {
  std::vector<CNode> nodes;
  std::vector<std::string> free_names;
  std::vector<std::string> slot_names;
  int root = -1;
  bool has_until = false;

  int add(CNode n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size() - 1);
  }

  static std::vector<int> merge(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
  }

  void finish(int id) {
    CNode& n = nodes[id];
    std::vector<int> fs;
    bool hq = false;
    if (n.op == Op::Prop && n.slot >= 0) fs.push_back(n.slot);
    for (int c : {n.a, n.b, n.body}) {
      if (c < 0) continue;
      fs = merge(fs, nodes[c].free_slots);
      hq = hq || nodes[c].has_quant;
    }
    if (!n.block.empty()) {
      std::vector<int> blk = n.block;
      std::sort(blk.begin(), blk.end());
      std::vector<int> rest;
      std::set_difference(fs.begin(), fs.end(), blk.begin(), blk.end(), std::back_inserter(rest));
      fs = std::move(rest);
      hq = true;
    }
    n.free_slots = std::move(fs);
    n.has_quant = hq;
  }

  int compile(const Formula& g, std::vector<std::pair<std::string, int>>& scope) {
    CNode n;
    n.op = g->op;
    switch (g->op) {
      case Op::Prop: {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == g->name) {
            n.slot = it->second;
            break;
          }
        if (n.slot < 0) {
          auto it = std::find(free_names.begin(), free_names.end(), g->name);
          n.free_prop = static_cast<int>(it - free_names.begin());
          if (it == free_names.end()) free_names.push_back(g->name);
        }
        break;
      }
      case Op::Exists:
      case Op::Forall: {
        const Node* cur = g.get();
        std::size_t pushed = 0;
        while (cur->op == g->op) {
          int s = static_cast<int>(slot_names.size());
          slot_names.push_back(cur->name);
          scope.push_back({cur->name, s});
          n.block.push_back(s);
          ++pushed;
          cur = cur->a.get();
        }
        Formula body(g, cur);
        n.body = compile(body, scope);
        scope.resize(scope.size() - pushed);
        break;
      }
      case Op::EXEF:
      case Op::AXAG: {
        CNode inner;
        inner.op = g->op == Op::EXEF ? Op::EF : Op::AG;
        inner.a = compile(g->a, scope);
        int iid = add(std::move(inner));
        finish(iid);
        n.a = iid;
        break;
      }
      default:
        if (g->op == Op::EU || g->op == Op::AU || g->op == Op::AF) has_until = true;
        if (g->a) n.a = compile(g->a, scope);
        if (g->b) n.b = compile(g->b, scope);
        break;
    }
    int id = add(std::move(n));
    finish(id);
    return id;
  }

  explicit Compiled(const Formula& g) {
    std::vector<std::pair<std::string, int>> scope;
    root = compile(g, scope);
  }
};

long double cost_rec(const Compiled& c, int id, long double mult, std::size_t e) {
  const CNode& n = c.nodes[id];
  long double total = 0;
  if (!n.block.empty()) {
    long double m = mult * std::pow(2.0L, static_cast<long double>(e * n.block.size()));
    total += m;
    total += cost_rec(c, n.body, m, e);
    return total;
  }
  if (n.a >= 0) total += cost_rec(c, n.a, mult, e);
  if (n.b >= 0) total += cost_rec(c, n.b, mult, e);
  return total;
}

// ---------------------------------------------------------------- exhaustive

class Global {
 public:
  Global(const Compiled& c, const Structure& s, std::uint64_t cap) : c_(c), s_(s), cap_(cap) {
    succ_sets_.reserve(s.n);
    for (std::size_t u = 0; u < s.n; ++u) {
      NodeSet ns(s.n);
      for (NodeId w : s.succ[u]) ns.set(static_cast<std::size_t>(w));
      succ_sets_.push_back(std::move(ns));
    }
    slot_val_.assign(c.slot_names.size(), NodeSet(s.n));
    cache_.resize(c.nodes.size());
    for (const auto& name : c.free_names) {
      const NodeSet* p = s.label_set(name);
      props_.push_back(p ? *p : NodeSet(s.n));
    }
  }

  NodeSet eval(int id) {
    if (cache_[id]) return *cache_[id];
    NodeSet r = compute(id);
    if (c_.nodes[id].free_slots.empty()) cache_[id] = r;
    return r;
  }

  std::size_t block_bits(const CNode& n) const { return n.block.size() * s_.n_explicit; }

  void assign_block(const CNode& n, std::uint64_t mask) {
    std::size_t e = s_.n_explicit;
    for (std::size_t j = 0; j < n.block.size(); ++j) {
      NodeSet& v = slot_val_[n.block[j]];
      v.clear();
      for (std::size_t u = 0; u < s_.n; ++u) {
        std::size_t bit = j * e + static_cast<std::size_t>(s_.rep[u]);
        if ((mask >> bit) & 1u) v.set(u);
      }
    }
  }

  void count_eval() {
    if (++evals_ > cap_)
      throw CapExceeded("exhaustive backend exceeded " + std::to_string(cap_) + " variant evaluations",
                        "--variant-cap", static_cast<long double>(evals_));
  }

  std::uint64_t masks_for(const CNode& n) const {
    std::size_t bitsn = block_bits(n);
    if (bitsn > 62)
      throw CapExceeded("quantifier block spans " + std::to_string(bitsn) + " node bits",
                        "--variant-cap", std::pow(2.0L, static_cast<long double>(bitsn)));
    return std::uint64_t{1} << bitsn;
  }

 private:
  const Compiled& c_;
  const Structure& s_;
  std::uint64_t cap_;
  std::uint64_t evals_ = 0;
  std::vector<NodeSet> succ_sets_;
  std::vector<NodeSet> slot_val_;
  std::vector<std::optional<NodeSet>> cache_;
  std::vector<NodeSet> props_;

  NodeSet compute(int id) {
    const CNode& n = c_.nodes[id];
    std::size_t N = s_.n;
    NodeSet r(N);
    switch (n.op) {
      case Op::Prop: return n.slot >= 0 ? slot_val_[n.slot] : props_[n.free_prop];
      case Op::True: r.fill(); return r;
      case Op::False: return r;
      case Op::Not: return eval(n.a).complement();
      case Op::And: r = eval(n.a); r &= eval(n.b); return r;
      case Op::Or: r = eval(n.a); r |= eval(n.b); return r;
      case Op::Implies: r = eval(n.a).complement(); r |= eval(n.b); return r;
      case Op::Iff: {
        NodeSet x = eval(n.a), y = eval(n.b);
        NodeSet both = x;
        both &= y;
        NodeSet neither = x.complement();
        neither.subtract(y);
        both |= neither;
        return both;
      }
      case Op::EX: {
        NodeSet a = eval(n.a);
        for (std::size_t u = 0; u < N; ++u)
          if (succ_sets_[u].intersects(a)) r.set(u);
        return r;
      }
      case Op::AX: {
        NodeSet a = eval(n.a);
        for (std::size_t u = 0; u < N; ++u)
          if (succ_sets_[u].subset_of(a)) r.set(u);
        return r;
      }
      case Op::EXEF:
      case Op::AXAG: {
        NodeSet a = eval(n.a);
        bool ex = n.op == Op::EXEF;
        for (std::size_t u = 0; u < N; ++u)
          if (ex ? succ_sets_[u].intersects(a) : succ_sets_[u].subset_of(a)) r.set(u);
        return r;
      }
      case Op::EF:
      case Op::AG:
      case Op::EU:
      case Op::AU:
      case Op::AF: return fixpoint(n);
      case Op::Exists:
      case Op::Forall: {
        bool ex = n.op == Op::Exists;
        std::uint64_t masks = masks_for(n);
        if (!ex) r.fill();
        for (std::uint64_t m = 0; m < masks; ++m) {
          count_eval();
          assign_block(n, m);
          NodeSet b = eval(n.body);
          if (ex) {
            r |= b;
            if (r.complement().none()) break;
          } else {
            r &= b;
            if (r.none()) break;
          }
        }
        return r;
      }
    }
    return r;
  }

  NodeSet fixpoint(const CNode& n) {
    std::size_t N = s_.n;
    NodeSet a(N), b(N), r(N);
    if (n.op == Op::AF) {
      a.fill();
      b = eval(n.a);
    } else if (n.op == Op::EU || n.op == Op::AU) {
      a = eval(n.a);
      b = eval(n.b);
    } else {
      b = eval(n.a);
    }
    for (NodeId u : s_.order) {
      bool val = false;
      bool any = false, all = true, has = false;
      for (NodeId w : s_.succ[u]) {
        if (w == u) continue;
        has = true;
        bool rw = r.test(static_cast<std::size_t>(w));
        any = any || rw;
        all = all && rw;
      }
      bool bu = b.test(static_cast<std::size_t>(u));
      switch (n.op) {
        case Op::EF: val = bu || any; break;
        case Op::AG: val = bu && all; break;
        case Op::EU: val = bu || (a.test(static_cast<std::size_t>(u)) && any); break;
        default:  // AU, AF
          val = bu || (a.test(static_cast<std::size_t>(u)) && has && all &&
                       !s_.self_loop[static_cast<std::size_t>(u)]);
          break;
      }
      if (val) r.set(static_cast<std::size_t>(u));
    }
    return r;
  }
};

// ---------------------------------------------------------------- pruned

enum : std::int8_t { kF = 0, kT = 1, kU = -1 };

struct R3 {
  std::int8_t v;
  std::int32_t slot;
  std::int32_t node;
};

constexpr R3 T3{kT, -1, -1};
constexpr R3 F3{kF, -1, -1};

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

class Local {
 public:
  Local(const Compiled& c, const Structure& s) : c_(c), s_(s) {
    W_ = bits::words_for(s.n_explicit);
    tv_.assign(c.slot_names.size(), std::vector<Word>(W_, 0));
    fv_.assign(c.slot_names.size(), std::vector<Word>(W_, 0));
    for (const auto& name : c.free_names) props_.push_back(s.label_set(name));
  }

  R3 ev(int id, NodeId u) {
    const CNode& n = c_.nodes[id];
    bool memo = n.has_quant && n.op != Op::Not && !is_binary(n.op);
    if (memo) {
      make_key(id, u);
      auto it = memo_.find(key_);
      if (it != memo_.end()) return it->second;
      std::vector<std::uint64_t> key = key_;
      R3 r = compute(id, n, u);
      memo_.emplace(std::move(key), r);
      return r;
    }
    return compute(id, n, u);
  }

  // Outermost block with witness capture.
  R3 top_block(int id, NodeId v, Labeling* witness) {
    const CNode& n = c_.nodes[id];
    witness_ = witness;
    R3 r = dfs(n, v, true);
    witness_ = nullptr;
    return r;
  }

 private:
  const Compiled& c_;
  const Structure& s_;
  std::size_t W_;
  std::vector<std::vector<Word>> tv_, fv_;
  std::vector<const NodeSet*> props_;
  std::unordered_map<std::vector<std::uint64_t>, R3, VecHash> memo_;
  std::vector<std::uint64_t> key_;
  Labeling* witness_ = nullptr;

  void make_key(int id, NodeId u) {
    key_.clear();
    key_.push_back((static_cast<std::uint64_t>(id) << 32) | static_cast<std::uint32_t>(u));
    for (int s : c_.nodes[id].free_slots) {
      key_.insert(key_.end(), tv_[s].begin(), tv_[s].end());
      key_.insert(key_.end(), fv_[s].begin(), fv_[s].end());
    }
  }

  static bool get(const std::vector<Word>& w, std::size_t i) { return (w[i >> 6] >> (i & 63)) & 1u; }

  R3 read_slot(int slot, NodeId u) const {
    std::size_t e = static_cast<std::size_t>(s_.rep[static_cast<std::size_t>(u)]);
    if (get(tv_[slot], e)) return T3;
    if (get(fv_[slot], e)) return F3;
    return R3{kU, slot, static_cast<std::int32_t>(e)};
  }

  static R3 neg(R3 r) {
    if (r.v == kU) return r;
    return r.v == kT ? F3 : T3;
  }

  R3 compute(int id, const CNode& n, NodeId u) {
    switch (n.op) {
      case Op::Prop:
        if (n.slot >= 0) return read_slot(n.slot, u);
        return props_[n.free_prop] && props_[n.free_prop]->test(static_cast<std::size_t>(u)) ? T3
                                                                                           : F3;
      case Op::True: return T3;
      case Op::False: return F3;
      case Op::Not: return neg(ev(n.a, u));
      case Op::And: {
        R3 l = ev(n.a, u);
        if (l.v == kF) return F3;
        R3 r = ev(n.b, u);
        if (r.v == kF) return F3;
        return l.v == kU ? l : r;
      }
      case Op::Or: {
        R3 l = ev(n.a, u);
        if (l.v == kT) return T3;
        R3 r = ev(n.b, u);
        if (r.v == kT) return T3;
        return l.v == kU ? l : r;
      }
      case Op::Implies: {
        R3 l = ev(n.a, u);
        if (l.v == kF) return T3;
        R3 r = ev(n.b, u);
        if (r.v == kT) return T3;
        return l.v == kU ? l : r;
      }
      case Op::Iff: {
        R3 l = ev(n.a, u);
        if (l.v == kU) return l;
        R3 r = ev(n.b, u);
        if (r.v == kU) return r;
        return l.v == r.v ? T3 : F3;
      }
      case Op::EX:
      case Op::EXEF: return any_succ(n.a, u, false);
      case Op::AX:
      case Op::AXAG: return all_succ(n.a, u, false);
      case Op::EF: {
        R3 here = ev(n.a, u);
        if (here.v == kT) return T3;
        R3 rest = any_succ(id, u, true);
        if (rest.v == kT) return T3;
        return here.v == kU ? here : rest;
      }
      case Op::AG: {
        R3 here = ev(n.a, u);
        if (here.v == kF) return F3;
        R3 rest = all_succ(id, u, true);
        if (rest.v == kF) return F3;
        return here.v == kU ? here : rest;
      }
      case Op::EU: {
        R3 rb = ev(n.b, u);
        if (rb.v == kT) return T3;
        R3 ra = ev(n.a, u);
        if (ra.v == kF) return rb;
        R3 rest = any_succ(id, u, true);
        R3 step = rest.v == kF ? F3 : (ra.v == kU ? ra : rest);
        if (step.v == kT) return T3;
        return rb.v == kU ? rb : step;
      }
      case Op::AU:
      case Op::AF: {
        int gi = n.op == Op::AF ? n.a : n.b;
        R3 rb = ev(gi, u);
        if (rb.v == kT) return T3;
        bool has = false;
        for (NodeId w : s_.succ[static_cast<std::size_t>(u)]) has = has || w != u;
        if (s_.self_loop[static_cast<std::size_t>(u)] || !has) return rb;
        R3 ra = n.op == Op::AF ? T3 : ev(n.a, u);
        if (ra.v == kF) return rb;
        R3 rest = all_succ(id, u, true);
        R3 step = rest.v == kF ? F3 : (ra.v == kU ? ra : rest);
        if (step.v == kT) return T3;
        return rb.v == kU ? rb : step;
      }
      case Op::Exists:
      case Op::Forall: return dfs(n, u, false);
    }
    return F3;
  }

  R3 any_succ(int id, NodeId u, bool skip_self) {
    R3 pending{kF, -1, -1};
    for (NodeId w : s_.succ[static_cast<std::size_t>(u)]) {
      if (skip_self && w == u) continue;
      R3 r = ev(id, w);
      if (r.v == kT) return T3;
      if (r.v == kU && pending.v != kU) pending = r;
    }
    return pending;
  }

  R3 all_succ(int id, NodeId u, bool skip_self) {
    R3 pending{kT, -1, -1};
    for (NodeId w : s_.succ[static_cast<std::size_t>(u)]) {
      if (skip_self && w == u) continue;
      R3 r = ev(id, w);
      if (r.v == kF) return F3;
      if (r.v == kU && pending.v != kU) pending = r;
    }
    return pending;
  }

  bool in_block(const CNode& n, int slot) const {
    return std::find(n.block.begin(), n.block.end(), slot) != n.block.end();
  }

  void capture(const CNode& n) {
    witness_->props.clear();
    witness_->true_at.clear();
    for (int s : n.block) {
      witness_->props.push_back(c_.slot_names[s]);
      std::vector<NodeId> at;
      for (std::size_t e = 0; e < s_.n_explicit; ++e)
        if (get(tv_[s], e)) at.push_back(static_cast<NodeId>(e));
      witness_->true_at.push_back(std::move(at));
    }
  }

  R3 dfs(const CNode& n, NodeId u, bool record) {
    bool ex = n.op == Op::Exists;
    R3 r = ev(n.body, u);
    if (r.v != kU) {
      if (record && witness_ && (ex ? r.v == kT : r.v == kF)) capture(n);
      return r;
    }
    if (!in_block(n, r.slot)) return r;
    std::size_t e = static_cast<std::size_t>(r.node);
    Word bit = Word{1} << (e & 63);
    for (int val = 1; val >= 0; --val) {
      auto& w = val ? tv_[r.slot] : fv_[r.slot];
      w[e >> 6] |= bit;
      R3 rr = dfs(n, u, record);
      w[e >> 6] &= ~bit;
      if (rr.v == kU) return rr;
      if (ex && rr.v == kT) return T3;
      if (!ex && rr.v == kF) return F3;
    }
    return ex ? F3 : T3;
  }
};

}  // namespace

struct Checker::Impl {
  Formula f;
  CheckOptions opts;
  Compiled c;
  Impl(const Formula& g, CheckOptions o) : f(g), opts(o), c(g) {}
};

Checker::Checker(const Formula& f, CheckOptions opts) : impl_(std::make_unique<Impl>(f, opts)) {}
Checker::~Checker() = default;
Checker::Checker(Checker&&) noexcept = default;
Checker& Checker::operator=(Checker&&) noexcept = default;

const Formula& Checker::formula() const { return impl_->f; }

long double Checker::exhaustive_cost(std::size_t n_explicit) const {
  return cost_rec(impl_->c, impl_->c.root, 1.0L, n_explicit);
}

bool Checker::holds(const Structure& s, NodeId v) {
  bool saved = impl_->opts.want_witness;
  impl_->opts.want_witness = false;
  bool r = run(s, v).verdict;
  impl_->opts.want_witness = saved;
  return r;
}

CheckOutcome Checker::run(const Structure& s, NodeId v) {
  const Compiled& c = impl_->c;
  if (s.strict && c.has_until)
    throw PreconditionError("until operators (EU/AU/AF) are not available in strict mode");
  if (v < 0 || static_cast<std::size_t>(v) >= s.n_explicit)
    throw PreconditionError("evaluation node out of range");
  CheckOutcome out;
  const CNode& root = c.nodes[c.root];
  bool top_block = !root.block.empty();
  if (impl_->opts.backend == Backend::Exhaustive) {
    Global g(c, s, impl_->opts.variant_cap);
    if (top_block && impl_->opts.want_witness) {
      bool ex = root.op == Op::Exists;
      std::uint64_t masks = g.masks_for(root);
      bool found = false;
      for (std::uint64_t m = 0; m < masks && !found; ++m) {
        g.count_eval();
        g.assign_block(root, m);
        bool b = g.eval(root.body).test(static_cast<std::size_t>(v));
        if (b == ex) {
          found = true;
          Labeling l;
          for (std::size_t j = 0; j < root.block.size(); ++j) {
            l.props.push_back(c.slot_names[root.block[j]]);
            std::vector<NodeId> at;
            for (std::size_t e = 0; e < s.n_explicit; ++e)
              if ((m >> (j * s.n_explicit + e)) & 1u) at.push_back(static_cast<NodeId>(e));
            l.true_at.push_back(std::move(at));
          }
          out.witness = std::move(l);
        }
      }
      out.verdict = ex ? found : !found;
      out.counterexample = !ex && found;
      return out;
    }
    out.verdict = g.eval(c.root).test(static_cast<std::size_t>(v));
    return out;
  }
  Local l(c, s);
  if (top_block && impl_->opts.want_witness) {
    Labeling w;
    R3 r = l.top_block(c.root, v, &w);
    out.verdict = r.v == 1;
    if (root.op == Op::Exists && out.verdict) out.witness = std::move(w);
    if (root.op == Op::Forall && !out.verdict) {
      out.witness = std::move(w);
      out.counterexample = true;
    }
    return out;
  }
  out.verdict = l.ev(c.root, v).v == 1;
  return out;
}

CheckOutcome check(const TreeModel& t, FrontierMode m, NodeId v, const Formula& f, Backend b,
                   bool want_witness) {
  CheckOptions o;
  o.backend = b;
  o.want_witness = want_witness;
  Checker ch(f, o);
  Structure s = apply_frontier(t, m);
  return ch.run(s, v);
}

TreeModel apply_labeling(const TreeModel& t, const Labeling& l) {
  TreeModel out = t;
  for (std::size_t j = 0; j < l.props.size(); ++j) {
    for (std::size_t v = 0; v < out.size(); ++v) out.remove_label(static_cast<NodeId>(v), l.props[j]);
    for (NodeId v : l.true_at[j]) out.add_label(v, l.props[j]);
  }
  return out;
}

bool equivalent_on_small_trees(const Formula& f, const Formula& g, unsigned max_branching,
                               unsigned depth, const std::vector<std::string>& props, Backend b,
                               std::size_t cap) {
  TreeSpace space = TreeSpace::exact_depth(max_branching, depth, props, cap);
  CheckOptions o;
  o.backend = b;
  Checker cf(f, o), cg(g, o);
  for (std::size_t i = 0; i < space.size(); ++i) {
    Structure s = apply_frontier(space.at(i), FrontierMode::self_loop());
    if (cf.holds(s, s.root) != cg.holds(s, s.root)) return false;
  }
  return true;
}

}  // namespace qctl
