#include "qctl/translations.hpp"

#include <algorithm>
#include <functional>

#include "qctl/errors.hpp"

namespace qctl {

using namespace f;

std::string layer_prop(int i) { return i < 0 ? "layer_m1" : "layer" + std::to_string(i); }

namespace {

Formula layer(int i) { return prop(layer_prop(i)); }

Formula layers_upto(int lo, int hi) {
  std::vector<Formula> xs;
  for (int i = lo; i <= hi; ++i) xs.push_back(layer(i));
  return big_or(xs);
}

Formula pairwise_exclusion(int lo, int hi) {
  std::vector<Formula> xs;
  for (int i = lo; i <= hi; ++i)
    for (int j = i + 1; j <= hi; ++j) xs.push_back(neg(conj(layer(i), layer(j))));
  return big_and(xs);
}

bool is_layer_label(const std::string& p) { return p.rfind("layer", 0) == 0; }

Formula rebuild(const Formula& g, Formula a, Formula b) {
  auto n = std::make_shared<Node>(*g);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

// Homomorphic map that sends EX psi to wrap(depth, mapped psi).
Formula relativise(const Formula& g, unsigned i,
                   const std::function<Formula(unsigned, Formula)>& wrap) {
  switch (g->op) {
    case Op::Prop:
    case Op::True:
    case Op::False: return g;
    case Op::EX:
      if (i == 0) throw PreconditionError("translation: modal depth exceeds the layer index");
      return wrap(i, relativise(g->a, i - 1, wrap));
    case Op::Not:
    case Op::Exists:
    case Op::Forall: return rebuild(g, relativise(g->a, i, wrap), nullptr);
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: return rebuild(g, relativise(g->a, i, wrap), relativise(g->b, i, wrap));
    default: throw PreconditionError("translation expects an EX-fragment formula");
  }
}

}  // namespace

Formula shape_formula(unsigned k) {
  int K = static_cast<int>(k);
  std::vector<Formula> parts;
  parts.push_back(ag(conj(layers_upto(-1, K), pairwise_exclusion(-1, K))));
  for (int i = -1; i <= K; ++i) parts.push_back(ag(implies(layer(i), ag(layers_upto(-1, i)))));
  for (int i = 0; i <= K; ++i) parts.push_back(ag(implies(layer(i), ef(layer(i - 1)))));
  for (int i = 0; i <= K; ++i) {
    Formula p = prop("p");
    parts.push_back(
        ag(implies(layer(i), neg(exists("p", conj(p, ef(conj(layer(i), neg(p)))))))));
  }
  parts.push_back(layer(K));
  return big_and(parts);
}

Formula shape_finite(unsigned k, bool weak_progress) {
  int K = static_cast<int>(k);
  std::vector<Formula> parts;
  std::vector<Formula> others;
  for (int i = 0; i < K; ++i) others.push_back(neg(layer(i)));
  parts.push_back(conj(conj(layer(K), big_and(others)),
                       axag(conj(layers_upto(0, K), pairwise_exclusion(0, K)))));
  parts.push_back(axag(layers_upto(0, K - 1)));
  for (int i = 0; i <= K - 1; ++i)
    parts.push_back(axag(implies(layer(i), axag(layers_upto(0, i - 1)))));
  if (weak_progress) {
    if (K >= 1) parts.push_back(exef(layer(K - 1)));
    for (int i = 1; i <= K - 1; ++i) parts.push_back(axag(implies(layer(i), exef(layer(i - 1)))));
  }
  parts.push_back(axag(implies(layer(0), neg(exef(top())))));
  return big_and(parts);
}

LayerCheckReport is_k_layered(const TreeModel& t, unsigned k) {
  t.validate();
  int K = static_cast<int>(k);
  std::size_t n = t.size();
  std::vector<int> level(n, -2);
  LayerCheckReport rep;
  auto fail = [&](char c, std::vector<NodeId> w) {
    rep.verdict = false;
    rep.condition = c;
    rep.witness = std::move(w);
    return rep;
  };
  for (std::size_t v = 0; v < n; ++v) {
    int count = 0;
    for (int i = -1; i <= K; ++i)
      if (t.has(static_cast<NodeId>(v), layer_prop(i))) {
        ++count;
        level[v] = i;
      }
    if (count != 1) return fail('a', {static_cast<NodeId>(v)});
  }
  // A leaf's only successors are copies of itself, so a leaf above layer_m1 fails (b).
  for (std::size_t v = 0; v < n; ++v) {
    int j = level[v];
    if (j < 0) continue;
    bool found = false;
    for (NodeId c : t.children[v])
      if (level[static_cast<std::size_t>(c)] == j - 1) found = true;
    if (!found) return fail('b', {static_cast<NodeId>(v)});
  }
  std::vector<NodeId> stack;
  for (std::size_t v = 0; v < n; ++v) {
    stack.assign(t.children[v].begin(), t.children[v].end());
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      if (level[static_cast<std::size_t>(u)] > level[v])
        return fail('b', {static_cast<NodeId>(v), u});
      for (NodeId c : t.children[static_cast<std::size_t>(u)]) stack.push_back(c);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    int j = level[v];
    if (j < 0) continue;
    stack.assign(t.children[v].begin(), t.children[v].end());
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      if (level[static_cast<std::size_t>(u)] == j) return fail('c', {static_cast<NodeId>(v), u});
      for (NodeId c : t.children[static_cast<std::size_t>(u)]) stack.push_back(c);
    }
  }
  if (level[static_cast<std::size_t>(t.root)] != K) return fail('d', {t.root});
  return rep;
}

Formula ex_only(const Formula& g) {
  switch (g->op) {
    case Op::Prop:
    case Op::True:
    case Op::False: return g;
    case Op::AX: return neg(ex(neg(ex_only(g->a))));
    case Op::EX:
    case Op::Not:
    case Op::Exists:
    case Op::Forall: return rebuild(g, ex_only(g->a), nullptr);
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: return rebuild(g, ex_only(g->a), ex_only(g->b));
    default:
      throw PreconditionError("expected an EX-fragment formula, found '" + render(g) + "'");
  }
}

Formula trans_ef(unsigned i, const Formula& g) {
  return relativise(ex_only(g), i, [](unsigned d, Formula psi) {
    return ef(conj(layer(static_cast<int>(d) - 1), std::move(psi)));
  });
}

Formula trans_exef(unsigned i, const Formula& g) {
  return relativise(ex_only(g), i, [](unsigned d, Formula psi) {
    return exef(conj(layer(static_cast<int>(d) - 1), std::move(psi)));
  });
}

Formula ex_to_ef(const Formula& g) {
  Formula h = ex_only(g);
  unsigned k = static_cast<unsigned>(modal_depth(h));
  return conj(trans_ef(k, h), shape_formula(k));
}

Formula ex_to_exef_finite(const Formula& g, bool weak_progress) {
  Formula h = ex_only(g);
  unsigned k = static_cast<unsigned>(modal_depth(h));
  return conj(trans_exef(k, h), shape_finite(k, weak_progress));
}

Formula phi_fin() {
  Formula in = prop("in");
  return big_and({in, af(neg(in)), ag(implies(neg(in), ag(neg(in))))});
}

Formula embed_finite_in_infinite(const Formula& g) {
  Formula h = ex_only(g);
  std::function<Formula(const Formula&)> tr = [&](const Formula& x) -> Formula {
    switch (x->op) {
      case Op::Prop:
      case Op::True:
      case Op::False: return x;
      case Op::EX: return ex(conj(prop("in"), tr(x->a)));
      case Op::Not:
      case Op::Exists:
      case Op::Forall: return rebuild(x, tr(x->a), nullptr);
      default: return rebuild(x, tr(x->a), tr(x->b));
    }
  };
  return conj(tr(h), phi_fin());
}

Formula phi_fin_gt() {
  Formula in = prop("in");
  return conj(in, axag(implies(neg(in), axag(neg(in)))));
}

Formula totalize(const Formula& g) {
  return big_and({g, exef(top()), axag(exef(top()))});
}

GtEmbedding embed_gt_in_infinite(const Formula& g) {
  std::function<Formula(const Formula&)> tr = [&](const Formula& x) -> Formula {
    switch (x->op) {
      case Op::Prop:
      case Op::True:
      case Op::False: return x;
      case Op::EXEF: return exef(conj(prop("in"), tr(x->a)));
      case Op::AXAG: return neg(exef(conj(prop("in"), neg(tr(x->a)))));
      case Op::Not:
      case Op::Exists:
      case Op::Forall: return rebuild(x, tr(x->a), nullptr);
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff: return rebuild(x, tr(x->a), tr(x->b));
      default:
        throw PreconditionError("embed_gt_in_infinite expects an EXEF-fragment formula, found '" +
                                render(x) + "'");
    }
  };
  return {conj(tr(g), phi_fin_gt()), totalize(g)};
}

ModalityMap parse_modality_map(const std::string& s) {
  if (s == "ex-exef") return ModalityMap::ExExef;
  if (s == "ex-ef") return ModalityMap::ExEf;
  throw InputError("unknown modality map '" + s + "' (expected ex-exef or ex-ef)");
}

Formula rewrite_modality(const Formula& g, ModalityMap map, bool inverse) {
  Op from_e = Op::EX, from_a = Op::AX;
  Op to_e = map == ModalityMap::ExExef ? Op::EXEF : Op::EF;
  Op to_a = map == ModalityMap::ExExef ? Op::AXAG : Op::AG;
  if (inverse) {
    std::swap(from_e, to_e);
    std::swap(from_a, to_a);
  }
  std::function<Formula(const Formula&)> go = [&](const Formula& x) -> Formula {
    if (x->op == Op::Prop || x->op == Op::True || x->op == Op::False) return x;
    if (x->op == from_e || x->op == from_a) {
      auto n = std::make_shared<Node>(*x);
      n->op = x->op == from_e ? to_e : to_a;
      n->a = go(x->a);
      return n;
    }
    if (is_temporal(x->op))
      throw PreconditionError(std::string("rewrite_modality: operator outside the map in '") +
                              render(x) + "'");
    return rebuild(x, go(x->a), x->b ? go(x->b) : nullptr);
  };
  return go(g);
}

TreeModel decorate_layers(const TreeModel& t, unsigned k, bool finite) {
  t.validate();
  TreeModel out;
  std::function<void(NodeId, NodeId, unsigned)> copy = [&](NodeId v, NodeId parent,
                                                           unsigned depth) {
    std::vector<std::string> labels;
    for (const auto& p : t.labels[static_cast<std::size_t>(v)])
      if (!is_layer_label(p)) labels.push_back(p);
    int lev = std::max(-1, static_cast<int>(k) - static_cast<int>(depth));
    std::vector<std::string> with = labels;
    with.push_back(layer_prop(lev));
    NodeId u = out.add_node(with, parent);
    if (parent < 0) out.root = u;
    const auto& kids = t.children[static_cast<std::size_t>(v)];
    if (finite && depth == k) return;
    for (NodeId c : kids) copy(c, u, depth + 1);
    if (!finite && kids.empty()) {
      labels.push_back(layer_prop(-1));
      out.add_node(labels, u);
    }
  };
  copy(t.root, -1, 0);
  return out;
}

}  // namespace qctl
