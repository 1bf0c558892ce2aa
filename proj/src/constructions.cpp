#include "qctl/constructions.hpp"

#include <algorithm>
#include <functional>

namespace qctl {

using namespace f;

std::string Fresh::operator()(const std::string& prefix) {
  auto it = next_.try_emplace(prefix, seed_).first;
  std::string name;
  do {
    name = prefix + std::to_string(it->second++);
  } while (avoid_.count(name));
  return name;
}

std::string bit_prop(unsigned i) { return "p" + std::to_string(i); }
std::string h_prop(unsigned i) { return "h" + std::to_string(i); }
std::string v_prop(unsigned i) { return "v" + std::to_string(i); }
std::string tile_prop(const std::string& tile, unsigned j) {
  return "t_" + tile + "_" + std::to_string(j);
}

Formula ax_n(std::size_t k, Formula a) {
  for (std::size_t i = 0; i < k; ++i) a = ax(std::move(a));
  return a;
}

Formula bind(const std::string& x, unsigned k, Fresh& fr) {
  std::string q = fr("q");
  while (q == x) q = fr("q");
  Formula px = prop(x), pq = prop(q);
  return conj(ex_n(k, px),
              neg(exists(q, conj(ex_n(k, conj(px, pq)), ex_n(k, conj(px, neg(pq)))))));
}

Formula at_k(const std::string& x, unsigned k, const Formula& g) {
  return ex_n(k, conj(prop(x), g));
}

Formula at(const NominalPath& path, const Formula& g) {
  Formula out = g;
  for (auto it = path.rbegin(); it != path.rend(); ++it) out = ex(conj(prop(*it), out));
  return out;
}

Formula distinct_bind(const NominalPath& xs, unsigned k, Fresh& fr) {
  std::set<std::string> seen(xs.begin(), xs.end());
  if (seen.size() != xs.size()) throw PreconditionError("distinct_bind: duplicate nominal names");
  std::vector<Formula> parts;
  for (const auto& x : xs) parts.push_back(qctl::bind(x, k, fr));
  for (std::size_t j = 0; j < xs.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) parts.push_back(neg(at_k(xs[i], k, prop(xs[j]))));
  return big_and(parts);
}

Formula bind_chain(const NominalPath& xs, Fresh& fr) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    NominalPath prefix(xs.begin(), xs.begin() + static_cast<long>(i));
    parts.push_back(at(prefix, qctl::bind(xs[i], 1, fr)));
  }
  return big_and(parts);
}

Formula hat(const NominalPath& xs, const NominalPath& ys, Fresh& fr) {
  if (xs.size() != ys.size()) throw PreconditionError("hat: paths of different lengths");
  if (xs.empty()) return top();
  std::vector<Formula> parts{qctl::bind(xs[0], 1, fr), qctl::bind(ys[0], 1, fr)};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    NominalPath px(xs.begin(), xs.begin() + static_cast<long>(i));
    NominalPath py(ys.begin(), ys.begin() + static_cast<long>(i));
    parts.push_back(conj(at(px, qctl::bind(xs[i], 1, fr)), at(py, qctl::bind(ys[i], 1, fr))));
  }
  return big_and(parts);
}

Formula uni(const std::vector<std::string>& props, Fresh& fr) {
  if (props.empty()) throw PreconditionError("uni: empty proposition set");
  std::string x = fr("x"), y = fr("y");
  std::vector<Formula> agree;
  for (const auto& p : props) agree.push_back(iff(at_k(x, 1, prop(p)), at_k(y, 1, prop(p))));
  return forall(std::vector<std::string>{x, y},
                implies(distinct_bind({x, y}, 1, fr), neg(big_and(agree))));
}

Formula exactly(unsigned i, const Formula& psi, Fresh& fr) {
  if (i == 0) return ax(neg(psi));
  NominalPath qs;
  std::vector<Formula> names;
  for (unsigned a = 0; a < i; ++a) {
    qs.push_back(fr("q"));
    names.push_back(prop(qs.back()));
  }
  return exists(qs, conj(distinct_bind(qs, 1, fr), ax(iff(big_or(names), psi))));
}

Formula exactly_one(const Formula& psi, Fresh& fr) {
  std::string q = fr("q");
  Formula pq = prop(q);
  return conj(ex(psi), neg(exists(q, conj(ex(conj(psi, pq)), ex(conj(psi, neg(pq)))))));
}

Formula exactly_two_top(Fresh& fr) {
  std::string x1 = fr("x"), x2 = fr("x");
  return exists(std::vector<std::string>{x1, x2},
                conj(distinct_bind({x1, x2}, 1, fr), ax(disj(prop(x1), prop(x2)))));
}

Formula at_most_pow2(unsigned n, Fresh& fr) {
  std::vector<std::string> ps;
  for (unsigned i = 0; i < n; ++i) ps.push_back(fr("q"));
  if (ps.empty()) {
    // Uni over the empty set says no two distinct children exist.
    std::string x = fr("x"), y = fr("y");
    return forall(std::vector<std::string>{x, y}, neg(distinct_bind({x, y}, 1, fr)));
  }
  return exists(ps, uni(ps, fr));
}

Formula grid(unsigned n, Fresh& fr) {
  if (n == 0) throw PreconditionError("grid: n must be at least 1");
  if (n > kMaxGridExponent)
    throw CapExceeded("grid(2n) with n = " + std::to_string(n) + " is beyond desk scale",
                      "--grid-cap");
  unsigned depth = 2 * n;
  std::vector<Formula> upper;
  for (unsigned i = 0; i < depth; ++i) upper.push_back(ax_n(i, exactly_two_top(fr)));
  std::string x = fr("x"), y = fr("y");
  std::vector<Formula> differ;
  for (unsigned j = 0; j < n; ++j) {
    differ.push_back(neg(iff(at_k(x, depth, prop(h_prop(j))), at_k(y, depth, prop(h_prop(j))))));
    differ.push_back(neg(iff(at_k(x, depth, prop(v_prop(j))), at_k(y, depth, prop(v_prop(j))))));
  }
  Formula lower = forall(std::vector<std::string>{x, y},
                         implies(distinct_bind({x, y}, depth, fr), big_or(differ)));
  return conj(big_and(upper), lower);
}

Formula neighbor(const std::string& x, const std::string& y, unsigned n, Axis axis) {
  unsigned depth = 2 * n;
  auto inc = axis == Axis::Horizontal ? h_prop : v_prop;
  auto same = axis == Axis::Horizontal ? v_prop : h_prop;
  auto ax_ = [&](const std::string& z, const std::string& p) { return at_k(z, depth, prop(p)); };
  auto nx_ = [&](const std::string& z, const std::string& p) {
    return at_k(z, depth, neg(prop(p)));
  };
  std::vector<Formula> keep;
  for (unsigned a = 0; a < n; ++a) keep.push_back(iff(ax_(x, same(a)), ax_(y, same(a))));
  std::vector<Formula> cases;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Formula> low, high;
    for (unsigned a = 0; a < i; ++a) low.push_back(conj(ax_(x, inc(a)), nx_(y, inc(a))));
    for (unsigned a = i + 1; a < n; ++a) high.push_back(iff(ax_(x, inc(a)), ax_(y, inc(a))));
    cases.push_back(big_and({nx_(x, inc(i)), ax_(y, inc(i)), big_and(low), big_and(high)}));
  }
  return conj(big_and(keep), big_or(cases));
}

namespace {

Formula tile_disjunction(const std::vector<std::string>& tiles, unsigned j) {
  std::vector<Formula> xs;
  for (const auto& t : tiles) xs.push_back(prop(tile_prop(t, j)));
  return big_or(xs);
}

Formula tile_exclusion(const std::vector<std::string>& tiles, unsigned j) {
  std::vector<Formula> xs;
  for (std::size_t a = 0; a < tiles.size(); ++a)
    for (std::size_t b = a + 1; b < tiles.size(); ++b)
      xs.push_back(neg(conj(prop(tile_prop(tiles[a], j)), prop(tile_prop(tiles[b], j)))));
  return big_and(xs);
}

Formula first_row(unsigned n, bool last) {
  std::vector<Formula> xs;
  for (unsigned a = 0; a < n; ++a)
    xs.push_back(last ? prop(h_prop(a)) : neg(prop(h_prop(a))));
  return big_and(xs);
}

}  // namespace

AmtpComponents amtp_components(const AmtpInstance& inst, unsigned j, unsigned jprime, Fresh& fr) {
  unsigned n = inst.n;
  unsigned depth = 2 * n;
  AmtpComponents c;
  {
    std::string x = fr("x");
    c.cov = forall(x, implies(qctl::bind(x, depth, fr),
                              at_k(x, depth, conj(tile_disjunction(inst.tiles, j),
                                                  tile_exclusion(inst.tiles, j)))));
  }
  auto matching = [&](const std::vector<TilePair>& rel, Axis axis) {
    std::string x = fr("x"), y = fr("y");
    std::vector<Formula> options;
    for (const auto& [t, u] : rel)
      options.push_back(conj(at_k(x, depth, prop(tile_prop(t, j))),
                             at_k(y, depth, prop(tile_prop(u, j)))));
    return forall(std::vector<std::string>{x, y},
                  implies(big_and({qctl::bind(x, depth, fr), qctl::bind(y, depth, fr), neighbor(x, y, n, axis)}),
                          big_or(options)));
  };
  c.hori = matching(inst.hori, Axis::Horizontal);
  c.verti = matching(inst.verti, Axis::Vertical);
  c.tiling = big_and({c.cov, c.hori, c.verti});
  {
    std::string x = fr("x");
    c.init = forall(x, implies(conj(qctl::bind(x, depth, fr), at_k(x, depth, first_row(n, false))),
                               at_k(x, depth, conj(tile_disjunction(inst.t0, j),
                                                   tile_exclusion(inst.t0, j)))));
  }
  {
    std::string x = fr("x");
    std::vector<Formula> both;
    for (const auto& t : inst.t0)
      both.push_back(conj(prop(tile_prop(t, j)), prop(tile_prop(t, jprime))));
    c.coinci = forall(x, implies(conj(qctl::bind(x, depth, fr), at_k(x, depth, first_row(n, false))),
                                 at_k(x, depth, big_or(both))));
  }
  {
    std::string x = fr("x");
    c.acc = exists(x, conj(qctl::bind(x, depth, fr),
                           at_k(x, depth, conj(first_row(n, true),
                                               tile_disjunction(inst.acc, j)))));
  }
  {
    std::string x = fr("x");
    std::vector<Formula> pairs;
    for (const auto& [t, u] : inst.multi)
      pairs.push_back(conj(prop(tile_prop(t, j)), prop(tile_prop(u, j + 1))));
    c.multi = forall(x, implies(qctl::bind(x, depth, fr), at_k(x, depth, big_or(pairs))));
  }
  return c;
}

Formula amtp_reduction(const AmtpInstance& inst, Fresh& fr) {
  if (inst.n == 0 || inst.n % 2 != 0)
    throw PreconditionError("amtp_reduction: n must be even and positive, got " +
                            std::to_string(inst.n));
  inst.validate();
  unsigned n = inst.n;
  for (const auto& t : inst.tiles)
    for (unsigned j = 1; j <= 2 * n; ++j) fr.avoid({tile_prop(t, j)});

  std::vector<Formula> inits;
  for (unsigned j = 1; j <= n; ++j) inits.push_back(amtp_components(inst, j, j, fr).init);

  std::vector<std::string> inner;
  std::vector<Formula> body;
  for (unsigned j = n + 1; j <= 2 * n; ++j) {
    AmtpComponents c = amtp_components(inst, j, j - n, fr);
    body.push_back(conj(c.tiling, c.coinci));
    for (const auto& t : inst.tiles) inner.push_back(tile_prop(t, j));
  }
  for (unsigned j = n + 1; j + 1 <= 2 * n; ++j)
    body.push_back(amtp_components(inst, j, j, fr).multi);
  body.push_back(amtp_components(inst, 2 * n, 2 * n, fr).acc);

  Formula matrix = implies(big_and(inits), exists(inner, big_and(body)));
  for (unsigned j = n; j >= 1; --j) {
    std::vector<std::string> block;
    for (const auto& t : inst.t0) block.push_back(tile_prop(t, j));
    matrix = j % 2 == 1 ? forall(block, matrix) : exists(block, matrix);
  }
  return conj(grid(n, fr), matrix);
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Succ: return "succ";
    case Relation::Gt: return "gt";
    case Relation::Eq: return "eq";
  }
  return "?";
}

namespace {

Formula bits_relation(unsigned n, const NominalPath& xs, const NominalPath& ys, Relation rel) {
  auto p = [](unsigned i) { return prop(bit_prop(i)); };
  std::vector<Formula> cases;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<Formula> high;
    for (unsigned j = i + 1; j < n; ++j) high.push_back(iff(at(xs, p(j)), at(ys, p(j))));
    if (rel == Relation::Succ) {
      std::vector<Formula> xlow{neg(p(i))}, ylow;
      for (unsigned j = 0; j < i; ++j) {
        xlow.push_back(p(j));
        ylow.push_back(neg(p(j)));
      }
      ylow.push_back(p(i));
      cases.push_back(big_and({at(xs, big_and(xlow)), at(ys, big_and(ylow)), big_and(high)}));
    } else {
      cases.push_back(big_and({at(ys, p(i)), at(xs, neg(p(i))), big_and(high)}));
    }
  }
  return big_or(cases);
}

NominalPath extend(NominalPath p, const std::string& x) {
  p.push_back(x);
  return p;
}

}  // namespace

Formula lsr(unsigned k, unsigned n, const NominalPath& xs, const LsrNames& nm, Fresh& fr) {
  unsigned d = static_cast<unsigned>(xs.size());
  if (d >= k) throw PreconditionError("lsr: requires |xs| < k");
  Formula l = prop(nm.l), s = prop(nm.s), r = prop(nm.r);
  Formula one = at(xs, ax(big_and({disj(disj(s, l), r), neg(conj(s, l)), neg(conj(s, r)),
                                   neg(conj(l, r))})));
  Formula two = at(xs, exactly_one(s, fr));
  std::string w = fr("w"), w2 = fr("w_");
  Formula guard = conj(distinct_bind({w, w2}, 1, fr),
                       disj(conj(at_k(w, 1, s), at_k(w2, 1, r)),
                            conj(at_k(w, 1, l), at_k(w2, 1, s))));
  Formula three = at(xs, forall(w, forall(w2, implies(guard, compare(k - d, n, {w2}, {w},
                                                                    Relation::Gt, fr)))));
  return big_and({one, two, three});
}

Formula compare(unsigned k, unsigned n, const NominalPath& xs, const NominalPath& ys, Relation rel,
                Fresh& fr) {
  if (xs.size() != ys.size())
    throw PreconditionError("compare: paths of different lengths");
  unsigned d = static_cast<unsigned>(xs.size());
  if (d < 1 || d > k) throw PreconditionError("compare: requires 1 <= |xs| <= k");
  if (rel == Relation::Eq)
    return conj(neg(compare(k, n, xs, ys, Relation::Gt, fr)),
                neg(compare(k, n, ys, xs, Relation::Gt, fr)));
  if (k == d) return bits_relation(n, xs, ys, rel);

  LsrNames nm{fr("lft"), fr("sel"), fr("rgt")};
  Formula val = prop(kVal), l = prop(nm.l), s = prop(nm.s), r = prop(nm.r);
  Formula lx = lsr(k, n, xs, nm, fr);
  Formula ly = lsr(k, n, ys, nm, fr);

  auto left_dir = [&](const NominalPath& a, const NominalPath& b) {
    std::string w = fr("w"), w2 = fr("w_");
    NominalPath aw = extend(a, w), bw = extend(b, w2);
    Formula target = big_and({at(b, conj(qctl::bind(w2, 1, fr), at_k(w2, 1, l))),
                              compare(k, n, aw, bw, Relation::Eq, fr),
                              iff(at(aw, val), at(bw, val))});
    return forall(w, implies(at(a, conj(qctl::bind(w, 1, fr), at_k(w, 1, l))), exists(w2, target)));
  };
  Formula left = conj(left_dir(xs, ys), left_dir(ys, xs));
  Formula select = conj(at(xs, ax(implies(s, neg(val)))), at(ys, ax(implies(s, val))));
  if (rel == Relation::Gt)
    return exists(std::vector<std::string>{nm.s, nm.l, nm.r}, big_and({lx, ly, left, select}));
  Formula right = conj(at(xs, ax(implies(r, val))), at(ys, ax(implies(r, neg(val)))));
  return exists(std::vector<std::string>{nm.l, nm.s, nm.r},
                big_and({lx, ly, left, select, right}));
}

TypeFamily type_family(unsigned k, unsigned n, Fresh& fr, std::uint64_t cap) {
  if (n == 0) throw PreconditionError("type_family: n must be at least 1");
  tetration(k, n, cap);
  TypeFamily t;
  if (k == 0) {
    std::vector<Formula> lo, hi;
    for (unsigned i = n; i-- > 0;) {
      lo.push_back(neg(prop(bit_prop(i))));
      hi.push_back(prop(bit_prop(i)));
    }
    t.type = top();
    t.first = big_and(lo);
    t.last = big_and(hi);
    t.unique = top();
    t.compl_ = top();
    return t;
  }
  TypeFamily below = type_family(k - 1, n, fr, cap);
  t.first = ax(neg(prop(kVal)));
  t.last = ax(prop(kVal));
  {
    std::string x = fr("x"), y = fr("y");
    t.unique = forall(std::vector<std::string>{x, y},
                      implies(distinct_bind({x, y}, 1, fr),
                              neg(compare(k, n, {x}, {y}, Relation::Eq, fr))));
  }
  {
    std::string x = fr("x"), y = fr("y");
    t.compl_ = forall(x, implies(conj(qctl::bind(x, 1, fr), at_k(x, 1, neg(below.last))),
                                 exists(y, conj(qctl::bind(y, 1, fr),
                                                compare(k, n, {x}, {y}, Relation::Succ, fr)))));
  }
  t.type = big_and({ax(below.type), ex(below.first), t.unique, t.compl_});
  return t;
}

Formula number_literal(unsigned value, unsigned n) {
  if (n < 32 && value >> n != 0)
    throw PreconditionError("number_literal: " + std::to_string(value) + " needs more than " +
                            std::to_string(n) + " bits");
  std::vector<Formula> xs;
  for (unsigned i = n; i-- > 0;)
    xs.push_back((value >> i) & 1U ? prop(bit_prop(i)) : neg(prop(bit_prop(i))));
  return big_and(xs);
}

Formula nb_eq_tower(unsigned k, unsigned n) {
  if (k == 0) throw PreconditionError("nb_eq_tower is defined for k >= 1 only");
  if (n == 0) throw PreconditionError("nb_eq_tower: n must be at least 1");
  Formula out = ax(iff(prop(kVal), number_literal(n, n)));
  for (unsigned j = 2; j <= k; ++j) out = ax(iff(prop(kVal), out));
  return out;
}

Formula tiling_reduction(const TilingInstance& inst, unsigned k, Fresh& fr, std::uint64_t cap) {
  inst.validate();
  if (k == 0) throw PreconditionError("tiling_reduction: k must be at least 1");
  unsigned n = inst.n();
  tetration(k + 1, n, cap);
  for (const auto& t : inst.tiles) fr.avoid({tile_prop(t, 0)});
  auto tp = [](const std::string& t) { return prop(tile_prop(t, 0)); };

  TypeFamily upper = type_family(k + 1, n, fr, cap);
  TypeFamily grid_rows = type_family(k, n, fr, cap);
  LsrNames nm{fr("lft"), fr("sel"), fr("rgt")};
  Formula r = prop(nm.r);

  Formula part = lsr(k + 1, n, {}, nm, fr);
  Formula marker = ex(conj(prop(nm.s), nb_eq_tower(k, n)));

  std::vector<Formula> tiles, excl;
  for (std::size_t a = 0; a < inst.tiles.size(); ++a) {
    tiles.push_back(tp(inst.tiles[a]));
    for (std::size_t b = a + 1; b < inst.tiles.size(); ++b)
      excl.push_back(neg(conj(tp(inst.tiles[a]), tp(inst.tiles[b]))));
  }
  Formula cov;
  {
    std::string x = fr("x"), y = fr("y");
    cov = forall(std::vector<std::string>{x, y},
                 implies(big_and({qctl::bind(x, 1, fr), at_k(x, 1, r), at_k(x, 1, qctl::bind(y, 1, fr))}),
                         at({x, y}, conj(big_or(tiles), big_and(excl)))));
  }
  auto matching = [&](const std::vector<TilePair>& rel, bool horizontal) {
    std::string x = fr("x"), x2 = fr("x"), y = fr("y"), y2 = fr("y");
    Formula step = horizontal
                       ? conj(compare(k + 1, n, {x}, {x2}, Relation::Succ, fr),
                              compare(k + 1, n, {x, y}, {x2, y2}, Relation::Eq, fr))
                       : conj(compare(k + 1, n, {x}, {x2}, Relation::Eq, fr),
                              compare(k + 1, n, {x, y}, {x2, y2}, Relation::Succ, fr));
    Formula guard = big_and({qctl::bind(x, 1, fr), at_k(x, 1, r), qctl::bind(x2, 1, fr), at_k(x2, 1, r),
                             at_k(x, 1, qctl::bind(y, 1, fr)), at_k(x2, 1, qctl::bind(y2, 1, fr)), step});
    std::vector<Formula> options;
    for (const auto& [t, u] : rel) options.push_back(conj(at({x, y}, tp(t)), at({x2, y2}, tp(u))));
    return forall(std::vector<std::string>{x, x2, y, y2}, implies(guard, big_or(options)));
  };
  Formula hori = matching(inst.hori, true);
  Formula verti = matching(inst.verti, false);

  Formula init;
  {
    std::string x = fr("x");
    std::vector<Formula> cells;
    for (unsigned i = 0; i < n; ++i) {
      LsrNames in{fr("lft"), fr("sel"), fr("rgt")};
      cells.push_back(exists(std::vector<std::string>{in.l, in.s, in.r},
                             big_and({lsr(k, n, {}, in, fr), exactly(i, prop(in.r), fr),
                                      ex(conj(prop(in.s), tp(inst.init[i])))})));
    }
    init = forall(x, implies(conj(qctl::bind(x, 1, fr), at_k(x, 1, grid_rows.first)),
                             at_k(x, 1, big_and(cells))));
  }
  return conj(upper.type, exists(std::vector<std::string>{nm.l, nm.s, nm.r},
                                 big_and({part, marker, cov, init, hori, verti})));
}

TreeModel canonical_type_tree(unsigned k, unsigned n, std::uint64_t number, std::uint64_t cap) {
  if (n == 0) throw PreconditionError("canonical_type_tree: n must be at least 1");
  std::vector<std::uint64_t> width(k + 1);
  std::uint64_t total = 1, level = 1;
  for (unsigned j = k; j >= 1; --j) {
    width[j] = tetration_u64(j, n, cap);
    level *= width[j];
    total += level;
    if (total > cap)
      throw CapExceeded("canonical type-" + std::to_string(k) + " tree has more than " +
                            std::to_string(cap) + " nodes",
                        "--tetration-cap", static_cast<long double>(total));
  }
  TreeModel t;
  std::function<void(unsigned, std::uint64_t, NodeId)> grow = [&](unsigned j, std::uint64_t num,
                                                                   NodeId v) {
    if (j == 0) {
      for (unsigned i = 0; i < n; ++i)
        if ((num >> i) & 1U) t.add_label(v, bit_prop(i));
      return;
    }
    for (std::uint64_t b = 0; b < width[j]; ++b) {
      std::vector<std::string> labels;
      if (b < 64 && ((num >> b) & 1U)) labels.push_back(kVal);
      NodeId c = t.add_node(labels, v);
      grow(j - 1, b, c);
    }
  };
  NodeId root = t.add_node();
  t.root = root;
  grow(k, number, root);
  return t;
}

GridTree canonical_grid_tree(unsigned n) {
  if (n == 0 || n > kMaxGridExponent)
    throw PreconditionError("canonical_grid_tree: n out of range");
  GridTree g;
  std::size_t side = std::size_t{1} << n;
  g.leaf.assign(side * side, -1);
  NodeId root = g.tree.add_node();
  g.tree.root = root;
  std::function<void(NodeId, unsigned, std::size_t, std::size_t)> grow =
      [&](NodeId v, unsigned level, std::size_t h, std::size_t vv) {
        if (level == 2 * n) {
          for (unsigned i = 0; i < n; ++i) {
            if ((h >> i) & 1U) g.tree.add_label(v, h_prop(i));
            if ((vv >> i) & 1U) g.tree.add_label(v, v_prop(i));
          }
          g.leaf[h * side + vv] = v;
          return;
        }
        for (std::size_t b = 0; b < 2; ++b) {
          NodeId c = g.tree.add_node({}, v);
          if (level < n)
            grow(c, level + 1, h | (b << level), vv);
          else
            grow(c, level + 1, h, vv | (b << (level - n)));
        }
      };
  grow(root, 0, 0, 0);
  return g;
}

TreeModel tiling_witness_tree(const TilingInstance& inst, unsigned k, const Tiling& tau,
                              std::uint64_t cap) {
  std::uint64_t side = tetration_u64(k, inst.n(), cap);
  if (tau.side != side) throw PreconditionError("tiling_witness_tree: tiling side mismatch");
  TreeModel t = canonical_type_tree(k + 1, inst.n(), 0, cap);
  const auto& row = t.children[static_cast<std::size_t>(t.root)];
  for (std::uint64_t i = 0; i < side; ++i) {
    const auto& col = t.children[static_cast<std::size_t>(row[i])];
    for (std::uint64_t j = 0; j < side; ++j)
      t.add_label(col[j], tile_prop(inst.tiles[tau.at(i, j)], 0));
  }
  return t;
}

}  // namespace qctl
