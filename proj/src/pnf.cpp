#include <algorithm>
#include <set>

#include "qctl/checker.hpp"

namespace qctl {

namespace {

struct Bound {
  bool forall;
  std::string name;
};

struct Prenex {
  std::vector<Bound> prefix;
  Formula matrix;
};

class PnfBuilder {
 public:
  explicit PnfBuilder(const Formula& f) : used_(all_props(f)) {}

  Prenex run(const Formula& g) {
    switch (g->op) {
      case Op::Prop:
      case Op::True:
      case Op::False: return {{}, g};
      case Op::Not: {
        Prenex p = run(g->a);
        for (auto& b : p.prefix) b.forall = !b.forall;
        return {std::move(p.prefix), f::neg(p.matrix)};
      }
      case Op::EX: {
        Prenex p = run(g->a);
        return {std::move(p.prefix), f::ex(p.matrix)};
      }
      case Op::AX: {
        Prenex p = run(g->a);
        return {std::move(p.prefix), f::ax(p.matrix)};
      }
      case Op::And:
      case Op::Or:
      case Op::Implies: {
        Prenex l = run(g->a);
        Prenex r = run(g->b);
        if (g->op == Op::Implies)
          for (auto& b : l.prefix) b.forall = !b.forall;
        return combine(g->op, std::move(l), std::move(r), free_props(g->b));
      }
      case Op::Iff:
        return run(f::conj(f::implies(g->a, g->b), f::implies(g->b, g->a)));
      case Op::Exists:
      case Op::Forall: {
        Prenex p = run(g->a);
        for (auto& b : p.prefix)
          if (b.name == g->name) rename(p, b.name, fresh());
        p.prefix.insert(p.prefix.begin(), Bound{g->op == Op::Forall, g->name});
        return p;
      }
      default:
        throw PreconditionError("to_pnf: operator outside the EX fragment in '" + render(g) + "'");
    }
  }

 private:
  std::set<std::string> used_;
  std::size_t counter_ = 0;

  std::string fresh() {
    std::string name;
    do {
      name = "q" + std::to_string(counter_++);
    } while (used_.count(name));
    used_.insert(name);
    return name;
  }

  static Formula subst(const Formula& m, const std::string& from, const std::string& to) {
    switch (m->op) {
      case Op::Prop: return m->name == from ? f::prop(to) : m;
      case Op::True:
      case Op::False: return m;
      default: break;
    }
    auto n = std::make_shared<Node>(*m);
    if (m->a) n->a = subst(m->a, from, to);
    if (m->b) n->b = subst(m->b, from, to);
    return n;
  }

  // Renames the innermost prefix binder called `from`; the matrix is quantifier-free.
  static void rename(Prenex& p, std::string from, const std::string& to) {
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) {
      if (it->name == from) {
        it->name = to;
        p.matrix = subst(p.matrix, from, to);
        return;
      }
    }
  }

  Prenex combine(Op op, Prenex l, Prenex r, const std::set<std::string>& free_right) {
    for (auto& b : l.prefix)
      if (free_right.count(b.name)) rename(l, b.name, fresh());
    std::set<std::string> taken = free_props(l.matrix);
    for (const auto& b : l.prefix) taken.insert(b.name);
    for (auto& b : r.prefix)
      if (taken.count(b.name)) rename(r, b.name, fresh());
    Prenex out;
    out.prefix = std::move(l.prefix);
    out.prefix.insert(out.prefix.end(), r.prefix.begin(), r.prefix.end());
    switch (op) {
      case Op::And: out.matrix = f::conj(l.matrix, r.matrix); break;
      case Op::Or: out.matrix = f::disj(l.matrix, r.matrix); break;
      default: out.matrix = f::implies(l.matrix, r.matrix); break;
    }
    return out;
  }
};

}  // namespace

Formula to_pnf(const Formula& g) {
  Fragment fr = fragment_of(g);
  if (fr != Fragment::ExOnly)
    throw PreconditionError(std::string("to_pnf expects an EX-fragment formula, got ") +
                            fragment_name(fr));
  PnfBuilder b(g);
  Prenex p = b.run(g);
  Formula out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
    out = it->forall ? f::forall(it->name, out) : f::exists(it->name, out);
  return out;
}

}  // namespace qctl
