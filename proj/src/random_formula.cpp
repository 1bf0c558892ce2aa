#include "qctl/random_formula.hpp"

namespace qctl {

namespace {

struct Gen {
  std::mt19937_64& rng;
  const RandomFormulaOptions& o;
  unsigned quantifiers = 0;
  unsigned budget = 0;
  std::vector<std::string> scope;

  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); }

  Formula atom() {
    unsigned r = pick(12);
    if (r == 0) return f::top();
    if (r == 1) return f::bot();
    if (!scope.empty() && r < 7) return f::prop(scope[pick(static_cast<unsigned>(scope.size()))]);
    return f::prop(o.props[pick(static_cast<unsigned>(o.props.size()))]);
  }

  Formula go(unsigned md) {
    if (budget == 0 || pick(5) == 0) return atom();
    --budget;
    unsigned r = pick(o.use_iff ? 10 : 9);
    switch (r) {
      case 0: return f::neg(go(md));
      case 1: {
        Formula a = go(md);
        return f::conj(a, go(md));
      }
      case 2: {
        Formula a = go(md);
        return f::disj(a, go(md));
      }
      case 3: {
        Formula a = go(md);
        return f::implies(a, go(md));
      }
      case 4:
      case 5:
        if (md == 0) return atom();
        return (o.use_ax && r == 5) ? f::ax(go(md - 1)) : f::ex(go(md - 1));
      case 6:
      case 7: {
        if (quantifiers >= o.max_quantifiers) return go(md);
        ++quantifiers;
        std::string name = pick(4) == 0 ? o.props[pick(static_cast<unsigned>(o.props.size()))]
                                        : "z" + std::to_string(quantifiers - 1);
        scope.push_back(name);
        Formula body = go(md);
        scope.pop_back();
        return r == 6 ? f::exists(name, body) : f::forall(name, body);
      }
      case 8:
        if (md == 0) return atom();
        return f::ex(go(md - 1));
      default: {
        Formula a = go(md);
        return f::iff(a, go(md));
      }
    }
  }
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opts) {
  Gen g{rng, opts, 0, 0, {}};
  g.budget = opts.max_size;
  return g.go(opts.max_modal_depth);
}

std::vector<Formula> random_pool(std::uint64_t seed, std::size_t count,
                                 const RandomFormulaOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(random_formula(rng, opts));
  return out;
}

}  // namespace qctl
