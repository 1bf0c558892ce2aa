#include "qctl/sat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qctl/errors.hpp"

namespace qctl {

const char* sat_kind_name(SatOutcome::Kind k) {
  switch (k) {
    case SatOutcome::Kind::Sat: return "SAT";
    case SatOutcome::Kind::UnsatWithinBound: return "UNSAT-within-bound";
    case SatOutcome::Kind::Unsat: return "UNSAT";
  }
  return "?";
}

namespace {

bool mentions(const Formula& g, Op a, Op b, Op c) {
  if (!g) return false;
  if (g->op == a || g->op == b || g->op == c) return true;
  return mentions(g->a, a, b, c) || mentions(g->b, a, b, c);
}

void confirm(const TreeModel& t, FrontierMode m, const Formula& f) {
  if (!check(t, m, t.root, f, Backend::Pruned, false).verdict)
    throw std::logic_error("sat witness fails to re-verify: " + render(f));
}

}  // namespace

SatOutcome sat_ex_bounded(const Formula& f, unsigned N, const SatOptions& opts) {
  if (N == 0) throw PreconditionError("sat_ex_bounded needs N >= 1");
  if (fragment_of(desugar(f)) != Fragment::ExOnly)
    throw PreconditionError("sat_ex_bounded expects an EX-fragment formula, got " +
                            std::string(fragment_name(fragment_of(desugar(f)))));
  auto fp = free_props(f);
  std::vector<std::string> props(fp.begin(), fp.end());
  unsigned md = static_cast<unsigned>(modal_depth(f));
  TreeSpace space = TreeSpace::exact_depth(N, md, props, opts.cap);
  Checker c(f, CheckOptions{opts.backend, false, kDefaultVariantCap});
  SatOutcome out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    TreeModel t = space.at(i);
    ++out.examined;
    if (c.holds(apply_frontier(t, FrontierMode::self_loop()), t.root)) {
      confirm(t, FrontierMode::self_loop(), f);
      out.kind = SatOutcome::Kind::Sat;
      out.witness = std::move(t);
      return out;
    }
  }
  out.kind = SatOutcome::Kind::Unsat;
  return out;
}

SatOutcome sat_finite_tree(const Formula& f, unsigned max_size, FrontierMode mode,
                           const FiniteSatOptions& opts) {
  if (mode.kind == FrontierMode::Kind::Strict && mentions(f, Op::EU, Op::AU, Op::AF))
    throw PreconditionError("Strict mode search needs a formula without EU, AU and AF");
  auto fp = free_props(f);
  std::vector<std::string> alphabet;
  std::vector<std::string> closed;
  if (opts.alphabet) {
    std::set<std::string> keep(opts.alphabet->begin(), opts.alphabet->end());
    alphabet.assign(keep.begin(), keep.end());
    for (const auto& p : fp)
      if (!keep.count(p)) closed.push_back(p);
  } else {
    alphabet.assign(fp.begin(), fp.end());
  }
  Formula g = closed.empty() ? f : f::exists(closed, f);
  TreeSpace space = TreeSpace::by_size(max_size, alphabet, opts.max_branching, -1, opts.cap);
  Checker c(g, CheckOptions{opts.backend, !closed.empty(), kDefaultVariantCap});
  SatOutcome out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    TreeModel t = space.at(i);
    ++out.examined;
    CheckOutcome r = c.run(apply_frontier(t, mode), t.root);
    if (!r.verdict) continue;
    if (!closed.empty()) {
      // The closing block comes first in the compiled block; later entries are f's own.
      Labeling l;
      for (std::size_t j = 0; j < closed.size(); ++j) {
        l.props.push_back(r.witness->props[j]);
        l.true_at.push_back(r.witness->true_at[j]);
      }
      t = apply_labeling(t, l);
    }
    confirm(t, mode, f);
    out.kind = SatOutcome::Kind::Sat;
    out.witness = std::move(t);
    return out;
  }
  out.kind = SatOutcome::Kind::UnsatWithinBound;
  out.bound = "no tree with at most " + std::to_string(max_size) + " nodes";
  return out;
}

}  // namespace qctl
