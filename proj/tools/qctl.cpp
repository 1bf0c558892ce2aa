#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qctl/checker.hpp"
#include "qctl/constructions.hpp"
#include "qctl/errors.hpp"
#include "qctl/random_formula.hpp"
#include "qctl/sat.hpp"
#include "qctl/syntax.hpp"
#include "qctl/tiling.hpp"
#include "qctl/translations.hpp"
#include "qctl/trees.hpp"
#include "qctl/verify.hpp"

using json = nlohmann::json;
using namespace qctl;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FormulaArg {
  std::string text;
  std::string file;

  void add(CLI::App* app) {
    app->add_option("-f,--formula", text, "formula text");
    app->add_option("--formula-file", file, "file holding the formula");
  }
  Formula get() const {
    if (!text.empty() && !file.empty()) throw InputError("give --formula or --formula-file, not both");
    if (!file.empty()) return parse(read_file(file));
    if (text.empty()) throw InputError("a formula is required (--formula or --formula-file)");
    return parse(text);
  }
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json tree_json(const TreeModel& t) { return json::parse(tree_to_json(t)); }

json labeling_json(const Labeling& l) {
  json j = json::object();
  for (std::size_t i = 0; i < l.props.size(); ++i) j[l.props[i]] = l.true_at[i];
  return j;
}

int verdict_exit(bool v) { return v ? 0 : 1; }

// ---------------------------------------------------------------- check

struct CheckCmd {
  std::string tree;
  FormulaArg formula;
  std::string mode = "selfloop";
  unsigned pad = 0;
  std::string backend = "pruned";
  std::int64_t node = -1;
  std::uint64_t variant_cap = kDefaultVariantCap;
  bool as_json = false;

  int run() const {
    TreeModel t = load_tree(tree);
    Formula g = formula.get();
    FrontierMode m = parse_frontier(mode, pad);
    NodeId v = node < 0 ? t.root : t.node_by_id(node);
    Checker c(g, CheckOptions{parse_backend(backend), true, variant_cap});
    CheckOutcome r = c.run(apply_frontier(t, m), v);
    if (as_json) {
      json j{{"verdict", r.verdict}, {"mode", m.name()}, {"backend", backend}};
      if (r.witness) j[r.counterexample ? "counterexample" : "witness"] = labeling_json(*r.witness);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << (r.verdict ? "true" : "false") << "\n";
      if (r.witness) {
        std::cout << (r.counterexample ? "counterexample " : "witness ");
        std::cout << labeling_json(*r.witness).dump() << "\n";
      }
    }
    return verdict_exit(r.verdict);
  }
};

// ---------------------------------------------------------------- sat

struct SatCmd {
  FormulaArg formula;
  std::string fragment;
  unsigned max_branching = 0;
  bool finite = false;
  unsigned max_size = 0;
  std::string mode = "strict";
  unsigned pad = 0;
  std::string backend = "pruned";
  std::string alphabet;
  std::size_t enum_cap = kDefaultEnumerationCap;
  bool as_json = false;

  int run() const {
    Formula g = formula.get();
    SatOutcome r;
    std::string query;
    if (finite) {
      if (!fragment.empty()) throw InputError("--finite and --fragment exclude each other");
      if (max_size == 0) throw InputError("--finite needs --max-size");
      FiniteSatOptions o;
      o.backend = parse_backend(backend);
      o.cap = enum_cap;
      o.max_branching = max_branching;
      if (!alphabet.empty()) o.alphabet = split(alphabet);
      FrontierMode m = parse_frontier(mode, pad);
      r = sat_finite_tree(g, max_size, m, o);
      query = "finite trees with at most " + std::to_string(max_size) + " nodes, " + m.name();
    } else {
      if (fragment != "ex") throw InputError("use --fragment ex --max-branching N or --finite");
      if (max_branching == 0) throw InputError("--fragment ex needs --max-branching N >= 1");
      r = sat_ex_bounded(g, max_branching, SatOptions{parse_backend(backend), enum_cap});
      query = "trees of branching <= " + std::to_string(max_branching);
    }
    if (as_json) {
      json j{{"result", sat_kind_name(r.kind)}, {"query", query}, {"examined", r.examined}};
      if (r.witness) j["witness"] = tree_json(*r.witness);
      if (!r.bound.empty()) j["bound"] = r.bound;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << sat_kind_name(r.kind);
      if (!r.bound.empty()) std::cout << " (" << r.bound << ")";
      std::cout << "\n";
      if (r.witness) std::cout << tree_to_json(*r.witness) << "\n";
    }
    return verdict_exit(r.sat());
  }
};

// ---------------------------------------------------------------- gen

struct GenCmd {
  std::string name;
  unsigned k = 1, n = 1, i = 0;
  std::string x = "x";
  std::string path, names, props, xs, ys;
  std::string psi = "true";
  std::string rel = "gt";
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  unsigned md = 2, quantifiers = 2;
  bool finite = false, no_progress = false;
  std::uint64_t tetration_cap = kDefaultTetrationCap;

  Relation relation() const {
    if (rel == "succ") return Relation::Succ;
    if (rel == "gt") return Relation::Gt;
    if (rel == "eq") return Relation::Eq;
    throw InputError("unknown relation '" + rel + "' (succ, gt, eq)");
  }

  int run() const {
    Fresh fr(seed);
    std::vector<Formula> out;
    if (name == "bind") {
      out.push_back(qctl::bind(x, k, fr));
    } else if (name == "at") {
      out.push_back(at(split(path), parse(psi)));
    } else if (name == "distinct-bind") {
      out.push_back(distinct_bind(split(names), k, fr));
    } else if (name == "bind-chain") {
      out.push_back(bind_chain(split(path), fr));
    } else if (name == "hat") {
      out.push_back(hat(split(xs), split(ys), fr));
    } else if (name == "uni") {
      out.push_back(uni(split(props), fr));
    } else if (name == "exactly") {
      out.push_back(exactly(i, parse(psi), fr));
    } else if (name == "exactly-one") {
      out.push_back(exactly_one(parse(psi), fr));
    } else if (name == "exactly-two") {
      out.push_back(exactly_two_top(fr));
    } else if (name == "at-most-pow2") {
      out.push_back(at_most_pow2(n, fr));
    } else if (name == "grid") {
      out.push_back(grid(n, fr));
    } else if (name == "type") {
      out.push_back(type_family(k, n, fr, tetration_cap).type);
    } else if (name == "first" || name == "last" || name == "unique" || name == "compl") {
      TypeFamily t = type_family(k, n, fr, tetration_cap);
      out.push_back(name == "first"    ? t.first
                    : name == "last"   ? t.last
                    : name == "unique" ? t.unique
                                       : t.compl_);
    } else if (name == "compare") {
      out.push_back(compare(k, n, split(xs), split(ys), relation(), fr));
    } else if (name == "lsr") {
      out.push_back(lsr(k, n, split(xs), LsrNames{}, fr));
    } else if (name == "nb-eq-tower") {
      out.push_back(nb_eq_tower(k, n));
    } else if (name == "tiling") {
      out.push_back(
          tiling_reduction(tiling_instance_from_json(read_file(instance)), k, fr, tetration_cap));
    } else if (name == "amtp") {
      out.push_back(amtp_reduction(amtp_instance_from_json(read_file(instance)), fr));
    } else if (name == "shape") {
      out.push_back(finite ? shape_finite(k, !no_progress) : shape_formula(k));
    } else if (name == "random") {
      RandomFormulaOptions o;
      o.max_modal_depth = md;
      o.max_quantifiers = quantifiers;
      if (!props.empty()) o.props = split(props);
      out = random_pool(seed, count, o);
    } else {
      throw InputError("unknown generator '" + name + "'");
    }
    for (const auto& g : out) std::cout << render(g) << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------- translate

struct TranslateCmd {
  FormulaArg formula;
  std::string to;
  std::string map = "ex-exef";
  bool inverse = false;
  bool no_progress = false;

  int run() const {
    Formula g = formula.get();
    if (to == "ef") {
      std::cout << render(ex_to_ef(g)) << "\n";
    } else if (to == "exef-finite") {
      std::cout << render(ex_to_exef_finite(g, !no_progress)) << "\n";
    } else if (to == "infinite-embed") {
      std::cout << render(embed_finite_in_infinite(g)) << "\n";
    } else if (to == "gt-embed") {
      GtEmbedding e = embed_gt_in_infinite(g);
      std::cout << render(e.embedded) << "\n";
    } else if (to == "totalize") {
      std::cout << render(totalize(g)) << "\n";
    } else if (to == "pnf") {
      std::cout << render(to_pnf(g)) << "\n";
    } else if (to == "modality") {
      std::cout << render(rewrite_modality(g, parse_modality_map(map), inverse)) << "\n";
    } else {
      throw InputError("unknown target '" + to +
                       "' (ef, exef-finite, infinite-embed, gt-embed, totalize, pnf, modality)");
    }
    return 0;
  }
};

// ---------------------------------------------------------------- tile

struct TileCmd {
  std::string instance;
  int k = -1;
  bool amtp = false;
  std::uint64_t tiling_cap = kDefaultTilingCellCap;
  std::uint64_t amtp_cap = kDefaultAmtpCap;
  bool as_json = false;

  int run() const {
    std::string text = read_file(instance);
    if (amtp == (k >= 0)) throw InputError("give exactly one of --k K and --amtp");
    if (amtp) {
      bool r = solve_amtp(amtp_instance_from_json(text), amtp_cap);
      if (as_json)
        std::cout << json{{"amtp", r}}.dump() << "\n";
      else
        std::cout << (r ? "true" : "false") << "\n";
      return verdict_exit(r);
    }
    TilingInstance inst = tiling_instance_from_json(text);
    auto tau = solve_tiling(inst, static_cast<unsigned>(k), tiling_cap);
    if (as_json) {
      json j{{"solvable", tau.has_value()}};
      if (tau) j["tiling"] = json::parse(tiling_to_json(inst, *tau));
      std::cout << j.dump() << "\n";
    } else {
      std::cout << (tau ? "solvable" : "unsolvable") << "\n";
      if (tau) std::cout << tiling_to_json(inst, *tau) << "\n";
    }
    return verdict_exit(tau.has_value());
  }
};

// ---------------------------------------------------------------- verify

struct VerifyCmd {
  std::string suite = "all";
  std::uint64_t seed = VerifyOptions{}.seed;
  bool as_json = false;
  bool quiet = false;

  int run() const {
    VerifyOptions o;
    o.seed = seed;
    o.log = quiet || as_json ? nullptr : &std::cerr;
    std::vector<SuiteReport> reps;
    if (suite == "all") {
      reps = run_all(o);
    } else {
      int c = parse_criterion(suite);
      if (c == 0) throw InputError("unknown suite '" + suite + "'");
      reps.push_back(run_criterion(c, o));
    }
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reps) {
      ok = ok && r.pass();
      if (as_json) {
        arr.push_back({{"criterion", r.criterion}, {"name", r.name}, {"pass", r.pass()},
                       {"cases", r.cases}, {"failures", r.failures}, {"seconds", r.seconds},
                       {"notes", r.notes}});
      } else {
        std::cout << r.line() << "\n";
        for (const auto& nt : r.notes) std::cout << "    " << nt << "\n";
      }
    }
    if (as_json) std::cout << arr.dump(2) << "\n";
    return ok ? 0 : 1;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qctl: quantified CTL on trees"};
  app.require_subcommand(1);

  CheckCmd check_c;
  auto* check = app.add_subcommand("check", "model-check a formula on a tree");
  check->add_option("-t,--tree", check_c.tree, "tree JSON file")->required();
  check_c.formula.add(check);
  check->add_option("-m,--mode", check_c.mode, "strict | selfloop | chainpad");
  check->add_option("--pad", check_c.pad, "chain length for chainpad");
  check->add_option("-b,--backend", check_c.backend, "pruned | exhaustive");
  check->add_option("--node", check_c.node, "external id of the evaluation node");
  check->add_option("--variant-cap", check_c.variant_cap, "exhaustive backend evaluation cap");
  check->add_flag("--json", check_c.as_json);

  SatCmd sat_c;
  auto* sat = app.add_subcommand("sat", "bounded satisfiability");
  sat_c.formula.add(sat);
  sat->add_option("--fragment", sat_c.fragment, "ex");
  sat->add_option("--max-branching", sat_c.max_branching, "branching bound N");
  sat->add_flag("--finite", sat_c.finite, "search finite trees up to --max-size nodes");
  sat->add_option("--max-size", sat_c.max_size);
  sat->add_option("-m,--mode", sat_c.mode, "frontier mode for --finite");
  sat->add_option("--pad", sat_c.pad);
  sat->add_option("-b,--backend", sat_c.backend);
  sat->add_option("--alphabet", sat_c.alphabet,
                  "comma-separated props to enumerate; other free props are closed by exists");
  sat->add_option("--enum-cap", sat_c.enum_cap, "tree enumeration cap");
  sat->add_flag("--json", sat_c.as_json);

  GenCmd gen_c;
  auto* gen = app.add_subcommand("gen", "print a generated formula");
  gen->add_option("name", gen_c.name,
                  "bind at distinct-bind bind-chain hat uni exactly exactly-one exactly-two "
                  "at-most-pow2 grid type first last unique compl compare lsr nb-eq-tower tiling "
                  "amtp shape random")
      ->required();
  gen->add_option("--k", gen_c.k);
  gen->add_option("--n", gen_c.n);
  gen->add_option("--i", gen_c.i);
  gen->add_option("--x", gen_c.x);
  gen->add_option("--path", gen_c.path, "comma-separated nominals");
  gen->add_option("--names", gen_c.names);
  gen->add_option("--props", gen_c.props);
  gen->add_option("--xs", gen_c.xs);
  gen->add_option("--ys", gen_c.ys);
  gen->add_option("--psi", gen_c.psi);
  gen->add_option("--rel", gen_c.rel, "succ | gt | eq");
  gen->add_option("--instance", gen_c.instance, "tiling or AMTP instance JSON file");
  gen->add_option("--seed", gen_c.seed, "fresh-name counter seed; RNG seed for random");
  gen->add_option("--count", gen_c.count);
  gen->add_option("--tetration-cap", gen_c.tetration_cap, "largest t(k,n) a generator may build");
  gen->add_option("--md", gen_c.md);
  gen->add_option("--quantifiers", gen_c.quantifiers);
  gen->add_flag("--finite", gen_c.finite);
  gen->add_flag("--no-progress", gen_c.no_progress);

  TranslateCmd tr_c;
  auto* tr = app.add_subcommand("translate", "rewrite a formula");
  tr_c.formula.add(tr);
  tr->add_option("--to", tr_c.to,
                 "ef | exef-finite | infinite-embed | gt-embed | totalize | pnf | modality")
      ->required();
  tr->add_option("--map", tr_c.map, "ex-exef | ex-ef");
  tr->add_flag("--inverse", tr_c.inverse);
  tr->add_flag("--no-progress", tr_c.no_progress);

  TileCmd tile_c;
  auto* tile = app.add_subcommand("tile", "solve a tiling or AMTP instance");
  tile->add_option("-i,--instance", tile_c.instance)->required();
  tile->add_option("--k", tile_c.k, "grid side t(k,n)");
  tile->add_flag("--amtp", tile_c.amtp);
  tile->add_option("--tiling-cap", tile_c.tiling_cap);
  tile->add_option("--amtp-cap", tile_c.amtp_cap);
  tile->add_flag("--json", tile_c.as_json);

  VerifyCmd ver_c;
  auto* ver = app.add_subcommand("verify", "run acceptance suites");
  ver->add_option("suite", ver_c.suite, "1..9, a suite name, or all");
  ver->add_option("--seed", ver_c.seed);
  ver->add_flag("--json", ver_c.as_json);
  ver->add_flag("-q,--quiet", ver_c.quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return check_c.run();
    if (*sat) return sat_c.run();
    if (*gen) return gen_c.run();
    if (*tr) return tr_c.run();
    if (*tile) return tile_c.run();
    if (*ver) return ver_c.run();
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
