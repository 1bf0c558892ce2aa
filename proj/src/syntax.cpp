#include "qctl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace qctl {

namespace {

Formula make(Op op, Formula a = nullptr, Formula b = nullptr, std::string name = {}) {
  return std::make_shared<const Node>(Node{op, std::move(name), std::move(a), std::move(b)});
}

std::string join_expected(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

}  // namespace

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::ExOnly: return "EX_ONLY";
    case Fragment::EfOnly: return "EF_ONLY";
    case Fragment::ExefOnly: return "EXEF_ONLY";
    case Fragment::Full: return "FULL";
  }
  return "FULL";
}

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       const std::string& found)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": expected one of {" + join_expected(expected) + "} but found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace f {
Formula prop(const std::string& name) { return make(Op::Prop, nullptr, nullptr, name); }
Formula top() { return make(Op::True); }
Formula bot() { return make(Op::False); }
Formula neg(Formula a) { return make(Op::Not, std::move(a)); }
Formula conj(Formula a, Formula b) { return make(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return make(Op::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return make(Op::Implies, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return make(Op::Iff, std::move(a), std::move(b)); }
Formula ex(Formula a) { return make(Op::EX, std::move(a)); }
Formula ax(Formula a) { return make(Op::AX, std::move(a)); }
Formula eu(Formula a, Formula b) { return make(Op::EU, std::move(a), std::move(b)); }
Formula au(Formula a, Formula b) { return make(Op::AU, std::move(a), std::move(b)); }
Formula ef(Formula a) { return make(Op::EF, std::move(a)); }
Formula ag(Formula a) { return make(Op::AG, std::move(a)); }
Formula af(Formula a) { return make(Op::AF, std::move(a)); }
Formula exef(Formula a) { return make(Op::EXEF, std::move(a)); }
Formula axag(Formula a) { return make(Op::AXAG, std::move(a)); }
Formula exists(const std::string& p, Formula a) { return make(Op::Exists, std::move(a), nullptr, p); }
Formula forall(const std::string& p, Formula a) { return make(Op::Forall, std::move(a), nullptr, p); }

Formula exists(const std::vector<std::string>& ps, Formula a) {
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) a = exists(*it, std::move(a));
  return a;
}

Formula forall(const std::vector<std::string>& ps, Formula a) {
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) a = forall(*it, std::move(a));
  return a;
}

Formula big_and(const std::vector<Formula>& xs) {
  if (xs.empty()) return top();
  Formula out = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) out = conj(out, xs[i]);
  return out;
}

Formula big_or(const std::vector<Formula>& xs) {
  if (xs.empty()) return bot();
  Formula out = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) out = disj(out, xs[i]);
  return out;
}

Formula ex_n(std::size_t k, Formula a) {
  for (std::size_t i = 0; i < k; ++i) a = ex(std::move(a));
  return a;
}
}  // namespace f

bool is_unary(Op op) {
  switch (op) {
    case Op::Not: case Op::EX: case Op::AX: case Op::EF: case Op::AG: case Op::AF:
    case Op::EXEF: case Op::AXAG:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Iff;
}

bool is_temporal(Op op) {
  switch (op) {
    case Op::EX: case Op::AX: case Op::EU: case Op::AU: case Op::EF: case Op::AG: case Op::AF:
    case Op::EXEF: case Op::AXAG:
      return true;
    default:
      return false;
  }
}

bool is_quantifier(Op op) { return op == Op::Exists || op == Op::Forall; }

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok {
  Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, Dot, LBrack, RBrack,
  EX, AX, EF, AG, AF, EXEF, AXAG, EStart, AStart, U, Exists, Forall, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

const char* tok_display(Tok t) {
  switch (t) {
    case Tok::Ident: return "proposition";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::EX: return "'EX'";
    case Tok::AX: return "'AX'";
    case Tok::EF: return "'EF'";
    case Tok::AG: return "'AG'";
    case Tok::AF: return "'AF'";
    case Tok::EXEF: return "'EXEF'";
    case Tok::AXAG: return "'AXAG'";
    case Tok::EStart: return "'E['";
    case Tok::AStart: return "'A['";
    case Tok::U: return "'U'";
    case Tok::Exists: return "'exists'";
    case Tok::Forall: return "'forall'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok t, std::size_t n) {
      out.push_back({t, s.substr(i, n), l, cl});
      advance(n);
    };
    if (std::isalnum(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      if ((w == "E" || w == "A") && j < s.size() && s[j] == '[') {
        push(w == "E" ? Tok::EStart : Tok::AStart, 2);
        continue;
      }
      Tok t = Tok::Ident;
      if (w == "true") t = Tok::True;
      else if (w == "false") t = Tok::False;
      else if (w == "EX") t = Tok::EX;
      else if (w == "AX") t = Tok::AX;
      else if (w == "EF") t = Tok::EF;
      else if (w == "AG") t = Tok::AG;
      else if (w == "AF") t = Tok::AF;
      else if (w == "EXEF") t = Tok::EXEF;
      else if (w == "AXAG") t = Tok::AXAG;
      else if (w == "U") t = Tok::U;
      else if (w == "exists") t = Tok::Exists;
      else if (w == "forall") t = Tok::Forall;
      push(t, j - i);
      continue;
    }
    if (s.compare(i, 3, "<->") == 0) { push(Tok::Iff, 3); continue; }
    if (s.compare(i, 2, "->") == 0) { push(Tok::Implies, 2); continue; }
    switch (c) {
      case '~': push(Tok::Not, 1); continue;
      case '&': push(Tok::And, 1); continue;
      case '|': push(Tok::Or, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '.': push(Tok::Dot, 1); continue;
      case '[': push(Tok::LBrack, 1); continue;
      case ']': push(Tok::RBrack, 1); continue;
      default: break;
    }
    throw ParseError(l, cl, {"formula token"}, std::string("'") + s[i] + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::vector<std::string> kUnaryStart = {
    "'~'", "'EX'", "'AX'", "'EF'", "'AG'", "'AF'", "'EXEF'", "'AXAG'", "'E['", "'A['",
    "'true'", "'false'", "proposition", "'('", "'exists'", "'forall'"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula out = formula();
    if (peek().kind != Tok::End) {
      fail({"'&'", "'|'", "'->'", "'<->'", "end of input"});
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, std::move(expected), found);
  }

  void expect(Tok k) {
    if (peek().kind != k) fail({tok_display(k)});
    ++pos_;
  }

  Formula formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quant();
    return level(1);
  }

  Formula quant() {
    bool ex = take().kind == Tok::Exists;
    if (peek().kind != Tok::Ident) fail({"proposition"});
    std::string name = take().text;
    expect(Tok::Dot);
    Formula body = formula();
    return ex ? f::exists(name, body) : f::forall(name, body);
  }

  static int level_of(Tok t) {
    switch (t) {
      case Tok::Iff: return 1;
      case Tok::Implies: return 2;
      case Tok::Or: return 3;
      case Tok::And: return 4;
      default: return 0;
    }
  }

  Formula level(int l) {
    if (l == 5) return unary();
    Formula lhs = level(l + 1);
    while (level_of(peek().kind) == l) {
      Tok op = take().kind;
      Formula rhs = level(l + 1);
      switch (op) {
        case Tok::Iff: lhs = f::iff(lhs, rhs); break;
        case Tok::Implies: lhs = f::implies(lhs, rhs); break;
        case Tok::Or: lhs = f::disj(lhs, rhs); break;
        default: lhs = f::conj(lhs, rhs); break;
      }
      // An unparenthesized quantifier has already consumed everything to its right.
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: ++pos_; return f::neg(unary());
      case Tok::EX: ++pos_; return f::ex(unary());
      case Tok::AX: ++pos_; return f::ax(unary());
      case Tok::EF: ++pos_; return f::ef(unary());
      case Tok::AG: ++pos_; return f::ag(unary());
      case Tok::AF: ++pos_; return f::af(unary());
      case Tok::EXEF: ++pos_; return f::exef(unary());
      case Tok::AXAG: ++pos_; return f::axag(unary());
      case Tok::Exists:
      case Tok::Forall: return quant();
      case Tok::EStart:
      case Tok::AStart: {
        bool e = take().kind == Tok::EStart;
        Formula a = formula();
        expect(Tok::U);
        Formula b = formula();
        expect(Tok::RBrack);
        return e ? f::eu(a, b) : f::au(a, b);
      }
      case Tok::True: ++pos_; return f::top();
      case Tok::False: ++pos_; return f::bot();
      case Tok::Ident: return f::prop(take().text);
      case Tok::LParen: {
        ++pos_;
        Formula inner = formula();
        expect(Tok::RParen);
        return inner;
      }
      default: fail(kUnaryStart);
    }
  }
};

}  // namespace

Formula parse(const std::string& text) { return Parser(lex(text)).parse_all(); }

// ---------------------------------------------------------------- printer

namespace {

int prec(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    default: return 5;
  }
}

const char* binary_symbol(Op op) {
  switch (op) {
    case Op::Iff: return " <-> ";
    case Op::Implies: return " -> ";
    case Op::Or: return " | ";
    default: return " & ";
  }
}

const char* unary_keyword(Op op) {
  switch (op) {
    case Op::EX: return "EX";
    case Op::AX: return "AX";
    case Op::EF: return "EF";
    case Op::AG: return "AG";
    case Op::AF: return "AF";
    case Op::EXEF: return "EXEF";
    case Op::AXAG: return "AXAG";
    default: return "~";
  }
}

// Returns true when the text ends with a quantifier whose scope is still open.
bool emit(const Formula& g, std::string& out) {
  switch (g->op) {
    case Op::Prop: out += g->name; return false;
    case Op::True: out += "true"; return false;
    case Op::False: out += "false"; return false;
    case Op::Exists:
    case Op::Forall: {
      out += g->op == Op::Exists ? "exists " : "forall ";
      out += g->name;
      out += ". ";
      if (is_binary(g->a->op)) {
        out += '(';
        emit(g->a, out);
        out += ')';
      } else {
        emit(g->a, out);
      }
      return true;
    }
    case Op::EU:
    case Op::AU:
      out += g->op == Op::EU ? "E[ " : "A[ ";
      emit(g->a, out);
      out += " U ";
      emit(g->b, out);
      out += " ]";
      return false;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff: {
      int p = prec(g->op);
      std::string left;
      bool left_open = emit(g->a, left);
      if (prec(g->a->op) < p || left_open) {
        out += '(' + left + ')';
      } else {
        out += left;
      }
      out += binary_symbol(g->op);
      if (prec(g->b->op) <= p && is_binary(g->b->op)) {
        out += '(';
        emit(g->b, out);
        out += ')';
        return false;
      }
      return emit(g->b, out);
    }
    default: {
      out += unary_keyword(g->op);
      if (g->op != Op::Not) out += ' ';
      if (is_binary(g->a->op)) {
        out += '(';
        emit(g->a, out);
        out += ')';
        return false;
      }
      return emit(g->a, out);
    }
  }
}

}  // namespace

std::string render(const Formula& g) {
  std::string out;
  emit(g, out);
  return out;
}

// ---------------------------------------------------------------- metrics

std::size_t modal_depth(const Formula& g) {
  std::size_t own = 0;
  if (g->op == Op::EXEF || g->op == Op::AXAG) {
    own = 2;
  } else if (is_temporal(g->op)) {
    own = 1;
  }
  std::size_t sub = 0;
  if (g->a) sub = modal_depth(g->a);
  if (g->b) sub = std::max(sub, modal_depth(g->b));
  return own + sub;
}

std::size_t length(const Formula& g) {
  std::size_t n = 1;
  if (g->a) n += length(g->a);
  if (g->b) n += length(g->b);
  return n;
}

namespace {
void collect_ops(const Formula& g, unsigned& mask) {
  switch (g->op) {
    case Op::EX: case Op::AX: mask |= 1u; break;
    case Op::EF: case Op::AG: mask |= 2u; break;
    case Op::EXEF: case Op::AXAG: mask |= 4u; break;
    case Op::EU: case Op::AU: case Op::AF: mask |= 8u; break;
    default: break;
  }
  if (g->a) collect_ops(g->a, mask);
  if (g->b) collect_ops(g->b, mask);
}
}  // namespace

Fragment fragment_of(const Formula& g) {
  unsigned mask = 0;
  collect_ops(g, mask);
  if (mask == 0 || mask == 1u) return Fragment::ExOnly;
  if (mask == 2u) return Fragment::EfOnly;
  if (mask == 4u) return Fragment::ExefOnly;
  return Fragment::Full;
}

Formula desugar(const Formula& g) {
  using namespace f;
  switch (g->op) {
    case Op::Prop:
    case Op::True: return g;
    case Op::False: return neg(top());
    case Op::Not: return neg(desugar(g->a));
    case Op::And: return conj(desugar(g->a), desugar(g->b));
    case Op::Or: return neg(conj(neg(desugar(g->a)), neg(desugar(g->b))));
    case Op::Implies: return neg(conj(desugar(g->a), neg(desugar(g->b))));
    case Op::Iff: {
      Formula a = desugar(g->a), b = desugar(g->b);
      return conj(neg(conj(a, neg(b))), neg(conj(b, neg(a))));
    }
    case Op::EX: return ex(desugar(g->a));
    case Op::AX: return neg(ex(neg(desugar(g->a))));
    case Op::EU: return eu(desugar(g->a), desugar(g->b));
    case Op::AU: return au(desugar(g->a), desugar(g->b));
    case Op::EF: return eu(top(), desugar(g->a));
    case Op::AG: return neg(eu(top(), neg(desugar(g->a))));
    case Op::AF: return au(top(), desugar(g->a));
    case Op::EXEF: return ex(eu(top(), desugar(g->a)));
    case Op::AXAG: return neg(ex(eu(top(), neg(desugar(g->a)))));
    case Op::Exists: return exists(g->name, desugar(g->a));
    case Op::Forall: return neg(exists(g->name, neg(desugar(g->a))));
  }
  return g;
}

bool structurally_equal(const Formula& x, const Formula& y) {
  if (x.get() == y.get()) return true;
  if (!x || !y) return false;
  if (x->op != y->op || x->name != y->name) return false;
  return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
}

namespace {
void free_rec(const Formula& g, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (g->op == Op::Prop) {
    if (std::find(bound.begin(), bound.end(), g->name) == bound.end()) out.insert(g->name);
    return;
  }
  if (is_quantifier(g->op)) {
    bound.push_back(g->name);
    free_rec(g->a, bound, out);
    bound.pop_back();
    return;
  }
  if (g->a) free_rec(g->a, bound, out);
  if (g->b) free_rec(g->b, bound, out);
}

void all_rec(const Formula& g, std::set<std::string>& out) {
  if (g->op == Op::Prop || is_quantifier(g->op)) out.insert(g->name);
  if (g->a) all_rec(g->a, out);
  if (g->b) all_rec(g->b, out);
}
}  // namespace

std::set<std::string> free_props(const Formula& g) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  free_rec(g, bound, out);
  return out;
}

std::set<std::string> all_props(const Formula& g) {
  std::set<std::string> out;
  all_rec(g, out);
  return out;
}

std::size_t quantifier_count(const Formula& g) {
  std::size_t n = is_quantifier(g->op) ? 1 : 0;
  if (g->a) n += quantifier_count(g->a);
  if (g->b) n += quantifier_count(g->b);
  return n;
}

bool is_quantifier_free(const Formula& g) { return quantifier_count(g) == 0; }

std::size_t prefix_length(const Formula& g) {
  std::size_t n = 0;
  const Node* cur = g.get();
  while (is_quantifier(cur->op)) {
    ++n;
    cur = cur->a.get();
  }
  return n;
}

bool is_prenex(const Formula& g) {
  const Node* cur = g.get();
  while (is_quantifier(cur->op)) cur = cur->a.get();
  Formula body(g, cur);
  return is_quantifier_free(body);
}

}  // namespace qctl
