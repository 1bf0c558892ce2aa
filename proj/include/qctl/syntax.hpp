#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qctl {

enum class Op {
  Prop,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Iff,
  EX,
  AX,
  EU,
  AU,
  EF,
  AG,
  AF,
  EXEF,
  AXAG,
  Exists,
  Forall,
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string name;  // Prop name or bound variable
  Formula a;
  Formula b;
};

enum class Fragment { ExOnly, EfOnly, ExefOnly, Full };

const char* fragment_name(Fragment f);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

namespace f {
Formula prop(const std::string& name);
Formula top();
Formula bot();
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula ex(Formula a);
Formula ax(Formula a);
Formula eu(Formula a, Formula b);
Formula au(Formula a, Formula b);
Formula ef(Formula a);
Formula ag(Formula a);
Formula af(Formula a);
Formula exef(Formula a);
Formula axag(Formula a);
Formula exists(const std::string& p, Formula a);
Formula forall(const std::string& p, Formula a);
Formula exists(const std::vector<std::string>& ps, Formula a);
Formula forall(const std::vector<std::string>& ps, Formula a);

// Empty conjunction is true, empty disjunction is false.
Formula big_and(const std::vector<Formula>& xs);
Formula big_or(const std::vector<Formula>& xs);
Formula ex_n(std::size_t k, Formula a);
}  // namespace f

Formula parse(const std::string& text);
std::string render(const Formula& f);

std::size_t modal_depth(const Formula& f);
std::size_t length(const Formula& f);
Fragment fragment_of(const Formula& f);
Formula desugar(const Formula& f);

bool structurally_equal(const Formula& x, const Formula& y);
std::set<std::string> free_props(const Formula& f);
std::set<std::string> all_props(const Formula& f);
std::size_t quantifier_count(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool is_prenex(const Formula& f);
// Number of leading quantifiers.
std::size_t prefix_length(const Formula& f);

bool is_unary(Op op);
bool is_binary(Op op);
bool is_temporal(Op op);
bool is_quantifier(Op op);

}  // namespace qctl
