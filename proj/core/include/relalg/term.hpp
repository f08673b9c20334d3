#pragma once
// Terms and equations over the relation-algebra signature.
//
// Concrete syntax:
//   equation := term '=' term
//   term     := meet ('+' meet)*         join, loosest
//   meet     := comp ('&' comp)*
//   comp     := unary (';' unary)*       composition, tightest binary
//   unary    := '-' unary | postfix      complement
//   postfix  := primary '~'*             converse binds tighter than '-'
//   primary  := '0' | '1' | 'e' | 'x' N | '(' term ')'
// Binary operators associate to the left; N is a positive integer without
// leading zeros. Whitespace is ignored. The canonical printer puts single
// spaces around binary operators and '=' and adds only the parentheses the
// grammar needs, so print(parse(s)) == s for canonical s.
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

enum class TermOp { Var, Zero, Top, Id, Not, Conv, Join, Meet, Comp };

class Term {
 public:
  static Term var(unsigned index);
  static Term zero();
  static Term top();
  static Term id();
  static Term complement(Term t);
  static Term converse(Term t);
  static Term join(Term a, Term b);
  static Term meet(Term a, Term b);
  static Term compose(Term a, Term b);

  TermOp op() const { return node_->op; }
  /// Variable index (1-based) for Var nodes.
  unsigned index() const { return node_->index; }
  const Term& left() const { return *node_->left; }
  const Term& right() const { return *node_->right; }
  /// Highest variable index occurring, 0 if none.
  unsigned max_var() const;
  /// Number of nodes (variables, constants and operations).
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    TermOp op;
    unsigned index = 0;
    std::shared_ptr<const Term> left;
    std::shared_ptr<const Term> right;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;
  unsigned variable_count() const;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// ParseError carries the byte offset of the problem. Terms and equations
/// must use exactly the variables x1..xk for some k.
Term parse_term(std::string_view text);
Equation parse_equation(std::string_view text);
/// An equation if the text contains '=', otherwise a term.
std::variant<Term, Equation> parse(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Equation& eq);

/// Operation symbols plus variable occurrences on both sides; constants are
/// nullary operation symbols and '=' is not counted.
std::size_t equation_length(const Equation& eq);

/// assignment[i] is the value of x(i+1). UsageError if a variable is
/// unbound or a value belongs to another algebra.
Element eval(const Term& t, const FiniteRelationAlgebra& algebra,
             const std::vector<Element>& assignment);

enum class FalsifyStatus { Falsified, Valid, Unknown };

struct FalsifyOptions {
  bool exhaustive = true;
  /// Random mode.
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  /// Exhaustive-mode limit on |A|^vars; 0 means RELALG_MAX_ASSIGNMENTS or
  /// 2^24.
  std::uint64_t budget = 0;
  unsigned threads = 1;
};

struct FalsifyResult {
  FalsifyStatus status = FalsifyStatus::Unknown;
  std::vector<Element> assignment;
  Element lhs_value;
  Element rhs_value;
  std::uint64_t examined = 0;
};

/// Exhaustive mode returns the first falsifying assignment with x1 most
/// significant and values in increasing bitset order, or Valid; it throws
/// ResourceError when |A|^vars exceeds the budget. Random mode returns the
/// first falsifying sample or Unknown.
FalsifyResult falsify(const Equation& eq, const FiniteRelationAlgebra& algebra,
                      const FalsifyOptions& options = {});

/// "x1=a0+t1 x2=0".
std::string format_assignment(const FiniteRelationAlgebra& algebra,
                              const std::vector<Element>& assignment);

}  // namespace relalg
