#include "relalg/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "env.hpp"
#include "relalg/errors.hpp"
#include "relalg/parallel.hpp"
#include "relalg/splitmix.hpp"

namespace relalg {

// ---------------------------------------------------------------------------
// Construction

Term Term::var(unsigned index) {
  if (index == 0) throw UsageError("variables are numbered from 1");
  return Term(std::make_shared<const Node>(Node{TermOp::Var, index, nullptr, nullptr}));
}
Term Term::zero() { return Term(std::make_shared<const Node>(Node{TermOp::Zero, 0, nullptr, nullptr})); }
Term Term::top() { return Term(std::make_shared<const Node>(Node{TermOp::Top, 0, nullptr, nullptr})); }
Term Term::id() { return Term(std::make_shared<const Node>(Node{TermOp::Id, 0, nullptr, nullptr})); }

Term Term::complement(Term t) {
  return Term(std::make_shared<const Node>(
      Node{TermOp::Not, 0, std::make_shared<const Term>(std::move(t)), nullptr}));
}
Term Term::converse(Term t) {
  return Term(std::make_shared<const Node>(
      Node{TermOp::Conv, 0, std::make_shared<const Term>(std::move(t)), nullptr}));
}

namespace {
std::shared_ptr<const Term> share(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

Term Term::join(Term a, Term b) {
  return Term(std::make_shared<const Node>(
      Node{TermOp::Join, 0, share(std::move(a)), share(std::move(b))}));
}
Term Term::meet(Term a, Term b) {
  return Term(std::make_shared<const Node>(
      Node{TermOp::Meet, 0, share(std::move(a)), share(std::move(b))}));
}
Term Term::compose(Term a, Term b) {
  return Term(std::make_shared<const Node>(
      Node{TermOp::Comp, 0, share(std::move(a)), share(std::move(b))}));
}

namespace {
int arity(TermOp op) {
  switch (op) {
    case TermOp::Var:
    case TermOp::Zero:
    case TermOp::Top:
    case TermOp::Id:
      return 0;
    case TermOp::Not:
    case TermOp::Conv:
      return 1;
    default:
      return 2;
  }
}
}  // namespace

unsigned Term::max_var() const {
  switch (arity(op())) {
    case 0:
      return op() == TermOp::Var ? index() : 0;
    case 1:
      return left().max_var();
    default:
      return std::max(left().max_var(), right().max_var());
  }
}

std::size_t Term::size() const {
  switch (arity(op())) {
    case 0:
      return 1;
    case 1:
      return 1 + left().size();
    default:
      return 1 + left().size() + right().size();
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (arity(a.op())) {
    case 0:
      return a.index() == b.index();
    case 1:
      return a.left() == b.left();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

unsigned Equation::variable_count() const { return std::max(lhs.max_var(), rhs.max_var()); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term term() {
    Term t = meet();
    while (peek() == '+') {
      ++pos_;
      t = Term::join(std::move(t), meet());
    }
    return t;
  }

  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  bool at_end() { return peek() == '\0' && pos_ >= text_.size(); }

  // First occurrence offset of each variable index.
  const std::map<unsigned, std::size_t>& variables() const { return vars_; }

 private:
  Term meet() {
    Term t = comp();
    while (peek() == '&') {
      ++pos_;
      t = Term::meet(std::move(t), comp());
    }
    return t;
  }

  Term comp() {
    Term t = unary();
    while (peek() == ';') {
      ++pos_;
      t = Term::compose(std::move(t), unary());
    }
    return t;
  }

  Term unary() {
    if (peek() == '-') {
      ++pos_;
      return Term::complement(unary());
    }
    Term t = primary();
    while (peek() == '~') {
      ++pos_;
      t = Term::converse(std::move(t));
    }
    return t;
  }

  Term primary() {
    const char c = peek();
    const std::size_t start = pos_;
    switch (c) {
      case '0':
        ++pos_;
        return Term::zero();
      case '1':
        ++pos_;
        return Term::top();
      case 'e':
        ++pos_;
        return Term::id();
      case '(': {
        ++pos_;
        Term t = term();
        if (peek() != ')') throw ParseError("expected ')'", pos_);
        ++pos_;
        return t;
      }
      case 'x': {
        ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (pos_ == digits) throw ParseError("expected variable number after 'x'", digits);
        if (text_[digits] == '0') throw ParseError("variable numbers start at 1 without leading zeros", digits);
        if (pos_ - digits > 6) throw ParseError("variable number too large", digits);
        const unsigned index = static_cast<unsigned>(std::stoul(std::string(text_.substr(digits, pos_ - digits))));
        vars_.emplace(index, start);
        return Term::var(index);
      }
      case '\0':
        throw ParseError("unexpected end of input", pos_);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<unsigned, std::size_t> vars_;
};

void require_contiguous(const Parser& parser) {
  unsigned expected = 1;
  for (const auto& [index, offset] : parser.variables()) {
    if (index != expected) {
      throw ParseError("variables must be x1..xk without gaps; x" + std::to_string(expected) +
                           " is missing",
                       offset);
    }
    ++expected;
  }
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser parser(text);
  Term t = parser.term();
  if (!parser.at_end()) {
    throw ParseError(std::string("unexpected '") + parser.peek() + "'", parser.pos());
  }
  require_contiguous(parser);
  return t;
}

Equation parse_equation(std::string_view text) {
  Parser parser(text);
  Term lhs = parser.term();
  if (parser.peek() != '=') throw ParseError("expected '='", parser.pos());
  parser.advance();
  Term rhs = parser.term();
  if (!parser.at_end()) {
    throw ParseError(std::string("unexpected '") + parser.peek() + "'", parser.pos());
  }
  require_contiguous(parser);
  return Equation{std::move(lhs), std::move(rhs)};
}

std::variant<Term, Equation> parse(std::string_view text) {
  if (text.find('=') != std::string_view::npos) return parse_equation(text);
  return parse_term(text);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int level(TermOp op) {
  switch (op) {
    case TermOp::Join:
      return 1;
    case TermOp::Meet:
      return 2;
    case TermOp::Comp:
      return 3;
    case TermOp::Not:
      return 4;
    case TermOp::Conv:
      return 5;
    default:
      return 6;
  }
}

void print(const Term& t, std::string& out);

void print_child(const Term& t, bool parens, std::string& out) {
  if (parens) out += '(';
  print(t, out);
  if (parens) out += ')';
}

void print(const Term& t, std::string& out) {
  const int lv = level(t.op());
  switch (t.op()) {
    case TermOp::Var:
      out += 'x' + std::to_string(t.index());
      return;
    case TermOp::Zero:
      out += '0';
      return;
    case TermOp::Top:
      out += '1';
      return;
    case TermOp::Id:
      out += 'e';
      return;
    case TermOp::Not:
      out += '-';
      print_child(t.left(), level(t.left().op()) < lv, out);
      return;
    case TermOp::Conv:
      print_child(t.left(), level(t.left().op()) < lv, out);
      out += '~';
      return;
    case TermOp::Join:
    case TermOp::Meet:
    case TermOp::Comp: {
      const char* sym = t.op() == TermOp::Join ? " + " : t.op() == TermOp::Meet ? " & " : " ; ";
      print_child(t.left(), level(t.left().op()) < lv, out);
      out += sym;
      print_child(t.right(), level(t.right().op()) <= lv, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Equation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::size_t equation_length(const Equation& eq) { return eq.lhs.size() + eq.rhs.size(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Postfix program over atom sets, so the falsifier does not walk shared
// pointers for every assignment.
struct Program {
  struct Ins {
    TermOp op;
    unsigned index;
  };
  std::vector<Ins> code;

  void compile(const Term& t) {
    switch (arity(t.op())) {
      case 0:
        break;
      case 1:
        compile(t.left());
        break;
      default:
        compile(t.left());
        compile(t.right());
    }
    code.push_back({t.op(), t.op() == TermOp::Var ? t.index() : 0});
  }
};

class Evaluator {
 public:
  explicit Evaluator(const FiniteRelationAlgebra& algebra) : alg_(algebra) {
    const std::size_t k = algebra.atom_count();
    conv_.resize(k);
    for (AtomId a = 0; a < k; ++a) conv_[a] = atom_bit(algebra.converse_atom(a));
  }

  AtomSet run(const Program& prog, const std::vector<AtomSet>& vars) {
    stack_.clear();
    for (const auto& ins : prog.code) {
      switch (ins.op) {
        case TermOp::Var:
          stack_.push_back(vars[ins.index - 1]);
          break;
        case TermOp::Zero:
          stack_.push_back(0);
          break;
        case TermOp::Top:
          stack_.push_back(alg_.universe());
          break;
        case TermOp::Id:
          stack_.push_back(alg_.identity_atoms());
          break;
        case TermOp::Not:
          stack_.back() = alg_.universe() & ~stack_.back();
          break;
        case TermOp::Conv: {
          AtomSet out = 0;
          for_each_atom(stack_.back(), [&](AtomId a) { out |= conv_[a]; });
          stack_.back() = out;
          break;
        }
        case TermOp::Join:
        case TermOp::Meet:
        case TermOp::Comp: {
          const AtomSet b = stack_.back();
          stack_.pop_back();
          AtomSet& a = stack_.back();
          if (ins.op == TermOp::Join) {
            a |= b;
          } else if (ins.op == TermOp::Meet) {
            a &= b;
          } else {
            AtomSet out = 0;
            for_each_atom(a, [&](AtomId x) {
              for_each_atom(b, [&](AtomId y) { out |= alg_.comp_atoms(x, y); });
            });
            a = out;
          }
          break;
        }
      }
    }
    return stack_.back();
  }

 private:
  const FiniteRelationAlgebra& alg_;
  std::vector<AtomSet> conv_;
  std::vector<AtomSet> stack_;
};

std::uint64_t default_budget() { return detail::env_u64("RELALG_MAX_ASSIGNMENTS", 1ULL << 24); }

}  // namespace

Element eval(const Term& t, const FiniteRelationAlgebra& algebra,
             const std::vector<Element>& assignment) {
  const unsigned need = t.max_var();
  if (need > assignment.size()) {
    throw UsageError("variable x" + std::to_string(need) + " is unbound");
  }
  std::vector<AtomSet> vars;
  vars.reserve(assignment.size());
  for (const auto& e : assignment) {
    if (!algebra.owns(e)) throw UsageError("assignment value belongs to a different algebra");
    vars.push_back(e.atoms());
  }
  Program prog;
  prog.compile(t);
  Evaluator ev(algebra);
  return algebra.element(ev.run(prog, vars));
}

FalsifyResult falsify(const Equation& eq, const FiniteRelationAlgebra& algebra,
                      const FalsifyOptions& options) {
  const unsigned k = eq.variable_count();
  Program lhs;
  Program rhs;
  lhs.compile(eq.lhs);
  rhs.compile(eq.rhs);
  const std::uint64_t e_count = algebra.element_count();
  FalsifyResult result;

  auto found = [&](const std::vector<AtomSet>& vars, AtomSet l, AtomSet r) {
    result.status = FalsifyStatus::Falsified;
    result.assignment.clear();
    for (AtomSet v : vars) result.assignment.push_back(algebra.element(v));
    result.lhs_value = algebra.element(l);
    result.rhs_value = algebra.element(r);
  };

  if (!options.exhaustive) {
    SplitMix64 gen(options.seed);
    Evaluator ev(algebra);
    std::vector<AtomSet> vars(k);
    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
      for (auto& v : vars) v = gen.next() & algebra.universe();
      ++result.examined;
      const AtomSet l = ev.run(lhs, vars);
      const AtomSet r = ev.run(rhs, vars);
      if (l != r) {
        found(vars, l, r);
        return result;
      }
    }
    result.status = FalsifyStatus::Unknown;
    return result;
  }

  const std::uint64_t budget = options.budget != 0 ? options.budget : default_budget();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (total > budget / e_count) {
      throw ResourceError("exhaustive search over " + std::to_string(e_count) + "^" +
                          std::to_string(k) + " assignments exceeds the budget of " +
                          std::to_string(budget) + " (RELALG_MAX_ASSIGNMENTS)");
    }
    total *= e_count;
  }
  if (total > budget) throw ResourceError("exhaustive search exceeds the assignment budget");

  if (k == 0) {
    Evaluator ev(algebra);
    const AtomSet l = ev.run(lhs, {});
    const AtomSet r = ev.run(rhs, {});
    result.examined = 1;
    if (l != r) {
      found({}, l, r);
    } else {
      result.status = FalsifyStatus::Valid;
    }
    return result;
  }

  // Split on the value of x1; each slice walks the remaining variables as an
  // odometer with the last variable fastest.
  struct Slice {
    std::uint64_t examined = 0;
    std::vector<AtomSet> vars;
    AtomSet l = 0;
    AtomSet r = 0;
  };
  std::vector<Slice> slices(e_count);
  const std::size_t first = first_failure(e_count, options.threads, [&](std::size_t v1) {
    Evaluator ev(algebra);
    Slice& s = slices[v1];
    std::vector<AtomSet> vars(k, 0);
    vars[0] = v1;
    while (true) {
      ++s.examined;
      const AtomSet l = ev.run(lhs, vars);
      const AtomSet r = ev.run(rhs, vars);
      if (l != r) {
        s.vars = vars;
        s.l = l;
        s.r = r;
        return true;
      }
      unsigned i = k;
      while (i > 1) {
        --i;
        if (++vars[i] < e_count) break;
        vars[i] = 0;
        if (i == 1) return false;
      }
      if (k == 1) return false;
    }
  });
  for (std::size_t i = 0; i < std::min<std::size_t>(first + 1, e_count); ++i) {
    result.examined += slices[i].examined;
  }
  if (first < e_count) {
    found(slices[first].vars, slices[first].l, slices[first].r);
  } else {
    result.status = FalsifyStatus::Valid;
  }
  return result;
}

std::string format_assignment(const FiniteRelationAlgebra& algebra,
                              const std::vector<Element>& assignment) {
  std::string out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (i != 0) out += ' ';
    out += 'x' + std::to_string(i + 1) + '=' + algebra.format(assignment[i]);
  }
  return out;
}

}  // namespace relalg
