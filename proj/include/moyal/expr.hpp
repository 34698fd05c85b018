#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "moyal/canonical.hpp"

namespace moyal {

enum class ExprKind { Constant, Hbar, Variable, Sum, Product, Power, Ln, Exp };

// Immutable expression tree. Trees are what the parser produces and what the
// general-purpose calculus operates on; equality and all exact algebra go
// through normalize() / CanonicalForm.
class Expr {
 public:
  Expr();  // zero

  static Expr constant(Scalar c);
  static Expr integer(long n) { return constant(Scalar(n)); }
  static Expr rational(long num, long den) {
    return constant(Scalar::rational(num, den));
  }
  static Expr imaginary_unit() { return constant(Scalar::imaginary_unit()); }
  static Expr hbar();
  static Expr variable(const std::string& name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, int exponent);
  static Expr ln(Expr argument);
  static Expr exp_fn(Expr argument);

  ExprKind kind() const;
  const Scalar& scalar_value() const;       // Constant
  const std::string& var_name() const;      // Variable
  const std::vector<Expr>& operands() const;  // Sum/Product kids; [0] for the rest
  int exponent() const;                     // Power

  Expr operator+(const Expr& o) const { return sum({*this, o}); }
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const { return product({*this, o}); }

  std::string render() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Recursive-descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' signed_int)?
//   base   := rational | 'i' | 'hbar' | ident | '(' expr ')'
//           | 'ln' '(' expr ')' | 'exp' '(' expr ')'
// Identifiers must appear in `variables`; anything else raises ParseError with
// the offending token and position.
Expr parse(const std::string& text, const std::vector<std::string>& variables);

// Exact partial derivative on trees: linear, Leibniz,
// d ln(u) = u'/u, d exp(u) = exp(u) u'. Total on all trees.
Expr differentiate(const Expr& e, const std::string& var);

// Simultaneous substitution; the result is normalized whenever it has a
// canonical form and returned as the raw substituted tree otherwise.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

std::complex<double> eval_numeric(
    const Expr& e, const std::map<std::string, std::complex<double>>& point,
    double hbar_value = 1.0);

// Expansion into the canonical monomial sum. Throws NormalizeError for
// expressions outside the representable ring (negative powers of sums).
CanonicalForm normalize(const Expr& e);

Expr to_expr(const CanonicalForm& cf);

bool equals(const Expr& a, const Expr& b);

// Convenience: parse then normalize.
CanonicalForm parse_canonical(const std::string& text,
                              const std::vector<std::string>& variables);

}  // namespace moyal
