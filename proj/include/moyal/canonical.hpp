#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "moyal/scalar.hpp"

namespace moyal {

class CanonicalForm;

// Opaque transcendental factor ln(u) or exp(u) with a canonical argument.
// Atoms compare structurally: two atoms are equal iff they have the same kind
// and identical canonical arguments. No identity beyond the derivative rules
// is applied, in particular exp(ln u) does not collapse to u.
struct Atom {
  enum class Kind { Ln, Exp };

  Kind kind;
  std::shared_ptr<const CanonicalForm> arg;
  std::string key;  // deterministic render of kind(arg); the comparison key

  bool operator<(const Atom& o) const { return key < o.key; }
  bool operator==(const Atom& o) const { return key == o.key; }
};

// Everything of a monomial except its coefficient:
// hbar^h * prod var_i^{e_i} * prod atom_j^{m_j}, exponents in Z.
struct MonomialKey {
  int hbar = 0;
  std::map<std::string, int> vars;
  std::map<Atom, int> atoms;

  int total_degree() const;
  bool operator==(const MonomialKey& o) const;
  // Graded lexicographic: (total variable degree, variable exponent vector,
  // atom keys, hbar power). Any fixed total order works; this one is used
  // both for term storage and for rendering (descending).
  bool operator<(const MonomialKey& o) const;

  MonomialKey operator*(const MonomialKey& o) const;
  MonomialKey pow(int exponent) const;
  bool trivial() const { return hbar == 0 && vars.empty() && atoms.empty(); }
};

struct Monomial {
  Scalar coeff;
  MonomialKey key;
};

// Sum of monomials with distinct keys, no zero coefficients, stored in
// descending key order. This is the normal form backing expression equality:
// two expressions are equal iff their canonical forms are identical.
class CanonicalForm {
 public:
  CanonicalForm() = default;  // zero

  static CanonicalForm constant(Scalar c);
  static CanonicalForm integer(long n) { return constant(Scalar(n)); }
  static CanonicalForm rational(long num, long den) {
    return constant(Scalar::rational(num, den));
  }
  static CanonicalForm imaginary_unit() {
    return constant(Scalar::imaginary_unit());
  }
  static CanonicalForm one() { return integer(1); }
  static CanonicalForm variable(const std::string& name, int exponent = 1);
  static CanonicalForm hbar(int power = 1);
  static CanonicalForm atom(Atom::Kind kind, const CanonicalForm& argument,
                            int exponent = 1);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // True when no monomial carries variables or atoms (hbar powers allowed).
  bool is_scalar_with_hbar() const;
  // All variable names appearing anywhere, including inside atom arguments.
  std::set<std::string> variables() const;
  bool has_atoms() const;

  CanonicalForm operator-() const;
  CanonicalForm operator+(const CanonicalForm& o) const;
  CanonicalForm operator-(const CanonicalForm& o) const;
  CanonicalForm operator*(const CanonicalForm& o) const;
  CanonicalForm& operator+=(const CanonicalForm& o);
  CanonicalForm& operator-=(const CanonicalForm& o);
  CanonicalForm& operator*=(const CanonicalForm& o);
  CanonicalForm operator*(const Scalar& s) const;
  bool operator==(const CanonicalForm& o) const;
  bool operator!=(const CanonicalForm& o) const { return !(*this == o); }

  // Integer power. Negative exponents require a single-monomial base and
  // throw NormalizeError otherwise; 0^0 is taken to be 1.
  CanonicalForm pow(int exponent) const;

  // Exact partial derivative. Throws NormalizeError only when a ln atom with
  // a multi-term argument must be divided out (du/dv / u not a monomial sum).
  CanonicalForm derivative(const std::string& var) const;

  // Simultaneous substitution of whole variables, applied also inside atom
  // arguments. Unbound variables are left alone.
  CanonicalForm substituted(
      const std::map<std::string, CanonicalForm>& bindings) const;

  // Multiply by hbar^k (k may be negative).
  CanonicalForm shifted_hbar(int k) const;

  // Coefficient of hbar^grade with the hbar power removed.
  CanonicalForm hbar_grade(int grade) const;
  std::map<int, CanonicalForm> hbar_grades() const;

  std::complex<double> eval(
      const std::map<std::string, std::complex<double>>& point,
      double hbar_value) const;

  // Emits the expression grammar with minimal parentheses, terms in canonical
  // (descending) order. var_order lists variables to print first, in that
  // order; remaining variables follow alphabetically.
  std::string render(const std::vector<std::string>& var_order = {}) const;

 private:
  friend struct Atom;
  static void add_term(std::map<MonomialKey, Scalar>& acc,
                       const MonomialKey& key, const Scalar& coeff);
  static CanonicalForm from_accumulator(std::map<MonomialKey, Scalar>&& acc);

  std::vector<Monomial> terms_;
};

Atom make_atom(Atom::Kind kind, const CanonicalForm& argument);

}  // namespace moyal
