#include "moyal/canonical.hpp"

#include <algorithm>
#include <sstream>

#include "moyal/errors.hpp"

namespace moyal {

namespace {

std::string render_rational(const mpq_class& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

// A coefficient fragment for products: fractions are parenthesized so that
// "(1/2)*i*hbar" re-parses with the intended grouping.
std::string render_coeff_in_product(const Scalar& c) {
  if (c.is_real()) {
    std::string s = render_rational(c.re());
    if (c.re().get_den() != 1) return "(" + s + ")";
    return s;
  }
  if (sgn(c.re()) == 0) {
    // pure imaginary b*i
    const mpq_class& b = c.im();
    if (b == 1) return "i";
    std::string s = render_rational(b);
    if (b.get_den() != 1) return "(" + s + ")*i";
    return s + "*i";
  }
  std::string re = render_rational(c.re());
  std::string im = render_rational(abs(c.im()));
  std::string sign = sgn(c.im()) < 0 ? " - " : " + ";
  std::string imag = (abs(c.im()) == 1) ? "i" : im + "*i";
  return "(" + re + sign + imag + ")";
}

}  // namespace

int MonomialKey::total_degree() const {
  int d = 0;
  for (const auto& [name, e] : vars) d += e;
  return d;
}

bool MonomialKey::operator==(const MonomialKey& o) const {
  return hbar == o.hbar && vars == o.vars && atoms == o.atoms;
}

bool MonomialKey::operator<(const MonomialKey& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  if (vars != o.vars) return vars < o.vars;
  if (atoms != o.atoms) {
    return std::lexicographical_compare(
        atoms.begin(), atoms.end(), o.atoms.begin(), o.atoms.end(),
        [](const auto& a, const auto& b) {
          if (!(a.first == b.first)) return a.first < b.first;
          return a.second < b.second;
        });
  }
  return hbar < o.hbar;
}

MonomialKey MonomialKey::operator*(const MonomialKey& o) const {
  MonomialKey out = *this;
  out.hbar += o.hbar;
  for (const auto& [name, e] : o.vars) {
    int& slot = out.vars[name];
    slot += e;
    if (slot == 0) out.vars.erase(name);
  }
  for (const auto& [atom, m] : o.atoms) {
    int& slot = out.atoms[atom];
    slot += m;
    if (slot == 0) out.atoms.erase(atom);
  }
  return out;
}

MonomialKey MonomialKey::pow(int exponent) const {
  MonomialKey out;
  if (exponent == 0) return out;
  out.hbar = hbar * exponent;
  for (const auto& [name, e] : vars) out.vars[name] = e * exponent;
  for (const auto& [atom, m] : atoms) out.atoms[atom] = m * exponent;
  return out;
}

Atom make_atom(Atom::Kind kind, const CanonicalForm& argument) {
  Atom a;
  a.kind = kind;
  a.arg = std::make_shared<CanonicalForm>(argument);
  a.key = (kind == Atom::Kind::Ln ? "ln(" : "exp(") + argument.render() + ")";
  return a;
}

CanonicalForm CanonicalForm::constant(Scalar c) {
  CanonicalForm out;
  if (!c.is_zero()) out.terms_.push_back({std::move(c), MonomialKey{}});
  return out;
}

CanonicalForm CanonicalForm::variable(const std::string& name, int exponent) {
  CanonicalForm out;
  if (exponent == 0) return one();
  MonomialKey key;
  key.vars[name] = exponent;
  out.terms_.push_back({Scalar(1), std::move(key)});
  return out;
}

CanonicalForm CanonicalForm::hbar(int power) {
  CanonicalForm out;
  if (power == 0) return one();
  MonomialKey key;
  key.hbar = power;
  out.terms_.push_back({Scalar(1), std::move(key)});
  return out;
}

CanonicalForm CanonicalForm::atom(Atom::Kind kind, const CanonicalForm& argument,
                                  int exponent) {
  if (exponent == 0) return one();
  CanonicalForm out;
  MonomialKey key;
  key.atoms[make_atom(kind, argument)] = exponent;
  out.terms_.push_back({Scalar(1), std::move(key)});
  return out;
}

bool CanonicalForm::is_one() const {
  return terms_.size() == 1 && terms_[0].key.trivial() &&
         terms_[0].coeff.is_one();
}

bool CanonicalForm::is_scalar_with_hbar() const {
  for (const auto& t : terms_) {
    if (!t.key.vars.empty() || !t.key.atoms.empty()) return false;
  }
  return true;
}

std::set<std::string> CanonicalForm::variables() const {
  std::set<std::string> out;
  for (const auto& t : terms_) {
    for (const auto& [name, e] : t.key.vars) out.insert(name);
    for (const auto& [atom, m] : t.key.atoms) {
      auto inner = atom.arg->variables();
      out.insert(inner.begin(), inner.end());
    }
  }
  return out;
}

bool CanonicalForm::has_atoms() const {
  for (const auto& t : terms_) {
    if (!t.key.atoms.empty()) return true;
  }
  return false;
}

void CanonicalForm::add_term(std::map<MonomialKey, Scalar>& acc,
                             const MonomialKey& key, const Scalar& coeff) {
  auto it = acc.find(key);
  if (it == acc.end()) {
    if (!coeff.is_zero()) acc.emplace(key, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) acc.erase(it);
}

CanonicalForm CanonicalForm::from_accumulator(
    std::map<MonomialKey, Scalar>&& acc) {
  CanonicalForm out;
  out.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
    out.terms_.push_back({it->second, it->first});
  }
  return out;
}

CanonicalForm CanonicalForm::operator-() const {
  CanonicalForm out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

CanonicalForm CanonicalForm::operator+(const CanonicalForm& o) const {
  std::map<MonomialKey, Scalar> acc;
  for (const auto& t : terms_) add_term(acc, t.key, t.coeff);
  for (const auto& t : o.terms_) add_term(acc, t.key, t.coeff);
  return from_accumulator(std::move(acc));
}

CanonicalForm CanonicalForm::operator-(const CanonicalForm& o) const {
  std::map<MonomialKey, Scalar> acc;
  for (const auto& t : terms_) add_term(acc, t.key, t.coeff);
  for (const auto& t : o.terms_) add_term(acc, t.key, -t.coeff);
  return from_accumulator(std::move(acc));
}

CanonicalForm CanonicalForm::operator*(const CanonicalForm& o) const {
  std::map<MonomialKey, Scalar> acc;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      add_term(acc, a.key * b.key, a.coeff * b.coeff);
    }
  }
  return from_accumulator(std::move(acc));
}

CanonicalForm& CanonicalForm::operator+=(const CanonicalForm& o) {
  *this = *this + o;
  return *this;
}

CanonicalForm& CanonicalForm::operator-=(const CanonicalForm& o) {
  *this = *this - o;
  return *this;
}

CanonicalForm& CanonicalForm::operator*=(const CanonicalForm& o) {
  *this = *this * o;
  return *this;
}

CanonicalForm CanonicalForm::operator*(const Scalar& s) const {
  if (s.is_zero()) return CanonicalForm();
  CanonicalForm out = *this;
  for (auto& t : out.terms_) t.coeff *= s;
  return out;
}

bool CanonicalForm::operator==(const CanonicalForm& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
    if (!(terms_[i].key == o.terms_[i].key)) return false;
  }
  return true;
}

CanonicalForm CanonicalForm::pow(int exponent) const {
  if (exponent == 0) return one();
  if (exponent < 0) {
    if (is_zero()) throw NormalizeError("negative power of zero");
    if (terms_.size() != 1) {
      throw NormalizeError(
          "negative power of a multi-term sum has no monomial form");
    }
    CanonicalForm out;
    out.terms_.push_back(
        {terms_[0].coeff.pow(exponent), terms_[0].key.pow(exponent)});
    return out;
  }
  if (terms_.size() == 1) {
    CanonicalForm out;
    out.terms_.push_back(
        {terms_[0].coeff.pow(exponent), terms_[0].key.pow(exponent)});
    return out;
  }
  CanonicalForm result = one();
  CanonicalForm base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

CanonicalForm CanonicalForm::derivative(const std::string& var) const {
  std::map<MonomialKey, Scalar> acc;
  for (const auto& t : terms_) {
    // variable factors
    auto vit = t.key.vars.find(var);
    if (vit != t.key.vars.end()) {
      MonomialKey key = t.key;
      int e = vit->second;
      if (e == 1) {
        key.vars.erase(var);
      } else {
        key.vars[var] = e - 1;
      }
      add_term(acc, key, t.coeff * Scalar(e));
    }
    // atom factors
    for (const auto& [atom, mult] : t.key.atoms) {
      CanonicalForm inner = atom.arg->derivative(var);
      if (inner.is_zero()) continue;
      CanonicalForm factor;
      if (atom.kind == Atom::Kind::Exp) {
        // d exp(u)^m = m exp(u)^m u'
        factor = inner;
      } else {
        // d ln(u)^m = m ln(u)^{m-1} u' / u
        factor = inner * atom.arg->pow(-1);
      }
      MonomialKey rest = t.key;
      if (atom.kind == Atom::Kind::Ln) {
        if (mult == 1) {
          rest.atoms.erase(atom);
        } else {
          rest.atoms[atom] = mult - 1;
        }
      }
      CanonicalForm base;
      base.terms_.push_back({t.coeff * Scalar(mult), rest});
      for (const auto& piece : (base * factor).terms_) {
        add_term(acc, piece.key, piece.coeff);
      }
    }
  }
  return from_accumulator(std::move(acc));
}

CanonicalForm CanonicalForm::substituted(
    const std::map<std::string, CanonicalForm>& bindings) const {
  CanonicalForm result;
  for (const auto& t : terms_) {
    CanonicalForm piece = constant(t.coeff);
    if (t.key.hbar != 0) piece = piece.shifted_hbar(t.key.hbar);
    for (const auto& [name, e] : t.key.vars) {
      auto it = bindings.find(name);
      if (it == bindings.end()) {
        piece *= variable(name, e);
      } else {
        piece *= it->second.pow(e);
      }
    }
    for (const auto& [a, m] : t.key.atoms) {
      piece *= atom(a.kind, a.arg->substituted(bindings), m);
    }
    result += piece;
  }
  return result;
}

CanonicalForm CanonicalForm::shifted_hbar(int k) const {
  CanonicalForm out = *this;
  for (auto& t : out.terms_) t.key.hbar += k;
  // shifting hbar alone cannot merge or reorder distinct keys within a grade,
  // but it can change the relative order of terms; rebuild to stay sorted.
  std::map<MonomialKey, Scalar> acc;
  for (const auto& t : out.terms_) add_term(acc, t.key, t.coeff);
  return from_accumulator(std::move(acc));
}

CanonicalForm CanonicalForm::hbar_grade(int grade) const {
  CanonicalForm out;
  std::map<MonomialKey, Scalar> acc;
  for (const auto& t : terms_) {
    if (t.key.hbar != grade) continue;
    MonomialKey key = t.key;
    key.hbar = 0;
    add_term(acc, key, t.coeff);
  }
  return from_accumulator(std::move(acc));
}

std::map<int, CanonicalForm> CanonicalForm::hbar_grades() const {
  std::map<int, std::map<MonomialKey, Scalar>> buckets;
  for (const auto& t : terms_) {
    MonomialKey key = t.key;
    key.hbar = 0;
    add_term(buckets[t.key.hbar], key, t.coeff);
  }
  std::map<int, CanonicalForm> out;
  for (auto& [grade, acc] : buckets) {
    out.emplace(grade, from_accumulator(std::move(acc)));
  }
  return out;
}

namespace {
std::complex<double> ipow(std::complex<double> base, int e) {
  if (e < 0) {
    if (base == std::complex<double>(0.0, 0.0)) {
      throw EvalError("negative power of zero");
    }
    return 1.0 / ipow(base, -e);
  }
  std::complex<double> out(1.0, 0.0);
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}
}  // namespace

std::complex<double> CanonicalForm::eval(
    const std::map<std::string, std::complex<double>>& point,
    double hbar_value) const {
  std::complex<double> sum(0.0, 0.0);
  for (const auto& t : terms_) {
    std::complex<double> value = t.coeff.to_complex();
    if (t.key.hbar != 0) {
      value *= ipow(std::complex<double>(hbar_value, 0.0), t.key.hbar);
    }
    for (const auto& [name, e] : t.key.vars) {
      auto it = point.find(name);
      if (it == point.end()) throw EvalError("unbound variable: " + name);
      value *= ipow(it->second, e);
    }
    for (const auto& [a, m] : t.key.atoms) {
      std::complex<double> inner = a.arg->eval(point, hbar_value);
      std::complex<double> atom_value;
      if (a.kind == Atom::Kind::Exp) {
        atom_value = std::exp(inner);
      } else {
        if (inner == std::complex<double>(0.0, 0.0)) {
          throw EvalError("ln(0) in numeric evaluation");
        }
        atom_value = std::log(inner);
      }
      value *= ipow(atom_value, m);
    }
    sum += value;
  }
  return sum;
}

std::string CanonicalForm::render(
    const std::vector<std::string>& var_order) const {
  if (terms_.empty()) return "0";

  auto var_rank = [&](const std::string& name) {
    for (std::size_t i = 0; i < var_order.size(); ++i) {
      if (var_order[i] == name) return static_cast<int>(i);
    }
    return static_cast<int>(var_order.size());
  };

  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar coeff = t.coeff;
    bool negative = coeff.is_render_negative();
    if (negative) coeff = -coeff;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }

    std::vector<std::string> factors;
    // display variables: hinted order first, then alphabetical
    std::vector<std::pair<std::string, int>> vars(t.key.vars.begin(),
                                                  t.key.vars.end());
    std::stable_sort(vars.begin(), vars.end(),
                     [&](const auto& a, const auto& b) {
                       int ra = var_rank(a.first), rb = var_rank(b.first);
                       if (ra != rb) return ra < rb;
                       return a.first < b.first;
                     });
    for (const auto& [name, e] : vars) {
      factors.push_back(e == 1 ? name : name + "^" + std::to_string(e));
    }
    if (t.key.hbar != 0) {
      factors.push_back(t.key.hbar == 1
                            ? "hbar"
                            : "hbar^" + std::to_string(t.key.hbar));
    }
    for (const auto& [a, m] : t.key.atoms) {
      std::string body = (a.kind == Atom::Kind::Ln ? "ln(" : "exp(") +
                         a.arg->render(var_order) + ")";
      factors.push_back(m == 1 ? body : body + "^" + std::to_string(m));
    }

    if (factors.empty()) {
      // bare constant; real fractions need no parentheses here
      if (coeff.is_real()) {
        out << render_rational(coeff.re());
      } else {
        out << render_coeff_in_product(coeff);
      }
      continue;
    }
    std::string joined;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) joined += "*";
      joined += factors[i];
    }
    if (coeff.is_one()) {
      out << joined;
    } else {
      out << render_coeff_in_product(coeff) << "*" << joined;
    }
  }
  return out.str();
}

}  // namespace moyal
