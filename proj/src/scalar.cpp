#include "moyal/scalar.hpp"

#include <sstream>

#include "moyal/errors.hpp"

namespace moyal {

namespace {
mpq_class canonical(mpq_class q) {
  q.canonicalize();
  return q;
}
}  // namespace

Scalar::Scalar(mpq_class re, mpq_class im)
    : re_(canonical(std::move(re))), im_(canonical(std::move(im))) {}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw EvalError("rational with zero denominator");
  return Scalar(canonical(mpq_class(num, den)), mpq_class(0));
}

Scalar Scalar::from_integer_string(const std::string& digits) {
  return Scalar(mpz_class(digits));
}

Scalar Scalar::operator-() const { return Scalar(-re_, -im_); }

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(re_ + o.re_, im_ + o.im_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(re_ - o.re_, im_ - o.im_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

int Scalar::compare(const Scalar& o) const {
  int c = cmp(re_, o.re_);
  if (c != 0) return c;
  return cmp(im_, o.im_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw EvalError("division by zero scalar");
  mpq_class norm = re_ * re_ + im_ * im_;
  return Scalar(re_ / norm, -im_ / norm);
}

Scalar Scalar::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result(1);
  Scalar base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string Scalar::str() const {
  std::ostringstream out;
  out << re_;
  if (sgn(im_) != 0) {
    out << (sgn(im_) > 0 ? "+" : "") << im_ << "i";
  }
  return out.str();
}

}  // namespace moyal
