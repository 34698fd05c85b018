#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace moyal {

// Exact Gaussian rational a + b*i. Both components are GMP rationals kept
// canonical: positive denominator, numerator and denominator coprime, zero
// stored as 0/1.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long value) : re_(value), im_(0) {}
  explicit Scalar(const mpz_class& value) : re_(value), im_(0) {}
  Scalar(mpq_class re, mpq_class im);

  static Scalar rational(long num, long den);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar from_integer_string(const std::string& digits);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  // Sign convention used when extracting a leading minus while rendering.
  bool is_render_negative() const {
    return sgn(re_) < 0 || (sgn(re_) == 0 && sgn(im_) < 0);
  }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order (real part first); used only to make containers deterministic.
  int compare(const Scalar& o) const;

  Scalar inverse() const;          // throws EvalError on zero
  Scalar pow(int exponent) const;  // negative exponents invert; 0^0 == 1

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }
  std::string str() const;

 private:
  mpq_class re_, im_;
};

}  // namespace moyal
