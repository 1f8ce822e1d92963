#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace phasealg {

using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Exact complex number a + b i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0));
  GaussianRational(int re) : GaussianRational(Rational(re)) {}
  GaussianRational(long re) : GaussianRational(Rational(re)) {}

  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  /// Parseable rendering: `3`, `-1/2`, `i`, `-2*i`, `(1+2*i)`.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::strong_ordering compare(const Rational& a, const Rational& b);

}  // namespace phasealg
