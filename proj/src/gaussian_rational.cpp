#include "phasealg/gaussian_rational.hpp"

#include <stdexcept>

namespace phasealg {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) {
    throw std::domain_error("zero denominator");
  }
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) {
    throw std::domain_error("division by zero");
  }
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  if (auto c = compare(a.re_, b.re_); c != 0) return c;
  return compare(a.im_, b.im_);
}

std::string GaussianRational::to_string() const {
  if (is_real()) {
    return re_.get_str();
  }
  auto imag_part = [](const Rational& q) -> std::string {
    if (q == 1) return "i";
    if (q == -1) return "-i";
    return q.get_str() + "*i";
  };
  if (sgn(re_) == 0) {
    return imag_part(im_);
  }
  std::string out = "(" + re_.get_str();
  if (sgn(im_) > 0) {
    out += "+" + imag_part(im_);
  } else {
    out += imag_part(im_);
  }
  return out + ")";
}

}  // namespace phasealg
