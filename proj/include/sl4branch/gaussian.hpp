#pragma once

#include <ostream>
#include <string>

#include "sl4branch/rational.hpp"

namespace sl4branch {

/// Element of Q(i): a complex number with exact rational real and
/// imaginary parts.  Field arithmetic throughout, no rounding anywhere.
class Gaussian {
public:
  Gaussian() = default;
  Gaussian(long long n) : re_(n) {}
  Gaussian(const Rational& re) : re_(re) {}
  Gaussian(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Gaussian conj() const { return Gaussian(re_, -im_); }

  /// |z|^2 as a rational; positive unless z == 0.
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }

  Gaussian operator-() const { return Gaussian(-re_, -im_); }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
    return Gaussian(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
    return Gaussian(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return Gaussian(a.re_ * b.re_ - a.im_ * b.im_,
                    a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    if (b.is_zero()) throw std::invalid_argument("Gaussian: division by zero");
    Rational n = b.norm_sq();
    Gaussian p = a * b.conj();
    return Gaussian(p.re_ / n, p.im_ / n);
  }

  Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
  Gaussian& operator-=(const Gaussian& o) { return *this = *this - o; }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  Gaussian& operator/=(const Gaussian& o) { return *this = *this / o; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    if (re_.is_zero()) return im_.str() + "i";
    return re_.str() + (im_.sign() > 0 ? "+" : "") + im_.str() + "i";
  }

  friend std::ostream& operator<<(std::ostream& os, const Gaussian& z) {
    return os << z.str();
  }

private:
  Rational re_;
  Rational im_;
};

}  // namespace sl4branch
