#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace whittaker {

// Exact element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  // "p", "p/q", or a complex form "a+bi" / "a-b/ci" / "i" with rational parts.
  static GaussianRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_real() const { return im_ == 0; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  // "p/q" when real, otherwise "a+bi".
  std::string str() const;

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  // Integer power; negative exponents require a nonzero base.
  GaussianRational pow(long k) const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  void canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
  }
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

}  // namespace whittaker
