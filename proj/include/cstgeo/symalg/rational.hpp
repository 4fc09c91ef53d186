#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace cstgeo::symalg {

// Arbitrary-precision rational, always canonical (reduced, positive
// denominator) because every arithmetic result passes through mpq.
using Rational = mpq_class;

Rational rational_from_double(double value);
Rational rational_from_decimal(const std::string& text);
std::string to_string(const Rational& r);

// Gaussian rational re + i*im.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(long v) : re(v) {}
  CRational(Rational r) : re(std::move(r)) {}
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static CRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  CRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  CRational& operator+=(const CRational& o);
  CRational& operator-=(const CRational& o);
  CRational& operator*=(const CRational& o);
  CRational& operator/=(const CRational& o);

  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const CRational& c);

}  // namespace cstgeo::symalg
