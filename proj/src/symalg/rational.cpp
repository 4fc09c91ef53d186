#include "cstgeo/symalg/rational.hpp"

#include <cmath>

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite number cannot be made exact");
  Rational r(value);  // exact binary value
  r.canonicalize();
  return r;
}

// Accepts the usual decimal forms: "-12", "0.125", "3e-2", "1.5E+3".
Rational rational_from_decimal(const std::string& text) {
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    try {
      exponent = std::stol(text.substr(e + 1));
    } catch (const std::exception&) {
      throw ParseError("bad exponent in number: " + text);
    }
  }
  bool negative = false;
  std::size_t pos = 0;
  if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+')) {
    negative = mantissa[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; pos < mantissa.size(); ++pos) {
    char c = mantissa[pos];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw ParseError("bad number: " + text);
    }
  }
  if (digits.empty()) throw ParseError("bad number: " + text);
  mpz_class num(digits, 10);
  long scale = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

CRational& CRational::operator+=(const CRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CRational& CRational::operator-=(const CRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

CRational& CRational::operator*=(const CRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  if (o.is_zero()) throw DivisionByZeroError("division by zero Gaussian rational");
  Rational denom = o.re * o.re + o.im * o.im;
  Rational r = (re * o.re + im * o.im) / denom;
  Rational i = (im * o.re - re * o.im) / denom;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const CRational& c) {
  if (c.is_real()) return to_string(c.re);
  std::string imag = c.im == 1 ? "i" : c.im == -1 ? "-i" : to_string(c.im) + "*i";
  if (sgn(c.re) == 0) return imag;
  if (sgn(c.im) < 0) {
    std::string mag = c.im == -1 ? "i" : to_string(Rational(-c.im)) + "*i";
    return "(" + to_string(c.re) + " - " + mag + ")";
  }
  return "(" + to_string(c.re) + " + " + imag + ")";
}

}  // namespace cstgeo::symalg
