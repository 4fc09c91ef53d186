#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cstgeo/symalg/rational.hpp"
#include "cstgeo/symalg/symbols.hpp"

namespace cstgeo::symalg {

// Exponent vector. Coordinates carry non-negative exponents; parameter and
// auxiliary symbols may carry negative ones (Laurent monomials such as 1/E).
using Monomial = std::array<std::int16_t, kNumVars>;

int total_degree(const Monomial& mono);

// Graded lexicographic, highest total degree first.
struct GradedLex {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

using Bindings = std::map<Var, std::complex<double>>;

class Polynomial {
 public:
  using Terms = std::map<Monomial, CRational, GradedLex>;

  Polynomial() = default;
  Polynomial(long constant);
  Polynomial(const Rational& constant);
  Polynomial(const CRational& constant);

  static Polynomial var(Var v, int power = 1);
  static Polynomial imaginary_unit();
  static Polynomial term(const CRational& coefficient, const Monomial& mono);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Constant value if the polynomial has no symbol dependence.
  std::optional<CRational> constant_value() const;
  bool depends_on(Var v) const;
  // Highest exponent of v over all terms (0 when absent).
  int degree_in(Var v) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned exponent) const;

  // Multiplicative inverse; defined only for single-term polynomials whose
  // monomial contains no coordinate. Throws DivisionByZeroError on zero and
  // ValidationError on anything that is not an invertible monomial.
  Polynomial inverse() const;

  Polynomial derivative(Var v) const;

  // Simultaneous substitution of symbols by polynomials. A negative power of
  // a substituted symbol requires an invertible replacement.
  Polynomial substitute(const std::map<Var, Polynomial>& replacements) const;

  // Coefficient-wise real/imaginary parts, treating every symbol as real.
  Polynomial real_part() const;
  Polynomial imag_part() const;
  Polynomial conj() const;

  // pi binds to its double value unless the bindings supply it.
  std::complex<double> eval(const Bindings& bindings) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, const CRational& coefficient);

  Terms terms_;
};

Polynomial operator*(const Polynomial& a, const Polynomial& b);

// Convenience: symbol as polynomial.
inline Polynomial sym(Var v) { return Polynomial::var(v); }

}  // namespace cstgeo::symalg
