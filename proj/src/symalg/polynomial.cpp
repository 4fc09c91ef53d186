#include "cstgeo/symalg/polynomial.hpp"

#include <cmath>
#include <numbers>

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

namespace {

constexpr std::array<std::string_view, kNumVars> kNames = {
    "x1",  "x2",  "x3",  "y",   "u1",  "u2",  "xi",  "eta", "s",
    "D",   "E",   "h2",  "h4",  "m",   "a",   "a11", "a12", "a13",
    "a21", "a22", "a23", "a31", "a32", "a33", "pi"};

Monomial unit_monomial() {
  Monomial mono{};
  mono.fill(0);
  return mono;
}

std::complex<double> int_power(std::complex<double> base, int exponent) {
  if (exponent < 0) {
    if (base == std::complex<double>(0.0, 0.0)) {
      throw DivisionByZeroError("negative power of a symbol bound to zero");
    }
    base = 1.0 / base;
    exponent = -exponent;
  }
  std::complex<double> result(1.0, 0.0);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

std::string_view name(Var v) { return kNames[index(v)]; }

std::optional<Var> var_from_name(std::string_view text) {
  for (std::size_t k = 0; k < kNumVars; ++k) {
    if (kNames[k] == text) return static_cast<Var>(k);
  }
  return std::nullopt;
}

std::optional<std::size_t> coordinate_slot(Var v) {
  for (std::size_t k = 0; k < kNumCoordinates; ++k) {
    if (kCoordinates[k] == v) return k;
  }
  return std::nullopt;
}

int total_degree(const Monomial& mono) {
  int sum = 0;
  for (auto e : mono) sum += e;
  return sum;
}

bool GradedLex::operator()(const Monomial& lhs, const Monomial& rhs) const {
  int dl = total_degree(lhs);
  int dr = total_degree(rhs);
  if (dl != dr) return dl > dr;
  return lhs > rhs;
}

Polynomial::Polynomial(long constant) : Polynomial(CRational(constant)) {}
Polynomial::Polynomial(const Rational& constant) : Polynomial(CRational(constant)) {}
Polynomial::Polynomial(const CRational& constant) { add_term(unit_monomial(), constant); }

Polynomial Polynomial::var(Var v, int power) {
  if (power < 0 && is_coordinate(v)) {
    throw ValidationError("negative power of coordinate " + std::string(name(v)));
  }
  Monomial mono = unit_monomial();
  mono[index(v)] = static_cast<std::int16_t>(power);
  return term(CRational(1), mono);
}

Polynomial Polynomial::imaginary_unit() { return Polynomial(CRational::imaginary_unit()); }

Polynomial Polynomial::term(const CRational& coefficient, const Monomial& mono) {
  Polynomial p;
  p.add_term(mono, coefficient);
  return p;
}

void Polynomial::add_term(const Monomial& mono, const CRational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<CRational> Polynomial::constant_value() const {
  if (terms_.empty()) return CRational(0);
  if (terms_.size() == 1 && terms_.begin()->first == unit_monomial()) {
    return terms_.begin()->second;
  }
  return std::nullopt;
}

bool Polynomial::depends_on(Var v) const {
  for (const auto& [mono, c] : terms_) {
    if (mono[index(v)] != 0) return true;
  }
  return false;
}

int Polynomial::degree_in(Var v) const {
  int deg = 0;
  for (const auto& [mono, c] : terms_) deg = std::max<int>(deg, mono[index(v)]);
  return deg;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [mono, c] : other.terms_) add_term(mono, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial mono;
      for (std::size_t k = 0; k < kNumVars; ++k) {
        mono[k] = static_cast<std::int16_t>(ma[k] + mb[k]);
      }
      out.add_term(mono, ca * cb);
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out;
  for (const auto& [mono, c] : a.terms_) out.terms_.emplace(mono, -c);
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::inverse() const {
  if (is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  if (terms_.size() != 1) {
    throw ValidationError("cannot divide by multi-term polynomial " + to_string());
  }
  const auto& [mono, c] = *terms_.begin();
  Monomial inv;
  for (std::size_t k = 0; k < kNumVars; ++k) {
    if (mono[k] != 0 && is_coordinate(static_cast<Var>(k))) {
      throw ValidationError("cannot divide by a coordinate: " + to_string());
    }
    inv[k] = static_cast<std::int16_t>(-mono[k]);
  }
  return term(CRational(1) / c, inv);
}

Polynomial Polynomial::derivative(Var v) const {
  Polynomial out;
  const std::size_t k = index(v);
  for (const auto& [mono, c] : terms_) {
    if (mono[k] == 0) continue;
    Monomial d = mono;
    d[k] = static_cast<std::int16_t>(d[k] - 1);
    out.add_term(d, c * CRational(static_cast<long>(mono[k])));
  }
  return out;
}

Polynomial Polynomial::substitute(const std::map<Var, Polynomial>& replacements) const {
  if (replacements.empty()) return *this;
  // Powers are cached per (symbol, exponent).
  std::map<std::pair<Var, int>, Polynomial> cache;
  auto power_of = [&](Var v, int e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const Polynomial& rep = replacements.at(v);
    Polynomial value = e >= 0 ? rep.pow(static_cast<unsigned>(e))
                              : rep.inverse().pow(static_cast<unsigned>(-e));
    return cache.emplace(key, std::move(value)).first->second;
  };
  Polynomial out;
  for (const auto& [mono, c] : terms_) {
    Monomial kept = mono;
    Polynomial factor(1);
    for (const auto& [v, rep] : replacements) {
      int e = mono[index(v)];
      if (e == 0) continue;
      kept[index(v)] = 0;
      factor *= power_of(v, e);
    }
    out += factor * term(c, kept);
  }
  return out;
}

Polynomial Polynomial::real_part() const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) out.add_term(mono, CRational(c.re));
  return out;
}

Polynomial Polynomial::imag_part() const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) out.add_term(mono, CRational(c.im));
  return out;
}

Polynomial Polynomial::conj() const {
  Polynomial out;
  for (const auto& [mono, c] : terms_) out.add_term(mono, c.conj());
  return out;
}

std::complex<double> Polynomial::eval(const Bindings& bindings) const {
  std::array<std::optional<std::complex<double>>, kNumVars> values;
  for (const auto& [v, value] : bindings) values[index(v)] = value;
  if (!values[index(Var::pi)]) values[index(Var::pi)] = std::numbers::pi;

  std::complex<double> sum(0.0, 0.0);
  for (const auto& [mono, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t k = 0; k < kNumVars; ++k) {
      if (mono[k] == 0) continue;
      if (!values[k]) throw UnboundSymbolError(std::string(kNames[k]));
      t *= int_power(*values[k], mono[k]);
    }
    sum += t;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    bool negative = false;
    CRational mag = c;
    if (c.is_real() && sgn(c.re) < 0) {
      negative = true;
      mag = -c;
    } else if (sgn(c.re) == 0 && sgn(c.im) < 0) {
      negative = true;
      mag = -c;
    }
    std::string monotext;
    for (std::size_t k = 0; k < kNumVars; ++k) {
      if (mono[k] == 0) continue;
      if (!monotext.empty()) monotext += "*";
      monotext += kNames[k];
      if (mono[k] != 1) monotext += "^" + std::to_string(mono[k]);
    }
    std::string coeftext;
    if (mag == CRational(1)) {
      coeftext = monotext.empty() ? "1" : "";
    } else {
      coeftext = symalg::to_string(mag);
    }
    std::string body = coeftext;
    if (!monotext.empty()) body += (body.empty() ? "" : "*") + monotext;

    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

}  // namespace cstgeo::symalg
