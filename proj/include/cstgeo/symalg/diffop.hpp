#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "cstgeo/symalg/polynomial.hpp"

namespace cstgeo::symalg {

// Orders of the partial derivatives in (x1, x2, x3, y, u1, u2).
using DerivIndex = std::array<std::uint8_t, kNumCoordinates>;

unsigned total_order(const DerivIndex& idx);
DerivIndex deriv_index(Var coordinate, unsigned order = 1);

struct DerivOrder {
  bool operator()(const DerivIndex& lhs, const DerivIndex& rhs) const;
};

// Finite sum of polynomial coefficients times partial derivatives, kept in
// the normal form "coefficients left of derivatives". Equality of normal forms
// is equality of operators.
class DiffOp {
 public:
  using Terms = std::map<DerivIndex, Polynomial, DerivOrder>;

  DiffOp() = default;

  static DiffOp identity();
  static DiffOp multiplication(const Polynomial& coefficient);
  static DiffOp partial(Var coordinate, unsigned order = 1);
  static DiffOp term(const Polynomial& coefficient, const DerivIndex& idx);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(const DerivIndex& idx) const;
  Polynomial coefficient(Var coordinate, unsigned order = 1) const;
  Polynomial multiplier() const { return coefficient(DerivIndex{}); }

  // Highest total derivative order among stored terms; 0 for the zero operator.
  unsigned order() const;

  // Terms of exactly the given total order.
  DiffOp part_of_order(unsigned k) const;

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator-(const DiffOp& a);
  // Left multiplication by a polynomial: (p L) f = p * (L f).
  friend DiffOp operator*(const Polynomial& p, const DiffOp& op);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  DiffOp substitute(const std::map<Var, Polynomial>& replacements) const;

  // Action on a polynomial function.
  Polynomial apply(const Polynomial& f) const;

  std::string to_string() const;

 private:
  void add_term(const DerivIndex& idx, const Polynomial& coefficient);

  Terms terms_;
};

// Operator product L∘M, normalized with the Leibniz rule.
DiffOp compose(const DiffOp& lhs, const DiffOp& rhs);
DiffOp commutator(const DiffOp& lhs, const DiffOp& rhs);

}  // namespace cstgeo::symalg
