#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cstgeo/symalg/diffop.hpp"

namespace cstgeo::symalg {

// A polynomial with every non-grid symbol bound, flattened for fast
// evaluation at grid points (x1, x2, x3, y).
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const Polynomial& p, const Bindings& bindings);

  std::complex<double> operator()(double x1, double x2, double x3, double y = 0.0) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    std::complex<double> coefficient;
    std::array<std::uint8_t, 4> exponents;
  };
  std::vector<Term> terms_;
  std::array<int, 4> max_degree_{};
};

struct CompiledTerm {
  DerivIndex derivative;
  CompiledPoly coefficient;
};

// Flattened DiffOp; derivatives stay symbolic multi-indices.
std::vector<CompiledTerm> compile(const DiffOp& op, const Bindings& bindings);

}  // namespace cstgeo::symalg
