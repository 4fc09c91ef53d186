#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cstgeo/symalg/polynomial.hpp"

namespace cstgeo::symalg {

// K = Π v^{p_v} · exp(Q) with Q a (Laurent) polynomial and rational powers
// p_v. Every derivative of K is K times a Laurent polynomial, so linear PDE
// residuals of K can be decided exactly.
class ExpKernel {
 public:
  explicit ExpKernel(Polynomial exponent, std::map<Var, Rational> powers = {});

  // M with ∂_{v1}…∂_{vk} K = M·K.
  Polynomial relative_derivative(const std::vector<Var>& vars) const;

  // Σ c_j ∂^{α_j} K divided by K.
  Polynomial relative_residual(
      const std::vector<std::pair<Polynomial, std::vector<Var>>>& pde) const;

 private:
  Polynomial log_derivative(Var v) const;

  Polynomial exponent_;
  std::map<Var, Rational> powers_;
};

}  // namespace cstgeo::symalg
