#include "cstgeo/symalg/kernel.hpp"

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

ExpKernel::ExpKernel(Polynomial exponent, std::map<Var, Rational> powers)
    : exponent_(std::move(exponent)), powers_(std::move(powers)) {
  for (const auto& [v, p] : powers_) {
    if (is_coordinate(v)) {
      throw ValidationError("fractional powers are only supported for non-coordinate symbols");
    }
  }
}

Polynomial ExpKernel::log_derivative(Var v) const {
  Polynomial out = exponent_.derivative(v);
  if (auto it = powers_.find(v); it != powers_.end()) {
    out += Polynomial(it->second) * Polynomial::var(v, -1);
  }
  return out;
}

Polynomial ExpKernel::relative_derivative(const std::vector<Var>& vars) const {
  Polynomial m(1);
  for (Var v : vars) m = m.derivative(v) + m * log_derivative(v);
  return m;
}

Polynomial ExpKernel::relative_residual(
    const std::vector<std::pair<Polynomial, std::vector<Var>>>& pde) const {
  Polynomial out;
  for (const auto& [coefficient, vars] : pde) out += coefficient * relative_derivative(vars);
  return out;
}

}  // namespace cstgeo::symalg
