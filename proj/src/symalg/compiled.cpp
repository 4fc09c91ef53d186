#include "cstgeo/symalg/compiled.hpp"

#include <algorithm>
#include <map>

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

CompiledPoly::CompiledPoly(const Polynomial& p, const Bindings& bindings) {
  constexpr std::array<Var, 4> kGrid = {Var::x1, Var::x2, Var::x3, Var::y};
  // Bind everything except the grid coordinates, then merge equal exponents.
  std::map<std::array<std::uint8_t, 4>, std::complex<double>> merged;
  for (const auto& [mono, c] : p.terms()) {
    Monomial rest = mono;
    std::array<std::uint8_t, 4> e{};
    for (std::size_t k = 0; k < kGrid.size(); ++k) {
      e[k] = static_cast<std::uint8_t>(mono[index(kGrid[k])]);
      rest[index(kGrid[k])] = 0;
    }
    merged[e] += Polynomial::term(c, rest).eval(bindings);
  }
  for (const auto& [e, c] : merged) {
    if (c == std::complex<double>(0.0, 0.0)) continue;
    terms_.push_back({c, e});
    for (std::size_t k = 0; k < 4; ++k) max_degree_[k] = std::max<int>(max_degree_[k], e[k]);
  }
}

std::complex<double> CompiledPoly::operator()(double x1, double x2, double x3, double y) const {
  if (terms_.empty()) return {0.0, 0.0};
  const std::array<double, 4> point = {x1, x2, x3, y};
  std::array<std::array<double, 8>, 4> powers{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (max_degree_[k] >= 8) throw ValidationError("compiled polynomial degree too high");
    powers[k][0] = 1.0;
    for (int d = 1; d <= max_degree_[k]; ++d) powers[k][d] = powers[k][d - 1] * point[k];
  }
  std::complex<double> sum(0.0, 0.0);
  for (const auto& t : terms_) {
    double w = powers[0][t.exponents[0]] * powers[1][t.exponents[1]] * powers[2][t.exponents[2]] *
               powers[3][t.exponents[3]];
    sum += t.coefficient * w;
  }
  return sum;
}

std::vector<CompiledTerm> compile(const DiffOp& op, const Bindings& bindings) {
  std::vector<CompiledTerm> out;
  for (const auto& [idx, c] : op.terms()) out.push_back({idx, CompiledPoly(c, bindings)});
  return out;
}

}  // namespace cstgeo::symalg
