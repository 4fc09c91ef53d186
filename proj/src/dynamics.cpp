#include "cstgeo/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "cstgeo/cst_numeric.hpp"
#include "cstgeo/error.hpp"
#include "cstgeo/parallel.hpp"

namespace cstgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

}  // namespace

AnalyticPoint analytic_coords(double x1, double x2, double x3, const ModelParams& p) {
  return {cplx(p.D * x1 * x1 - 2.0 * x3, 2.0 * p.E * x1), cplx(p.D * x1 - x2, p.E)};
}

cplx envelope(double x1, const ModelParams& p) {
  return std::exp(kPi * p.h4 * cplx(-p.E * x1 * x1, p.D * x1 * x1 * x1 / 3.0));
}

void SpectralDensity::validate() const {
  if (nodes.size() != weights.size()) throw ValidationError("density nodes and weights differ in length");
  for (double s : nodes)
    if (!std::isfinite(s)) throw ValidationError("density node is not finite");
  for (const auto& w : weights)
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw ValidationError("density weight is not finite");
}

SpectralDensity SpectralDensity::quadrature(const std::function<cplx(double)>& g, double lo,
                                            double hi, std::size_t n) {
  const Grid1D grid = Grid1D::span(lo, hi, n);
  const auto w = simpson_weights(n, grid.step);
  SpectralDensity d;
  for (std::size_t k = 0; k < n; ++k) {
    d.nodes.push_back(grid.at(k));
    d.weights.push_back(w[k] * g(grid.at(k)));
  }
  return d;
}

SpectralDensity operator*(cplx c, const SpectralDensity& d) {
  SpectralDensity out = d;
  for (auto& w : out.weights) w *= c;
  return out;
}

cplx free_psi(cplx xi, cplx eta, const SpectralDensity& g, const ModelParams& p) {
  std::vector<cplx> terms(g.nodes.size());
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    const double s = g.nodes[k];
    terms[k] = g.weights[k] * std::exp(-4.0 * kPi * kI / p.h4 * s * s * xi - 2.0 * kPi * kI * s * eta);
  }
  return pairwise_sum(terms);
}

cplx free_phi(double t, const AnalyticPoint& u, const SpectralDensity& g, const ModelParams& p) {
  if (u.u2 == cplx(0.0, 0.0)) throw SingularPointError("free solution is singular at u2 = 0");
  const cplx pre = std::exp(2.0 * kPi * kI * p.h2 * u.u2 - kPi * kI * p.h4 / 4.0 * u.u1 * u.u1 / u.u2) /
                   std::sqrt(u.u2);
  return pre * free_psi(4.0 * kPi * t / p.m + 1.0 / u.u2, u.u1 / u.u2, g, p);
}

namespace {

cplx heat_kernel_sum(cplx xi, cplx eta, const SpectralDensity& k, const ModelParams& p) {
  if (eta == cplx(0.0, 0.0)) throw SingularPointError("heat kernel is singular at eta = 0");
  std::vector<cplx> terms(k.nodes.size());
  for (std::size_t j = 0; j < k.nodes.size(); ++j) {
    const cplx d = xi - k.nodes[j];
    terms[j] = k.weights[j] * std::exp(static_cast<double>(kHeatKernelSign) * 0.5 * kPi * p.h4 * p.a * d * d / eta);
  }
  return pairwise_sum(terms);
}

}  // namespace

cplx harmonic_psi(cplx xi, cplx eta, const SpectralDensity& k, const ModelParams& p) {
  return std::sqrt(p.a * p.h4 / (2.0 * eta)) * heat_kernel_sum(xi, eta, k, p);
}

cplx harmonic_phi(double t, const AnalyticPoint& u, const SpectralDensity& k, const ModelParams& p) {
  const cplx ia(0.0, p.a);
  const cplx v = u.u2 - ia;
  if (v == cplx(0.0, 0.0)) throw SingularPointError("harmonic solution is singular at u2 = ia");
  const double w = 2.0 * p.a * kPi * t / p.m;
  // 1/√η taken as e^{−2iw} √v / √(u2 + ia): analytic in u2 and continuous in t,
  // where the principal root of η jumps once e^{4iw} turns η negative.
  const cplx root = std::sqrt(p.a * p.h4 / 2.0) * std::polar(1.0, -w) / std::sqrt(u.u2 + ia);
  const cplx pre = root * std::exp(2.0 * kPi * kI * p.h2 * u.u2 - kPi * kI * p.h4 / 4.0 * u.u1 * u.u1 / v);
  return pre * heat_kernel_sum(std::polar(1.0, 2.0 * w) * u.u1 / v, std::polar(1.0, 4.0 * w) * (u.u2 + ia) / v, k, p);
}

double harmonic_growth_rate(double t, const AnalyticPoint& u, const ModelParams& p) {
  const cplx ia(0.0, p.a);
  const cplx v = u.u2 - ia;
  if (v == cplx(0.0, 0.0)) throw SingularPointError("harmonic solution is singular at u2 = ia");
  const cplx eta = std::polar(1.0, 8.0 * p.a * kPi * t / p.m) * (u.u2 + ia) / v;
  return (static_cast<double>(kHeatKernelSign) * 0.5 * kPi * p.h4 * p.a / eta).real();
}

Field3D reconstruct_field(double t, const Grid3D& grid, Model model, const SpectralDensity& density,
                          const ModelParams& p) {
  p.validate();
  grid.validate();
  density.validate();
  Field3D out(grid);
  const auto& ax = grid.axes;
  std::vector<long> bad(ax[1].count, -1);
  parallel_for(ax[1].count, [&](std::size_t i2) {
    for (std::size_t i1 = 0; i1 < ax[0].count; ++i1) {
      const cplx env = envelope(ax[0].at(i1), p);
      for (std::size_t i3 = 0; i3 < ax[2].count; ++i3) {
        const auto u = analytic_coords(ax[0].at(i1), ax[1].at(i2), ax[2].at(i3), p);
        try {
          const cplx phi = model == Model::Free ? free_phi(t, u, density, p)
                                                : harmonic_phi(t, u, density, p);
          out.at(i1, i2, i3) = env * phi;
        } catch (const SingularPointError&) {
          if (bad[i2] < 0) bad[i2] = static_cast<long>(grid.flat(i1, i2, i3));
        }
      }
    }
  });
  for (long node : bad)
    if (node >= 0) throw SingularPointError("closed-form solution is singular on the grid", node);
  for (const auto& v : out.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalContractError("closed-form field overflowed; E >= a is required for the harmonic model");
  return out;
}

symalg::DiffOp reduced_hamiltonian(Model model) {
  return build_Hr(model_form(model)).hr;
}

double schrodinger_residual(const symalg::DiffOp& hr, const Field3D& before, const Field3D& now,
                            const Field3D& after, double dt, const ModelParams& p, int sign) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  if (before.values.size() != now.values.size() || after.values.size() != now.values.size())
    throw ValidationError("time slices must share a grid");
  Field3D lhs = apply_diffop_fd(hr, now, p.bindings());
  const Field3D b = before.interior(1), a = after.interior(1);
  for (std::size_t k = 0; k < lhs.values.size(); ++k) {
    const cplx dtf = (a.values[k] - b.values[k]) / (2.0 * dt);
    lhs.values[k] = kI * p.h4 * dtf + static_cast<double>(sign) * lhs.values[k];
  }
  const double base = now.interior(1).norm();
  if (base == 0.0) throw NumericalContractError("residual of a zero field is undefined");
  return lhs.norm() / base;
}

double schrodinger_residual(Model model, const SpectralDensity& density, const ModelParams& p,
                            const Grid3D& grid, double t, double dt, int sign) {
  const auto hr = reduced_hamiltonian(model);
  return schrodinger_residual(hr, reconstruct_field(t - dt, grid, model, density, p),
                              reconstruct_field(t, grid, model, density, p),
                              reconstruct_field(t + dt, grid, model, density, p), dt, p, sign);
}

std::vector<double> interference_profile(double delta, const Grid1D& grid, const ModelParams& p) {
  grid.validate();
  const Fiducial phi(p);
  std::vector<double> out(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double y = grid.at(k);
    out[k] = std::abs(phi(y - delta) + phi(y + delta));
  }
  return out;
}

double free_band_leakage(double t, double x3, double length, std::size_t n,
                         const SpectralDensity& g, const ModelParams& p) {
  if (p.D != 0.0) throw InvalidParamsError("band-limit check needs D = 0");
  if (n < 4 || !(length > 0.0)) throw GridTooSmallError("band-limit check needs n >= 4 and L > 0");
  g.validate();
  std::vector<cplx> psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x1 = -0.5 * length + length * static_cast<double>(j) / static_cast<double>(n);
    const auto u = analytic_coords(x1, 0.0, x3, p);
    psi[j] = free_psi(4.0 * kPi * t / p.m + 1.0 / u.u2, u.u1 / u.u2, g, p);
  }
  std::set<long> expected;
  for (double s : g.nodes) {
    const double bin = 2.0 * s * length;
    const long b = std::lround(bin);
    if (std::abs(bin - static_cast<double>(b)) > 1e-9)
      throw ValidationError("density nodes must sit on multiples of 1/(2L)");
    const long nn = static_cast<long>(n);
    expected.insert(((-b % nn) + nn) % nn);
  }
  double inside = 0.0, outside = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> terms(n);
    for (std::size_t j = 0; j < n; ++j)
      terms[j] = psi[j] * std::polar(1.0, -2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n));
    const double e = std::norm(pairwise_sum(terms));
    (expected.count(static_cast<long>(k)) ? inside : outside) += e;
  }
  return outside / (inside + outside);
}

}  // namespace cstgeo
