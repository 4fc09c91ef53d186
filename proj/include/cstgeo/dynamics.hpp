#pragma once

#include <functional>
#include <vector>

#include "cstgeo/grid.hpp"
#include "cstgeo/params.hpp"
#include "cstgeo/reduction.hpp"

namespace cstgeo {

struct AnalyticPoint {
  cplx u1;
  cplx u2;
};

// u1 = D x1² + 2iE x1 − 2 x3, u2 = D x1 − x2 + iE.
AnalyticPoint analytic_coords(double x1, double x2, double x3, const ModelParams& p);
// exp(π h4 (−E x1² + iD x1³/3)).
cplx envelope(double x1, const ModelParams& p);

struct SpectralDensity {
  std::vector<double> nodes;
  std::vector<cplx> weights;

  void validate() const;
  // Simpson weights on [lo, hi] times samples of g (n odd).
  static SpectralDensity quadrature(const std::function<cplx(double)>& g, double lo, double hi,
                                    std::size_t n);
};

SpectralDensity operator*(cplx c, const SpectralDensity& d);

// Σ g_k exp(−(4πi/h4) s_k² ξ − 2πi s_k η).
cplx free_psi(cplx xi, cplx eta, const SpectralDensity& g, const ModelParams& p);
// u2^{−1/2} exp(2πi h2 u2 − (πi h4/4) u1²/u2) ψ(4πt/m + 1/u2, u1/u2).
cplx free_phi(double t, const AnalyticPoint& u, const SpectralDensity& g, const ModelParams& p);

// (a h4/(2η))^{1/2} Σ k_j exp(σ·½π h4 a (ξ − s_j)²/η) with σ = kHeatKernelSign.
inline constexpr int kHeatKernelSign = -1;
cplx harmonic_psi(cplx xi, cplx eta, const SpectralDensity& k, const ModelParams& p);
cplx harmonic_phi(double t, const AnalyticPoint& u, const SpectralDensity& k, const ModelParams& p);

// Real part of the s²-coefficient in the harmonic exponent at (t, u); a
// positive value means the node sum grows with |s|.
double harmonic_growth_rate(double t, const AnalyticPoint& u, const ModelParams& p);

// f(t; x) = envelope(x1) φ_model(t; u(x)).
Field3D reconstruct_field(double t, const Grid3D& grid, Model model, const SpectralDensity& density,
                          const ModelParams& p);

// Sign of H_r in the dynamical equation (iħ₄∂t + sign·H_r) f = 0.
inline constexpr int kDynamicalSign = +1;

// Operator H_r of the model with the parameters still formal.
symalg::DiffOp reduced_hamiltonian(Model model);

// ‖(iħ₄∂t + sign·H_r) f‖ / ‖f‖ on the grid interior, central difference in t.
double schrodinger_residual(Model model, const SpectralDensity& density, const ModelParams& p,
                            const Grid3D& grid, double t, double dt, int sign = kDynamicalSign);

// Same residual for three given time slices f(t−dt), f(t), f(t+dt).
double schrodinger_residual(const symalg::DiffOp& hr, const Field3D& before, const Field3D& now,
                            const Field3D& after, double dt, const ModelParams& p,
                            int sign = kDynamicalSign);

// |φ(y−δ) + φ(y+δ)|.
std::vector<double> interference_profile(double delta, const Grid1D& grid, const ModelParams& p);

// Free model at D = 0: the field along x1 at x2 = 0, with the closed-form
// prefactor removed, is Σ c_k e^{−4πi s_k x1}. Sampled on n periodic nodes of
// [−L/2, L/2), returns the fraction of DFT energy outside the bins 2 s_k L.
double free_band_leakage(double t, double x3, double length, std::size_t n,
                         const SpectralDensity& g, const ModelParams& p);

}  // namespace cstgeo
