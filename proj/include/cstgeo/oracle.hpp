#pragma once

#include <vector>

#include "cstgeo/dynamics.hpp"
#include "cstgeo/grid.hpp"
#include "cstgeo/params.hpp"
#include "cstgeo/reduction.hpp"

namespace cstgeo {

// H = −Σ a_jk dπ(X_j) dπ(X_k) on functions of y, so that iħ₄ψ̇ = Hψ.
symalg::DiffOp quantize_1d(Model model, const SymbolicParams& p = {});

// H = −∂ p ∂ + (i/2)(b ∂ + ∂ b) + q.
struct SymmetricForm {
  symalg::Polynomial p, b, q;
  // p, b and q are real for real symbol values.
  bool formally_symmetric = false;
};

SymmetricForm symmetric_form(const symalg::DiffOp& h);

// Hermitian tridiagonal discretisation on a Dirichlet grid.
struct Tridiagonal {
  std::vector<cplx> lower, diag, upper;  // lower[k] = H(k+1, k), upper[k] = H(k, k+1)
  std::vector<cplx> apply(const std::vector<cplx>& v) const;
};

Tridiagonal discretize(const symalg::DiffOp& h, const Grid1D& grid, const symalg::Bindings& bindings);

// Solves T x = r; throws LinearSolveError on a vanishing pivot.
std::vector<cplx> solve_tridiagonal(const Tridiagonal& t, std::vector<cplx> r);

struct TrajectoryPoint {
  double t;
  double norm;
  double energy;
};

struct Propagation {
  WaveFunction1D psi;
  std::vector<TrajectoryPoint> trajectory;
  double max_edge_ratio = 0.0;
  bool boundary_warning = false;  // edge magnitude above 1e-8 of the max
};

class Propagator1D {
 public:
  Propagator1D(const symalg::DiffOp& hamiltonian, const Grid1D& grid, const ModelParams& p, double dt);

  // Crank–Nicolson steps (1 + iΔH/2)ψ⁺ = (1 − iΔH/2)ψ, Δ = dt/ħ₄. The number
  // of steps is t/dt rounded to the nearest integer.
  Propagation propagate(const WaveFunction1D& psi0, double t, std::size_t record_every = 0) const;

  double energy(const WaveFunction1D& psi) const;
  double dt() const { return dt_; }

 private:
  Grid1D grid_;
  Tridiagonal h_;
  Tridiagonal lhs_, rhs_;
  double dt_;
};

Propagation cn_propagate(const WaveFunction1D& psi0, Model model, const ModelParams& p, double t,
                         double dt);

struct IntertwiningOptions {
  double delta = 0.01;  // time offset of the central difference
  double cn_dt = 0.005;
  int sign = kDynamicalSign;
};

// Propagates psi0 to t−δ, t, t+δ, transforms each slice and returns the
// first-order residual ‖(iħ₄∂t + sign·H_r) f̃‖/‖f̃‖.
double intertwining_check(const WaveFunction1D& psi0, Model model, const ModelParams& p,
                          const Grid3D& out, double t, const IntertwiningOptions& options = {});

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
  double t = 0.0;
};

// (1/m)(p + D q²)² [+ (a²/m) q²].
double energy_of(const PhasePoint& x, Model model, const ModelParams& p);

std::vector<PhasePoint> classical_orbit(const PhasePoint& x0, Model model, const ModelParams& p,
                                        double t_end, double dt);

// Free: q = q0 + 2vt/m, v = p + Dq² fixed. Harmonic: (q, v) rotates at 2a/m.
PhasePoint classical_closed_form(const PhasePoint& x0, Model model, const ModelParams& p, double t);

}  // namespace cstgeo
