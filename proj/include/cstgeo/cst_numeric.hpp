#pragma once

#include <string>

#include "cstgeo/grid.hpp"
#include "cstgeo/params.hpp"
#include "cstgeo/symalg/diffop.hpp"

namespace cstgeo {

// φ(y) = exp((πi D h4/3) y³ − π E h4 y² + 2πi D h2 y).
class Fiducial {
 public:
  // Throws InvalidParamsError unless E*h4 > 0.
  explicit Fiducial(const ModelParams& p);
  cplx operator()(double y) const;

 private:
  double cubic_, quad_, lin_;
};

WaveFunction1D fiducial(const ModelParams& p, const Grid1D& grid);

struct IcstReport {
  // Largest boundary value of |f(y) φ(y − x1)| relative to the interior peak.
  double boundary_ratio = 0.0;
  bool domain_too_small = false;
  // Fewest y-samples per oscillation period at the extreme (x2, x3) nodes.
  double samples_per_period = 0.0;
  bool undersampled = false;
  std::string warning() const;
};

// f̃(x1,x2,x3) = e^{−2πi h2 x2} ∫ f(y) e^{−2πi h4(−x3 y + ½x2 y²)} conj(φ(y − x1)) dy,
// composite Simpson on f's grid (odd node count).
Field3D icst(const WaveFunction1D& f, const Grid3D& out, const ModelParams& p,
             IcstReport* report = nullptr);
// Sampled φ on the same grid as f; every x1 node must be an integer number
// of y-steps.
Field3D icst(const WaveFunction1D& f, const WaveFunction1D& phi, const Grid3D& out,
             const ModelParams& p, IcstReport* report = nullptr);

// Central second-order differences, result on grid.shrunk(1).
Field3D apply_diffop_fd(const symalg::DiffOp& op, const Field3D& field,
                        const symalg::Bindings& bindings);

// ‖L F‖ / ‖F‖ on the interior.
double annihilation_residual(const Field3D& field, const symalg::DiffOp& op,
                             const symalg::Bindings& bindings);

// ‖F(·, x2, ·)‖ over the (x1, x3) plane at the x2 node i2.
double slice_norm(const Field3D& field, std::size_t i2);

// Same operator, 1-D: central differences on samples of y, interior nodes.
WaveFunction1D apply_diffop_fd_1d(const symalg::DiffOp& op, const WaveFunction1D& f,
                                  const symalg::Bindings& bindings);

}  // namespace cstgeo
