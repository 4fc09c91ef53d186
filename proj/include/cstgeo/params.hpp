#pragma once

#include <string>

#include "cstgeo/symalg/polynomial.hpp"

namespace cstgeo {

// Scalar model parameters shared by every module.
struct ModelParams {
  double D = 0.0;   // cubic fiducial parameter
  double E = 1.0;   // squeeze
  double h2 = 0.0;
  double h4 = 1.0;  // non-zero
  double m = 1.0;   // mass, > 0
  double a = 0.0;   // a = m*omega, >= 0

  // h4 != 0, m > 0, a >= 0, all finite.
  void validate() const;
  // Additionally E*h4 > 0, required whenever a fiducial vector is built.
  void validate_fiducial() const;

  symalg::Bindings bindings() const;
  std::string describe() const;
};

}  // namespace cstgeo
