#pragma once

#include "cstgeo/grid.hpp"
#include "cstgeo/params.hpp"
#include "cstgeo/symalg/diffop.hpp"

namespace cstgeo {

// g = exp(x4 X4) exp(x3 X3) exp(x2 X2) exp(x1 X1) in the step-3 nilpotent
// group with [X1,X2] = X3, [X1,X3] = X4.
struct GroupElement {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
};

// (a·b) = (a1+b1, a2+b2, a3+b3+a1 b2, a4+b4+a1 b3+½a1² b2), read off from
// composing two instances of the Schrödinger-type representation.
GroupElement group_multiply(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& g);

// [π(g)f](y) = exp(2πi(h2 x2 + h4(x4 − x3 y + ½x2 y²))) f(y − x1).
// Shifts wrap periodically; off-node shifts are band-limited interpolation.
WaveFunction1D rep1_apply(const GroupElement& g, const WaveFunction1D& f, const ModelParams& p);

// The representation on L²(R³) intertwined with rep1 by the coherent state
// transform. Same shift conventions as rep1_apply.
Field3D rep2_apply(const GroupElement& g, const Field3D& f, const ModelParams& p);

// Exact parameters for the symbolic layer; default to the formal symbols.
struct SymbolicParams {
  symalg::Polynomial D = symalg::sym(symalg::Var::D);
  symalg::Polynomial E = symalg::sym(symalg::Var::E);
  symalg::Polynomial h2 = symalg::sym(symalg::Var::h2);
  symalg::Polynomial h4 = symalg::sym(symalg::Var::h4);
  symalg::Polynomial m = symalg::sym(symalg::Var::m);
  symalg::Polynomial a = symalg::sym(symalg::Var::a);

  // Exact binary values of the doubles.
  static SymbolicParams from(const ModelParams& p);
};

// dπ(Xj) on functions of y, j = 1..4.
symalg::DiffOp derived_rep1(int j, const SymbolicParams& p = {});
// dπ₂(Xj) on functions of (x1, x2, x3), j = 1..4.
symalg::DiffOp derived_rep2(int j, const SymbolicParams& p = {});

// Casimir X3² − 2 X2 X4 in either derived representation.
symalg::DiffOp casimir_rep1(const SymbolicParams& p = {});
symalg::DiffOp casimir_rep2(const SymbolicParams& p = {});

// Analytic condition 𝒞 annihilating the transform image.
symalg::DiffOp analytic_operator(const SymbolicParams& p = {});
// Structural condition 𝒮 = ∂₃₃ + 4πi h4 ∂₂ − 8π² h2 h4.
symalg::DiffOp structural_operator(const SymbolicParams& p = {});

}  // namespace cstgeo
