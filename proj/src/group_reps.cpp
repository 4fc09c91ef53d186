#include "cstgeo/group_reps.hpp"

#include <cmath>
#include <numbers>

#include "cstgeo/error.hpp"

namespace cstgeo {

using symalg::DiffOp;
using symalg::Polynomial;
using symalg::Var;

namespace {

const Polynomial& pi_sym() {
  static const Polynomial p = symalg::sym(Var::pi);
  return p;
}

const Polynomial& i_unit() {
  static const Polynomial p = Polynomial::imaginary_unit();
  return p;
}

void check_generator(int j) {
  if (j < 1 || j > 4) throw ValidationError("Lie algebra generator index must be 1..4");
}

}  // namespace

GroupElement group_multiply(const GroupElement& a, const GroupElement& b) {
  return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3 + a.x1 * b.x2,
          a.x4 + b.x4 + a.x1 * b.x3 + 0.5 * a.x1 * a.x1 * b.x2};
}

GroupElement group_inverse(const GroupElement& g) {
  return {-g.x1, -g.x2, -g.x3 + g.x1 * g.x2, -g.x4 + g.x1 * g.x3 - 0.5 * g.x1 * g.x1 * g.x2};
}

WaveFunction1D rep1_apply(const GroupElement& g, const WaveFunction1D& f, const ModelParams& p) {
  f.validate();
  WaveFunction1D out{f.grid, periodic_shift(f.values, g.x1 / f.grid.step)};
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double y = f.grid.at(k);
    const double phase = two_pi * (p.h2 * g.x2 + p.h4 * (g.x4 - g.x3 * y + 0.5 * g.x2 * y * y));
    out.values[k] *= std::polar(1.0, phase);
  }
  return out;
}

Field3D rep2_apply(const GroupElement& g, const Field3D& f, const ModelParams& p) {
  f.grid.validate();
  const auto& ax = f.grid.axes;
  const std::size_t n1 = ax[0].count, n2 = ax[1].count, n3 = ax[2].count;
  Field3D work = f;

  // x2 shift
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i3 = 0; i3 < n3; ++i3) {
      std::vector<cplx> line(n2);
      for (std::size_t i2 = 0; i2 < n2; ++i2) line[i2] = work.at(i1, i2, i3);
      line = periodic_shift(line, g.x2 / ax[1].step);
      for (std::size_t i2 = 0; i2 < n2; ++i2) work.at(i1, i2, i3) = line[i2];
    }
  }
  // x1 shift
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    for (std::size_t i3 = 0; i3 < n3; ++i3) {
      std::vector<cplx> line(n1);
      for (std::size_t i1 = 0; i1 < n1; ++i1) line[i1] = work.at(i1, i2, i3);
      line = periodic_shift(line, g.x1 / ax[0].step);
      for (std::size_t i1 = 0; i1 < n1; ++i1) work.at(i1, i2, i3) = line[i1];
    }
  }
  // x3 shift depends on the target x2'
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    const double x2p = ax[1].at(i2);
    const double c = g.x3 + g.x1 * x2p - g.x1 * g.x2;
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      std::vector<cplx> line(work.values.begin() + work.grid.flat(i1, i2, 0),
                             work.values.begin() + work.grid.flat(i1, i2, 0) + n3);
      line = periodic_shift(line, c / ax[2].step);
      for (std::size_t i3 = 0; i3 < n3; ++i3) {
        const double x3p = ax[2].at(i3);
        const double phase = two_pi * p.h4 *
                             (g.x4 - g.x1 * g.x3 + 0.5 * g.x1 * g.x1 * g.x2 + g.x1 * x3p -
                              0.5 * g.x1 * g.x1 * x2p);
        work.at(i1, i2, i3) = line[i3] * std::polar(1.0, phase);
      }
    }
  }
  return work;
}

SymbolicParams SymbolicParams::from(const ModelParams& p) {
  using symalg::rational_from_double;
  return {Polynomial(rational_from_double(p.D)),  Polynomial(rational_from_double(p.E)),
          Polynomial(rational_from_double(p.h2)), Polynomial(rational_from_double(p.h4)),
          Polynomial(rational_from_double(p.m)),  Polynomial(rational_from_double(p.a))};
}

DiffOp derived_rep1(int j, const SymbolicParams& p) {
  check_generator(j);
  const Polynomial two_pi_i = Polynomial(2) * pi_sym() * i_unit();
  const Polynomial y = symalg::sym(Var::y);
  switch (j) {
    case 1:
      return -DiffOp::partial(Var::y);
    case 2:
      return DiffOp::multiplication(two_pi_i * (p.h2 + Polynomial(symalg::Rational(1, 2)) * p.h4 * y * y));
    case 3:
      return DiffOp::multiplication(-two_pi_i * p.h4 * y);
    default:
      return DiffOp::multiplication(two_pi_i * p.h4);
  }
}

DiffOp derived_rep2(int j, const SymbolicParams& p) {
  check_generator(j);
  const Polynomial two_pi_i = Polynomial(2) * pi_sym() * i_unit();
  switch (j) {
    case 1:
      return -DiffOp::partial(Var::x1) -
             symalg::sym(Var::x2) * DiffOp::partial(Var::x3) +
             DiffOp::multiplication(two_pi_i * p.h4 * symalg::sym(Var::x3));
    case 2:
      return -DiffOp::partial(Var::x2);
    case 3:
      return -DiffOp::partial(Var::x3);
    default:
      return DiffOp::multiplication(two_pi_i * p.h4);
  }
}

DiffOp casimir_rep1(const SymbolicParams& p) {
  return symalg::compose(derived_rep1(3, p), derived_rep1(3, p)) -
         Polynomial(2) * symalg::compose(derived_rep1(2, p), derived_rep1(4, p));
}

DiffOp casimir_rep2(const SymbolicParams& p) {
  return symalg::compose(derived_rep2(3, p), derived_rep2(3, p)) -
         Polynomial(2) * symalg::compose(derived_rep2(2, p), derived_rep2(4, p));
}

DiffOp analytic_operator(const SymbolicParams& p) {
  const Polynomial x1 = symalg::sym(Var::x1);
  return -i_unit() * DiffOp::partial(Var::x1) - i_unit() * p.D * DiffOp::partial(Var::x2) +
         (p.E - i_unit() * p.D * x1) * DiffOp::partial(Var::x3) -
         DiffOp::multiplication(pi_sym() * p.h4 *
                                (Polynomial(2) * i_unit() * p.E * x1 + p.D * x1 * x1));
}

DiffOp structural_operator(const SymbolicParams& p) {
  return DiffOp::partial(Var::x3, 2) +
         Polynomial(4) * pi_sym() * i_unit() * p.h4 * DiffOp::partial(Var::x2) -
         DiffOp::multiplication(Polynomial(8) * pi_sym() * pi_sym() * p.h2 * p.h4);
}

}  // namespace cstgeo
