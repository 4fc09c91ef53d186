#include "cstgeo/reduction.hpp"

#include <utility>

namespace cstgeo {

using symalg::DiffOp;
using symalg::Polynomial;
using symalg::Var;
using symalg::sym;

namespace {

const Polynomial& iu() {
  static const Polynomial p = Polynomial::imaginary_unit();
  return p;
}

std::string describe_residual(const std::vector<ConstraintViolation>& v) {
  std::string out = "quadratic form is not geometrisable:";
  for (const auto& c : v) out += " [" + c.constraint + ", residual " + c.residual.to_string() + "]";
  return out;
}

}  // namespace

QuadraticForm QuadraticForm::symbolic() {
  static constexpr Var names[3][3] = {{Var::a11, Var::a12, Var::a13},
                                      {Var::a21, Var::a22, Var::a23},
                                      {Var::a31, Var::a32, Var::a33}};
  QuadraticForm q;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) q.a[j][k] = sym(names[j][k]);
  return q;
}

Classification classify(const QuadraticForm& q, const Polynomial& D) {
  const auto& a = q.a;
  Classification out;
  auto check = [&](std::string name, const Polynomial& residual) {
    if (!residual.is_zero()) out.violations.push_back({std::move(name), residual});
  };
  check("a12 = 2*D*a11 - a21", a[0][1] - (Polynomial(2) * D * a[0][0] - a[1][0]));
  check("a22 = D^2*a11", a[1][1] - D * D * a[0][0]);
  check("a23 = D*(a13 + a31) - a32", a[1][2] - (D * (a[0][2] + a[2][0]) - a[2][1]));
  out.geometrisable = out.violations.empty();
  return out;
}

QuadraticForm complete_form(const FreeCoefficients& f, const Polynomial& D) {
  QuadraticForm q;
  q.a[0][0] = f.a11;
  q.a[1][0] = f.a21;
  q.a[0][2] = f.a13;
  q.a[2][0] = f.a31;
  q.a[2][1] = f.a32;
  q.a[2][2] = f.a33;
  q.a[0][1] = Polynomial(2) * D * f.a11 - f.a21;
  q.a[1][1] = D * D * f.a11;
  q.a[1][2] = D * (f.a13 + f.a31) - f.a32;
  return q;
}

ReductionCoeffs reduction_coeffs(const QuadraticForm& q, const SymbolicParams& p) {
  if (p.E.is_zero()) throw DivisionByZeroError("reduction coefficients need E != 0");
  const Polynomial inv_E = p.E.inverse();
  const auto& a = q.a;
  const Polynomial x1 = sym(Var::x1), x2 = sym(Var::x2);
  const Polynomial pi = sym(Var::pi);
  const Polynomial s13 = a[0][2] + a[2][0];
  const Polynomial u2 = p.D * x1 - x2 + iu() * p.E;

  ReductionCoeffs c;
  c.A = -iu() * a[0][0];
  c.B = iu() * p.D * a[0][0] - iu() * (a[1][0] + a[0][1]);
  c.C = -a[0][0] * (Polynomial(2) * iu() * x2 - iu() * p.D * x1 + p.E) - iu() * s13;
  c.F = -a[0][0] * u2 * u2 + s13 * u2 - a[2][2];
  c.K = Polynomial(2) * pi * p.h4 * s13 * x1 -
        a[0][0] * (Polynomial(-2) * pi * iu() * p.h4 * p.E * x1 + p.D * inv_E +
                   Polynomial(5) * pi * p.h4 * p.D * x1 * x1 -
                   Polynomial(4) * pi * p.h4 * x1 * x2) +
        a[1][0] * inv_E;
  return c;
}

DiffOp quadratic_form_op(const QuadraticForm& q, const std::array<DiffOp, 3>& g) {
  DiffOp out;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      if (!q.a[j][k].is_zero()) out += q.a[j][k] * symalg::compose(g[j], g[k]);
  return out;
}

DiffOp quadratic_form_op(const QuadraticForm& q, const SymbolicParams& p) {
  return quadratic_form_op(q, {derived_rep2(1, p), derived_rep2(2, p), derived_rep2(3, p)});
}

ClassificationFailedError::ClassificationFailedError(std::vector<ConstraintViolation> violations)
    : ValidationError(describe_residual(violations)), violations_(std::move(violations)) {}

OrderNotReducedError::OrderNotReducedError(DiffOp residue)
    : NumericalContractError("second-order terms survive the reduction: " + residue.to_string()),
      residue_(std::move(residue)) {}

NotAPushforwardError::NotAPushforwardError(const std::string& slot, Polynomial coefficient)
    : ValidationError("operator does not descend to analytic coordinates; " + slot +
                      " coefficient " + coefficient.to_string() + " depends on x1"),
      coefficient_(std::move(coefficient)) {}

ReducedHamiltonian build_Hr(const QuadraticForm& q, const SymbolicParams& p,
                            const BuildOptions& options) {
  if (options.check_classification) {
    auto cls = classify(q, p.D);
    if (!cls.geometrisable) throw ClassificationFailedError(std::move(cls.violations));
  }
  ReducedHamiltonian r;
  r.coeffs = reduction_coeffs(q, p);
  r.quadratic = quadratic_form_op(q, p);
  r.analytic_multiplier = r.coeffs.A * DiffOp::partial(Var::x1) +
                          r.coeffs.B * DiffOp::partial(Var::x2) +
                          r.coeffs.C * DiffOp::partial(Var::x3) +
                          DiffOp::multiplication(r.coeffs.K);
  r.structural_multiplier = DiffOp::multiplication(r.coeffs.F);
  r.hr = r.quadratic + symalg::compose(r.analytic_multiplier, analytic_operator(p)) +
         symalg::compose(r.structural_multiplier, structural_operator(p));
  if (options.check_order && r.hr.order() > 1) {
    DiffOp high;
    for (unsigned k = 2; k <= r.hr.order(); ++k) high += r.hr.part_of_order(k);
    throw OrderNotReducedError(std::move(high));
  }
  return r;
}

DiffOp pushforward_to_analytic(const DiffOp& h, const SymbolicParams& p) {
  if (h.order() > 1) throw ValidationError("pushforward needs an operator of order <= 1");
  for (const auto& [idx, coeff] : h.terms()) {
    (void)coeff;
    if (idx[3] || idx[4] || idx[5])
      throw ValidationError("pushforward acts on operators in x1, x2, x3 only");
  }
  const Polynomial x1 = sym(Var::x1);
  const Polynomial pi = sym(Var::pi);
  const Polynomial c0 = h.multiplier();
  const Polynomial c1 = h.coefficient(Var::x1);
  const Polynomial c2 = h.coefficient(Var::x2);
  const Polynomial c3 = h.coefficient(Var::x3);

  // e^{-W} ∂₁ e^{W} = ∂₁ + W'
  const Polynomial w1 = pi * p.h4 * (Polynomial(-2) * p.E * x1 + iu() * p.D * x1 * x1);
  const Polynomial mult = c0 + c1 * w1;
  const Polynomial du1 = c1 * (Polynomial(2) * p.D * x1 + Polynomial(2) * iu() * p.E) - Polynomial(2) * c3;
  const Polynomial du2 = c1 * p.D - c2;

  const Polynomial u1 = sym(Var::u1), u2 = sym(Var::u2);
  const std::map<Var, Polynomial> back = {
      {Var::x2, p.D * x1 + iu() * p.E - u2},
      {Var::x3, symalg::Rational(1, 2) * (p.D * x1 * x1 + Polynomial(2) * iu() * p.E * x1 - u1)},
  };
  auto descend = [&](const Polynomial& c, const char* slot) {
    Polynomial r = c.substitute(back);
    if (r.depends_on(Var::x1)) throw NotAPushforwardError(slot, r);
    return r;
  };
  return descend(du1, "du1") * DiffOp::partial(Var::u1) +
         descend(du2, "du2") * DiffOp::partial(Var::u2) +
         DiffOp::multiplication(descend(mult, "multiplier"));
}

Model model_from_name(const std::string& name) {
  if (name == "free") return Model::Free;
  if (name == "harmonic") return Model::Harmonic;
  throw ValidationError("unknown model '" + name + "' (expected free or harmonic)");
}

std::string model_name(Model model) { return model == Model::Free ? "free" : "harmonic"; }

QuadraticForm model_form(Model model, const SymbolicParams& p) {
  const Polynomial inv_m = p.m.inverse();
  FreeCoefficients f;
  f.a11 = inv_m;
  f.a21 = p.D * inv_m;
  if (model == Model::Harmonic) f.a33 = p.a * p.a * inv_m;
  return complete_form(f, p.D);
}

}  // namespace cstgeo
