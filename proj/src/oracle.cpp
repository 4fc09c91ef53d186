#include "cstgeo/oracle.hpp"

#include <cmath>

#include "cstgeo/cst_numeric.hpp"
#include "cstgeo/error.hpp"

namespace cstgeo {

using symalg::DiffOp;
using symalg::Polynomial;
using symalg::Var;

namespace {

constexpr cplx kI(0.0, 1.0);

}  // namespace

DiffOp quantize_1d(Model model, const SymbolicParams& p) {
  return -quadratic_form_op(model_form(model, p),
                            {derived_rep1(1, p), derived_rep1(2, p), derived_rep1(3, p)});
}

SymmetricForm symmetric_form(const DiffOp& h) {
  if (h.order() > 2) throw ValidationError("symmetric form needs order <= 2");
  for (const auto& [idx, c] : h.terms()) {
    (void)c;
    for (std::size_t s = 0; s < idx.size(); ++s)
      if (s != 3 && idx[s]) throw ValidationError("symmetric form needs an operator in y");
  }
  const Polynomial i = Polynomial::imaginary_unit();
  SymmetricForm f;
  f.p = -h.coefficient(Var::y, 2);
  f.b = -i * (h.coefficient(Var::y, 1) + f.p.derivative(Var::y));
  f.q = h.multiplier() - symalg::Rational(1, 2) * i * f.b.derivative(Var::y);
  f.formally_symmetric = f.p.imag_part().is_zero() && f.b.imag_part().is_zero() &&
                         f.q.imag_part().is_zero();
  return f;
}

std::vector<cplx> Tridiagonal::apply(const std::vector<cplx>& v) const {
  const std::size_t n = diag.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = diag[k] * v[k];
    if (k > 0) s += lower[k - 1] * v[k - 1];
    if (k + 1 < n) s += upper[k] * v[k + 1];
    out[k] = s;
  }
  return out;
}

Tridiagonal discretize(const DiffOp& h, const Grid1D& grid, const symalg::Bindings& bindings) {
  grid.validate();
  const auto form = symmetric_form(h);
  if (!form.formally_symmetric) throw ValidationError("Hamiltonian is not formally symmetric");
  auto at = [&](const Polynomial& poly, double y) {
    auto b = bindings;
    b[Var::y] = y;
    return poly.eval(b).real();
  };
  const std::size_t n = grid.n;
  const double dy = grid.step;
  Tridiagonal t;
  t.diag.resize(n);
  t.upper.resize(n - 1);
  t.lower.resize(n - 1);
  std::vector<double> b(n), q(n), p_half(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = at(form.b, grid.at(k));
    q[k] = at(form.q, grid.at(k));
  }
  for (std::size_t k = 0; k <= n; ++k) p_half[k] = at(form.p, grid.y0 + (static_cast<double>(k) - 0.5) * dy);
  for (std::size_t k = 0; k < n; ++k) t.diag[k] = (p_half[k] + p_half[k + 1]) / (dy * dy) + q[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    t.upper[k] = -p_half[k + 1] / (dy * dy) + kI * (b[k] + b[k + 1]) / (4.0 * dy);
    t.lower[k] = std::conj(t.upper[k]);
  }
  return t;
}

std::vector<cplx> solve_tridiagonal(const Tridiagonal& t, std::vector<cplx> r) {
  const std::size_t n = t.diag.size();
  std::vector<cplx> c(n);
  cplx pivot = t.diag[0];
  if (std::abs(pivot) == 0.0) throw LinearSolveError("zero pivot in tridiagonal solve");
  c[0] = n > 1 ? t.upper[0] / pivot : 0.0;
  r[0] /= pivot;
  for (std::size_t k = 1; k < n; ++k) {
    pivot = t.diag[k] - t.lower[k - 1] * c[k - 1];
    if (std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot)))
      throw LinearSolveError("zero pivot in tridiagonal solve");
    if (k + 1 < n) c[k] = t.upper[k] / pivot;
    r[k] = (r[k] - t.lower[k - 1] * r[k - 1]) / pivot;
  }
  for (std::size_t k = n - 1; k-- > 0;) r[k] -= c[k] * r[k + 1];
  return r;
}

Propagator1D::Propagator1D(const DiffOp& hamiltonian, const Grid1D& grid, const ModelParams& p, double dt)
    : grid_(grid), h_(discretize(hamiltonian, grid, p.bindings())), dt_(dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  p.validate();
  const cplx half = kI * (dt / p.h4) / 2.0;
  lhs_ = h_;
  rhs_ = h_;
  for (std::size_t k = 0; k < h_.diag.size(); ++k) {
    lhs_.diag[k] = 1.0 + half * h_.diag[k];
    rhs_.diag[k] = 1.0 - half * h_.diag[k];
  }
  for (std::size_t k = 0; k < h_.upper.size(); ++k) {
    lhs_.upper[k] = half * h_.upper[k];
    lhs_.lower[k] = half * h_.lower[k];
    rhs_.upper[k] = -half * h_.upper[k];
    rhs_.lower[k] = -half * h_.lower[k];
  }
}

double Propagator1D::energy(const WaveFunction1D& psi) const {
  const auto hv = h_.apply(psi.values);
  std::vector<cplx> terms(hv.size());
  for (std::size_t k = 0; k < hv.size(); ++k) terms[k] = std::conj(psi.values[k]) * hv[k];
  const double n = psi.norm();
  return (grid_.step * pairwise_sum(terms)).real() / (n * n);
}

Propagation Propagator1D::propagate(const WaveFunction1D& psi0, double t, std::size_t record_every) const {
  psi0.validate();
  if (psi0.grid.n != grid_.n || psi0.grid.step != grid_.step || psi0.grid.y0 != grid_.y0)
    throw ValidationError("initial state does not live on the propagator grid");
  if (t < 0.0) throw ValidationError("propagation time must be non-negative");
  const auto steps = static_cast<std::size_t>(std::llround(t / dt_));

  Propagation out{psi0, {}, 0.0, false};
  auto record = [&](std::size_t n) {
    out.trajectory.push_back({static_cast<double>(n) * dt_, out.psi.norm(), energy(out.psi)});
  };
  auto watch_edges = [&] {
    double peak = 0.0;
    for (const auto& v : out.psi.values) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(out.psi.values.front()), std::abs(out.psi.values.back()));
    if (peak > 0.0) out.max_edge_ratio = std::max(out.max_edge_ratio, edge / peak);
  };
  if (record_every) record(0);
  watch_edges();
  for (std::size_t n = 1; n <= steps; ++n) {
    out.psi.values = solve_tridiagonal(lhs_, rhs_.apply(out.psi.values));
    watch_edges();
    if (record_every && (n % record_every == 0 || n == steps)) record(n);
  }
  out.boundary_warning = out.max_edge_ratio > 1e-8;
  return out;
}

Propagation cn_propagate(const WaveFunction1D& psi0, Model model, const ModelParams& p, double t, double dt) {
  const Propagator1D prop(quantize_1d(model), psi0.grid, p, dt);
  return prop.propagate(psi0, t, 1);
}

double intertwining_check(const WaveFunction1D& psi0, Model model, const ModelParams& p,
                          const Grid3D& out, double t, const IntertwiningOptions& o) {
  if (!(o.delta > 0.0) || t - o.delta < 0.0)
    throw ValidationError("intertwining check needs 0 < delta <= t");
  const Propagator1D prop(quantize_1d(model), psi0.grid, p, o.cn_dt);
  const auto before = prop.propagate(psi0, t - o.delta).psi;
  const auto now = prop.propagate(before, o.delta).psi;
  const auto after = prop.propagate(now, o.delta).psi;
  return schrodinger_residual(reduced_hamiltonian(model), icst(before, out, p), icst(now, out, p),
                              icst(after, out, p), o.delta, p, o.sign);
}

double energy_of(const PhasePoint& x, Model model, const ModelParams& p) {
  const double v = x.p + p.D * x.q * x.q;
  double e = v * v / p.m;
  if (model == Model::Harmonic) e += p.a * p.a * x.q * x.q / p.m;
  return e;
}

std::vector<PhasePoint> classical_orbit(const PhasePoint& x0, Model model, const ModelParams& p,
                                        double t_end, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  p.validate();
  const double a2 = model == Model::Harmonic ? p.a * p.a : 0.0;
  auto rhs = [&](double q, double mom) {
    const double v = mom + p.D * q * q;
    return std::pair{2.0 * v / p.m, -4.0 * p.D * q * v / p.m - 2.0 * a2 * q / p.m};
  };
  const auto steps = static_cast<std::size_t>(std::llround((t_end - x0.t) / dt));
  std::vector<PhasePoint> out{x0};
  out.reserve(steps + 1);
  PhasePoint x = x0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const auto [k1q, k1p] = rhs(x.q, x.p);
    const auto [k2q, k2p] = rhs(x.q + 0.5 * dt * k1q, x.p + 0.5 * dt * k1p);
    const auto [k3q, k3p] = rhs(x.q + 0.5 * dt * k2q, x.p + 0.5 * dt * k2p);
    const auto [k4q, k4p] = rhs(x.q + dt * k3q, x.p + dt * k3p);
    x.q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    x.p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    x.t = x0.t + static_cast<double>(n) * dt;
    out.push_back(x);
  }
  return out;
}

PhasePoint classical_closed_form(const PhasePoint& x0, Model model, const ModelParams& p, double t) {
  const double v0 = x0.p + p.D * x0.q * x0.q;
  const double tau = t - x0.t;
  double q, v;
  if (model == Model::Free || p.a == 0.0) {
    q = x0.q + 2.0 * v0 * tau / p.m;
    v = v0;
  } else {
    const double w = 2.0 * p.a / p.m;
    q = x0.q * std::cos(w * tau) + v0 / p.a * std::sin(w * tau);
    v = -p.a * x0.q * std::sin(w * tau) + v0 * std::cos(w * tau);
  }
  return {q, v - p.D * q * q, t};
}

}  // namespace cstgeo
