#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cstgeo/error.hpp"
#include "cstgeo/oracle.hpp"

using namespace cstgeo;
using namespace cstgeo::symalg;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams desk() { return {0.5, 1.0, 0.2, 0.25, 1.0, 0.5}; }

WaveFunction1D packet(const Grid1D& g, double c, double w, double k) {
  WaveFunction1D f{g, std::vector<cplx>(g.n)};
  for (std::size_t j = 0; j < g.n; ++j) {
    const double y = g.at(j);
    f.values[j] = std::exp(cplx(-(y - c) * (y - c) / (2 * w * w), k * y));
  }
  return f;
}

}  // namespace

TEST_CASE("quantised free hamiltonian at D = 0") {
  SymbolicParams s;
  s.D = Polynomial(0);
  const DiffOp h = quantize_1d(Model::Free, s);
  CHECK(h == -s.m.inverse() * DiffOp::partial(Var::y, 2));
}

TEST_CASE("quantised harmonic term") {
  const DiffOp extra = quantize_1d(Model::Harmonic) - quantize_1d(Model::Free);
  const Polynomial expected = sym(Var::a).pow(2) * sym(Var::m).inverse() *
                              (Polynomial(2) * sym(Var::pi) * sym(Var::h4) * sym(Var::y)).pow(2);
  CHECK(extra == DiffOp::multiplication(expected));
}

TEST_CASE("quantised hamiltonians are formally symmetric") {
  for (Model m : {Model::Free, Model::Harmonic}) {
    const auto f = symmetric_form(quantize_1d(m));
    CHECK(f.formally_symmetric);
    CHECK(f.p == sym(Var::m).inverse());
  }
  CHECK_FALSE(symmetric_form(DiffOp::partial(Var::y)).formally_symmetric);
}

TEST_CASE("discretisation is hermitian") {
  const auto p = desk();
  const auto t = discretize(quantize_1d(Model::Harmonic), Grid1D::span(-3, 3, 61), p.bindings());
  for (std::size_t k = 0; k < t.upper.size(); ++k) CHECK(t.lower[k] == std::conj(t.upper[k]));
  for (const auto& d : t.diag) CHECK(d.imag() == 0.0);
}

TEST_CASE("tridiagonal solver") {
  Tridiagonal t{{cplx(1, 0), cplx(0, 1)}, {cplx(4, 0), cplx(4, 1), cplx(3, 0)}, {cplx(1, 0), cplx(0, -1)}};
  const std::vector<cplx> x = {cplx(1, 2), cplx(-1, 0), cplx(0.5, -0.5)};
  const auto r = solve_tridiagonal(t, t.apply(x));
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(r[k] - x[k]) < 1e-14);
  Tridiagonal singular{{cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}, {cplx(0, 0)}};
  CHECK_THROWS_AS(solve_tridiagonal(singular, {1.0, 1.0}), LinearSolveError);
}

TEST_CASE("crank-nicolson conserves the norm") {
  const auto p = desk();
  const auto g = Grid1D::span(-8, 8, 801);
  for (Model m : {Model::Free, Model::Harmonic}) {
    const auto run = cn_propagate(packet(g, 0.2, 0.8, 0.5), m, p, 1.0, 1e-3);
    REQUIRE(run.trajectory.size() == 1001);
    CHECK(std::abs(run.trajectory.back().norm / run.trajectory.front().norm - 1.0) < 1e-10);
  }
}

TEST_CASE("crank-nicolson matches the spreading gaussian") {
  const ModelParams p{0.0, 1.0, 0.0, 1.0, 1.0, 0.0};
  const auto g = Grid1D::span(-10, 10, 8001);
  const auto run = cn_propagate(packet(g, 0.0, 1.0, 0.0), Model::Free, p, 0.5, 1e-4);
  // iψ_t = −ψ_yy: ψ = z^{-1/2} exp(−y²/(2z)), z = 1 + 2it
  const cplx z(1.0, 2.0 * 0.5);
  double err = 0.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double y = g.at(k);
    err = std::max(err, std::abs(std::exp(-y * y / (2.0 * z)) / std::sqrt(z) - run.psi.values[k]));
  }
  CHECK(err < 1e-6);
  CHECK_FALSE(run.boundary_warning);
}

TEST_CASE("crank-nicolson time error is second order") {
  const auto p = desk();
  const auto g = Grid1D::span(-8, 8, 401);
  const auto psi0 = packet(g, 0.2, 0.8, 0.5);
  const auto ref = cn_propagate(psi0, Model::Harmonic, p, 0.4, 0.4 / 1600).psi;
  auto err = [&](double dt) {
    const auto psi = cn_propagate(psi0, Model::Harmonic, p, 0.4, dt).psi;
    double e = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) e = std::max(e, std::abs(psi.values[k] - ref.values[k]));
    return e;
  };
  CHECK(err(0.4 / 50) / err(0.4 / 100) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("boundary contamination is reported") {
  const auto p = desk();
  const auto g = Grid1D::span(-2, 2, 201);
  const auto run = cn_propagate(packet(g, 0.0, 1.0, 0.0), Model::Free, p, 0.1, 1e-3);
  CHECK(run.boundary_warning);
}

TEST_CASE("energy expectation is conserved") {
  const auto p = desk();
  const auto g = Grid1D::span(-8, 8, 801);
  const auto run = cn_propagate(packet(g, 0.2, 0.8, 0.5), Model::Harmonic, p, 1.0, 1e-3);
  CHECK(run.trajectory.back().energy == doctest::Approx(run.trajectory.front().energy).epsilon(1e-9));
  CHECK(run.trajectory.front().energy > 0.0);
}

TEST_CASE("intertwining residual decays and fixes the sign") {
  const auto p = desk();
  for (Model m : {Model::Free, Model::Harmonic}) {
    double res[2];
    for (int lev = 0; lev < 2; ++lev) {
      const double dy = 0.02 / (1 << lev), h = 0.1 / (1 << lev);
      const auto g = Grid1D::span(-6, 6, static_cast<std::size_t>(std::lround(12 / dy)) + 1);
      const std::size_t n = static_cast<std::size_t>(std::lround(1 / h)) + 1;
      const Grid3D out{{Axis::span(-0.5, 0.5, n), Axis::span(-0.5, 0.5, n), Axis::span(-0.5, 0.5, n)}};
      IntertwiningOptions o;
      o.delta = 0.02 / (1 << lev);
      o.cn_dt = o.delta / 2;
      res[lev] = intertwining_check(packet(g, 0.3, 0.9, 0.7), m, p, out, 0.2, o);
      if (lev == 1) {
        o.sign = -kDynamicalSign;
        CHECK(intertwining_check(packet(g, 0.3, 0.9, 0.7), m, p, out, 0.2, o) > 0.1);
      }
    }
    CHECK(res[0] / res[1] == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("classical energy") {
  ModelParams p = desk();
  CHECK(energy_of({0, 0, 0}, Model::Free, p) == 0.0);
  CHECK(energy_of({1.3, -p.D * 1.3 * 1.3, 0}, Model::Free, p) == doctest::Approx(0.0));
  p.D = 0.0;
  CHECK(energy_of({0.4, 0.7, 0}, Model::Harmonic, p) == doctest::Approx((0.49 + p.a * p.a * 0.16) / p.m));
}

TEST_CASE("classical orbits follow the closed forms") {
  const auto p = desk();
  for (Model m : {Model::Free, Model::Harmonic}) {
    const PhasePoint x0{0.3, -0.2, 0.0};
    const double period = kPi * p.m / p.a;
    const auto orbit = classical_orbit(x0, m, p, 10 * period, 1e-3);
    double dev = 0.0, drift = 0.0;
    const double e0 = energy_of(x0, m, p);
    for (const auto& x : orbit) {
      const auto c = classical_closed_form(x0, m, p, x.t);
      dev = std::max({dev, std::abs(c.q - x.q), std::abs(c.p - x.p)});
      drift = std::max(drift, std::abs(energy_of(x, m, p) / e0 - 1.0));
      if (m == Model::Free) CHECK(x.p + p.D * x.q * x.q == doctest::Approx(x0.p + p.D * x0.q * x0.q));
    }
    CHECK(dev < 1e-8);
    CHECK(drift < 1e-9);
  }
}
