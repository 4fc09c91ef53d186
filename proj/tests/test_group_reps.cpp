#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cstgeo/cst_numeric.hpp"
#include "cstgeo/group_reps.hpp"
#include "cstgeo/symalg/compiled.hpp"

using namespace cstgeo;
using namespace cstgeo::symalg;

namespace {

constexpr double kPi = std::numbers::pi;
const Polynomial I = Polynomial::imaginary_unit();

ModelParams desk() { return {0.5, 1.0, 0.2, 0.25, 1.0, 0.5}; }

WaveFunction1D bump(const Grid1D& g) {
  WaveFunction1D f{g, std::vector<cplx>(g.n)};
  for (std::size_t k = 0; k < g.n; ++k) {
    const double y = g.at(k);
    f.values[k] = std::exp(cplx(-0.8 * (y - 0.4) * (y - 0.4), 1.3 * y));
  }
  return f;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

TEST_CASE("group identity and inverse") {
  const GroupElement g{0.3, -1.2, 0.7, 2.1};
  const auto e = group_multiply(g, GroupElement{});
  CHECK(e.x1 == g.x1);
  CHECK(e.x4 == g.x4);
  const auto id = group_multiply(g, group_inverse(g));
  CHECK(std::abs(id.x1) + std::abs(id.x2) + std::abs(id.x3) + std::abs(id.x4) < 1e-14);
  const auto id2 = group_multiply(group_inverse(g), g);
  CHECK(std::abs(id2.x1) + std::abs(id2.x2) + std::abs(id2.x3) + std::abs(id2.x4) < 1e-14);
}

TEST_CASE("group law is non-commutative in the expected coordinates") {
  const double a = 0.6, b = -1.1;
  const auto gh = group_multiply({a, 0, 0, 0}, {0, b, 0, 0});
  const auto hg = group_multiply({0, b, 0, 0}, {a, 0, 0, 0});
  CHECK(gh.x1 == hg.x1);
  CHECK(gh.x2 == hg.x2);
  CHECK(gh.x3 - hg.x3 == doctest::Approx(a * b));
  CHECK(gh.x4 - hg.x4 == doctest::Approx(0.5 * a * a * b));
}

TEST_CASE("rep1 identity, centre and unitarity") {
  const auto p = desk();
  const auto g = Grid1D::span(-8, 8, 321);
  const auto f = bump(g);
  CHECK(max_diff(rep1_apply({}, f, p).values, f.values) == 0.0);
  const double x4 = 0.37;
  const auto c = rep1_apply({0, 0, 0, x4}, f, p);
  const cplx phase = std::polar(1.0, 2 * kPi * p.h4 * x4);
  for (std::size_t k = 0; k < g.n; ++k) CHECK(std::abs(c.values[k] - phase * f.values[k]) < 1e-14);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> shift(-20, 20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement e{shift(rng) * g.step, u(rng), u(rng), u(rng)};
    CHECK(std::abs(rep1_apply(e, f, p).norm() - f.norm()) < 1e-12);
  }
}

TEST_CASE("rep1 is a homomorphism on node-aligned shifts") {
  const auto p = desk();
  const auto g = Grid1D::span(-10, 10, 401);
  const auto f = bump(g);
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> shift(-20, 20);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement a{shift(rng) * g.step, u(rng), u(rng), u(rng)};
    const GroupElement b{shift(rng) * g.step, u(rng), u(rng), u(rng)};
    const auto lhs = rep1_apply(a, rep1_apply(b, f, p), p);
    const auto rhs = rep1_apply(group_multiply(a, b), f, p);
    CHECK(max_diff(lhs.values, rhs.values) < 1e-10);
  }
}

TEST_CASE("rep2 identity, centre and unitarity") {
  const auto p = desk();
  Grid3D g{{Axis::span(-3, 3, 31), Axis::span(-3, 3, 31), Axis::span(-3, 3, 31)}};
  Field3D f(g);
  for (std::size_t i2 = 0; i2 < 31; ++i2)
    for (std::size_t i1 = 0; i1 < 31; ++i1)
      for (std::size_t i3 = 0; i3 < 31; ++i3) {
        const double x1 = g.axes[0].at(i1), x2 = g.axes[1].at(i2), x3 = g.axes[2].at(i3);
        f.at(i1, i2, i3) = std::exp(cplx(-(x1 * x1 + x2 * x2 + x3 * x3), 0.3 * x1 * x3));
      }
  CHECK(max_diff(rep2_apply({}, f, p).values, f.values) == 0.0);
  const auto c = rep2_apply({0, 0, 0, 0.8}, f, p);
  const cplx phase = std::polar(1.0, 2 * kPi * p.h4 * 0.8);
  CHECK(max_diff(c.values, [&] {
          auto v = f.values;
          for (auto& z : v) z *= phase;
          return v;
        }()) < 1e-14);
  // node-aligned: x1 and x2 shifts on nodes, x3 shift x3 + x1 x2' − x1 x2 on nodes too
  const double h = g.axes[0].step;
  const GroupElement e{h, 2 * h, 3 * h, 0.4};
  CHECK(std::abs(rep2_apply(e, f, p).norm() - f.norm()) < 1e-12);
}

TEST_CASE("rep2 generators match the derived representation") {
  const auto p = desk();
  const std::size_t n = 41;
  Grid3D g{{Axis{-4.0, 0.2, n}, Axis{-4.0, 0.2, n}, Axis{-4.0, 0.2, n}}};
  Field3D f(g);
  auto F = [](double x1, double x2, double x3) { return std::exp(-2.0 * (x1 * x1 + x2 * x2 + x3 * x3)); };
  for (std::size_t i2 = 0; i2 < n; ++i2)
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i3 = 0; i3 < n; ++i3) f.at(i1, i2, i3) = F(g.axes[0].at(i1), g.axes[1].at(i2), g.axes[2].at(i3));
  const double eps = 1e-4;
  for (int j = 1; j <= 4; ++j) {
    GroupElement plus{}, minus{};
    double* pc[] = {&plus.x1, &plus.x2, &plus.x3, &plus.x4};
    double* mc[] = {&minus.x1, &minus.x2, &minus.x3, &minus.x4};
    *pc[j - 1] = eps;
    *mc[j - 1] = -eps;
    const auto fp = rep2_apply(plus, f, p), fm = rep2_apply(minus, f, p);
    const auto op = compile(derived_rep2(j, SymbolicParams::from(p)), p.bindings());
    double worst = 0.0;
    for (std::size_t i2 = 10; i2 < 31; ++i2)
      for (std::size_t i1 = 10; i1 < 31; ++i1)
        for (std::size_t i3 = 10; i3 < 31; ++i3) {
          const double x1 = g.axes[0].at(i1), x2 = g.axes[1].at(i2), x3 = g.axes[2].at(i3);
          const cplx fd = (fp.at(i1, i2, i3) - fm.at(i1, i2, i3)) / (2 * eps);
          // exact action on the Gaussian: ∂_k F = −4 x_k F
          const std::array<double, 3> grad = {-4 * x1, -4 * x2, -4 * x3};
          cplx exact(0.0, 0.0);
          for (const auto& t : op) {
            cplx d = F(x1, x2, x3);
            for (int a = 0; a < 3; ++a)
              if (t.derivative[a]) d *= grad[a];
            exact += t.coefficient(x1, x2, x3) * d;
          }
          worst = std::max(worst, std::abs(fd - exact));
        }
    CHECK_MESSAGE(worst < 1e-6, "generator ", j, " error ", worst);
  }
}

TEST_CASE("derived representation one") {
  const SymbolicParams s;
  const Polynomial y = sym(Var::y), pi = sym(Var::pi);
  const DiffOp lhs = I * derived_rep1(1) + I * s.D * derived_rep1(2) + s.E * derived_rep1(3);
  const DiffOp rhs = -I * DiffOp::partial(Var::y) +
                     DiffOp::multiplication(-pi * s.h4 * s.D * y * y -
                                            Polynomial(2) * pi * I * s.E * s.h4 * y -
                                            Polynomial(2) * pi * s.h2 * s.D);
  CHECK(lhs == rhs);
}

TEST_CASE("commutators reproduce the structure constants in both representations") {
  for (int which = 1; which <= 2; ++which) {
    auto d = [&](int j) { return which == 1 ? derived_rep1(j) : derived_rep2(j); };
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k) {
        const DiffOp c = commutator(d(j), d(k));
        if (j == 1 && k == 2) CHECK(c == d(3));
        else if (j == 2 && k == 1) CHECK(c == -d(3));
        else if (j == 1 && k == 3) CHECK(c == d(4));
        else if (j == 3 && k == 1) CHECK(c == -d(4));
        else CHECK(c.is_zero());
      }
  }
}

TEST_CASE("casimir acts as a scalar and yields the structural condition") {
  const SymbolicParams s;
  const Polynomial scalar = Polynomial(8) * sym(Var::pi).pow(2) * s.h2 * s.h4;
  CHECK(casimir_rep1() == DiffOp::multiplication(scalar));
  CHECK(casimir_rep2() - DiffOp::multiplication(scalar) == structural_operator());
  const DiffOp expected = DiffOp::partial(Var::x3, 2) +
                          Polynomial(4) * sym(Var::pi) * I * s.h4 * DiffOp::partial(Var::x2) -
                          DiffOp::multiplication(scalar);
  CHECK(structural_operator() == expected);
  const DiffOp structural = structural_operator();
  for (const auto& [idx, c] : structural.terms()) {
    (void)idx;
    CHECK_FALSE(c.depends_on(Var::D));
    CHECK_FALSE(c.depends_on(Var::E));
  }
}

TEST_CASE("analytic condition") {
  const DiffOp c = analytic_operator();
  CHECK(c.order() == 1);
  CHECK(c.to_string() == "(-i)*d1 + (-i*D)*d2 + (-i*x1*D + E)*d3 + (-x1^2*D*h4*pi - 2*i*x1*E*h4*pi)");
}
