#include <doctest.h>

#include <random>

#include "cstgeo/error.hpp"
#include "cstgeo/group_reps.hpp"
#include "cstgeo/symalg/compiled.hpp"
#include "cstgeo/symalg/kernel.hpp"
#include "cstgeo/symalg/parse.hpp"

using namespace cstgeo;
using namespace cstgeo::symalg;

namespace {

Polynomial X(Var v) { return sym(v); }
const Polynomial I = Polynomial::imaginary_unit();

// Random polynomial of total degree <= 2 in x1, x2, x3 with small rational
// complex coefficients and an optional parameter factor.
Polynomial random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), pick(0, 3);
  static const Var params[] = {Var::D, Var::E, Var::h4, Var::pi};
  Polynomial out;
  for (int t = 0; t < 3; ++t) {
    Rational re(coef(rng), 1 + pick(rng));
    re.canonicalize();
    Polynomial term = CRational(re, Rational(coef(rng)));
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) term *= X(static_cast<Var>(pick(rng) % 3));
    if (pick(rng) == 0) term *= X(params[pick(rng)]);
    out += term;
  }
  return out;
}

DiffOp random_op(std::mt19937& rng) {
  std::uniform_int_distribution<int> ord(0, 2), axis(0, 2);
  DiffOp out;
  for (int t = 0; t < 3; ++t) {
    DerivIndex idx{};
    const int o = ord(rng);
    for (int k = 0; k < o; ++k) ++idx[axis(rng)];
    out += DiffOp::term(random_poly(rng), idx);
  }
  return out;
}

}  // namespace

TEST_CASE("rational canonical form") {
  Rational r(6, -4);
  r.canonicalize();
  CHECK(r == Rational(-3, 2));
  CHECK(r.get_den() > 0);
  CHECK(rational_from_decimal("0.1") == Rational(1, 10));
  CHECK(rational_from_decimal("-2.5e-3") == Rational(-1, 400));
  CHECK(rational_from_double(0.5) == Rational(1, 2));
}

TEST_CASE("polynomial addition") {
  CHECK((X(Var::x1) + (-X(Var::x1))).is_zero());
  CHECK(X(Var::x1) * X(Var::x2) + X(Var::x1) * X(Var::x2) == Polynomial(2) * X(Var::x1) * X(Var::x2));
  const Polynomial p = X(Var::D) * X(Var::x1).pow(2) + X(Var::E);
  CHECK(p.size() == 2);
}

TEST_CASE("polynomial multiplication") {
  const Polynomial x1 = X(Var::x1), E = X(Var::E);
  CHECK((x1 + I * E) * (x1 - I * E) == x1 * x1 + E * E);
  const Polynomial p = x1 * x1 + Polynomial(3) * E;
  CHECK(Polynomial(1) * p == p);
  CHECK((X(Var::D) * x1) * (X(Var::D) * x1) == X(Var::D).pow(2) * x1.pow(2));
}

TEST_CASE("polynomial evaluation") {
  Bindings b{{Var::x1, 2.0}, {Var::E, 3.0}};
  CHECK((X(Var::x1).pow(2) + X(Var::E)).eval(b) == std::complex<double>(7.0, 0.0));
  CHECK(Polynomial().eval({}) == std::complex<double>(0.0, 0.0));
  CHECK((I * X(Var::x1)).eval({{Var::x1, 1.0}}) == std::complex<double>(0.0, 1.0));
  CHECK(X(Var::pi).eval({}).real() == doctest::Approx(3.141592653589793));
  try {
    (X(Var::x1) + X(Var::D)).eval({{Var::x1, 1.0}});
    FAIL("expected unbound symbol");
  } catch (const UnboundSymbolError& e) {
    CHECK(e.symbol() == "D");
  }
}

TEST_CASE("laurent monomials") {
  const Polynomial inv = X(Var::E).inverse();
  CHECK(inv * X(Var::E) == Polynomial(1));
  CHECK_THROWS_AS(Polynomial().inverse(), DivisionByZeroError);
  CHECK_THROWS_AS((X(Var::E) + Polynomial(1)).inverse(), ValidationError);
  CHECK_THROWS_AS(X(Var::x1).inverse(), ValidationError);
}

TEST_CASE("composition basics") {
  const DiffOp d1 = DiffOp::partial(Var::x1), d2 = DiffOp::partial(Var::x2), d3 = DiffOp::partial(Var::x3);
  CHECK(compose(d1, DiffOp::multiplication(X(Var::x1))) == X(Var::x1) * d1 + DiffOp::identity());
  CHECK(compose(d3, d3) == DiffOp::partial(Var::x3, 2));
  const DiffOp lhs = compose(X(Var::x2) * d3, d2);
  const DiffOp rhs = compose(d2, X(Var::x2) * d3);
  CHECK(lhs - rhs == -d3);
}

TEST_CASE("commutator basics") {
  const DiffOp d1 = DiffOp::partial(Var::x1), d2 = DiffOp::partial(Var::x2);
  CHECK(commutator(d1, DiffOp::multiplication(X(Var::x1))) == DiffOp::identity());
  CHECK(commutator(d1, d2).is_zero());
  CHECK(commutator(derived_rep2(1), derived_rep2(2)) == derived_rep2(3));
}

TEST_CASE("operator order") {
  CHECK(structural_operator().order() == 2);
  CHECK(analytic_operator().order() == 1);
  CHECK(DiffOp::multiplication(Polynomial(5)).order() == 0);
  CHECK(DiffOp().order() == 0);
}

TEST_CASE("operator substitution") {
  CHECK((X(Var::D) * DiffOp::partial(Var::x2)).substitute({{Var::D, Polynomial(0)}}).is_zero());
  const DiffOp expected = -I * DiffOp::partial(Var::x1) + X(Var::E) * DiffOp::partial(Var::x3) -
                          DiffOp::multiplication(Polynomial(2) * X(Var::pi) * I * X(Var::h4) * X(Var::E) * X(Var::x1));
  CHECK(analytic_operator().substitute({{Var::D, Polynomial(0)}}) == expected);
  const DiffOp c = analytic_operator();
  CHECK(c.substitute({}) == c);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(12);
  const Bindings b{{Var::x1, 0.7}, {Var::x2, -1.3}, {Var::x3, 0.4}, {Var::D, 0.5}, {Var::E, 1.25}, {Var::h4, -0.8}};
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_poly(rng), q = random_poly(rng);
    const auto lhs = (p * q).eval(b), rhs = p.eval(b) * q.eval(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("composition is associative on random operators") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const DiffOp l = random_op(rng), m = random_op(rng), n = random_op(rng);
    CHECK(compose(compose(l, m), n) == compose(l, compose(m, n)));
    CHECK(compose(l, m).order() <= l.order() + m.order());
  }
}

TEST_CASE("jacobi identity on random operators") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const DiffOp a = random_op(rng), b = random_op(rng), c = random_op(rng);
    const DiffOp sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                       commutator(c, commutator(a, b));
    CHECK(sum.is_zero());
  }
}

TEST_CASE("normal form does not depend on construction order") {
  const DiffOp d1 = DiffOp::partial(Var::x1), d3 = DiffOp::partial(Var::x3);
  const Polynomial x1 = X(Var::x1);
  // ∂₁∘x1∘∂₃ built two ways
  const DiffOp a = compose(compose(d1, DiffOp::multiplication(x1)), d3);
  const DiffOp b = compose(d1, compose(DiffOp::multiplication(x1), d3));
  const DiffOp c = x1 * compose(d1, d3) + d3;
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("canonical text round trip") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const DiffOp op = random_op(rng);
    CHECK(parse_diffop(op.to_string()) == op);
    const Polynomial p = random_poly(rng);
    CHECK(parse_polynomial(p.to_string()) == p);
  }
  CHECK(parse_diffop("d1*x1") == X(Var::x1) * DiffOp::partial(Var::x1) + DiffOp::identity());
  CHECK_THROWS_AS(parse_polynomial("d1"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/(x1+1)"), ValidationError);
}

TEST_CASE("exponential kernel derivatives") {
  // K = exp(x1² ξ); ∂x1 K = 2 x1 ξ K
  const ExpKernel k(X(Var::x1).pow(2) * X(Var::xi));
  CHECK(k.relative_derivative({Var::x1}) == Polynomial(2) * X(Var::x1) * X(Var::xi));
  CHECK(k.relative_residual({{Polynomial(1), {Var::xi}}, {-X(Var::x1).pow(2), {}}}).is_zero());
}

TEST_CASE("compiled polynomial matches eval") {
  std::mt19937 rng(16);
  const Bindings b{{Var::D, 0.5}, {Var::E, 1.25}, {Var::h4, -0.8}};
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_poly(rng);
    Bindings full = b;
    full[Var::x1] = 0.3;
    full[Var::x2] = -0.6;
    full[Var::x3] = 1.1;
    const CompiledPoly c(p, b);
    CHECK(std::abs(c(0.3, -0.6, 1.1) - p.eval(full)) < 1e-12);
  }
}
