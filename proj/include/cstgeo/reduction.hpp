#pragma once

#include <array>
#include <string>
#include <vector>

#include "cstgeo/error.hpp"
#include "cstgeo/group_reps.hpp"

namespace cstgeo {

// Coefficients a_jk of Σ a_jk X_j X_k, 0-based: a[0][1] is a12.
struct QuadraticForm {
  std::array<std::array<symalg::Polynomial, 3>, 3> a;

  static QuadraticForm zero() { return {}; }
  // Entries a11 … a33 as formal symbols.
  static QuadraticForm symbolic();
};

struct ConstraintViolation {
  std::string constraint;         // e.g. "a22 = D^2*a11"
  symalg::Polynomial residual;    // lhs − rhs
};

struct Classification {
  bool geometrisable = true;
  std::vector<ConstraintViolation> violations;
};

Classification classify(const QuadraticForm& q, const symalg::Polynomial& D);

// The entries not fixed by the constraints.
struct FreeCoefficients {
  symalg::Polynomial a11, a21, a13, a31, a32, a33;
};

// Fills a12, a22, a23 so that classify succeeds.
QuadraticForm complete_form(const FreeCoefficients& free, const symalg::Polynomial& D);

struct ReductionCoeffs {
  symalg::Polynomial A, B, C, K, F;
};

// Throws DivisionByZeroError when E is the zero polynomial.
ReductionCoeffs reduction_coeffs(const QuadraticForm& q, const SymbolicParams& p = {});

// Σ a_jk G_j∘G_k for the given generator realisation.
symalg::DiffOp quadratic_form_op(const QuadraticForm& q, const std::array<symalg::DiffOp, 3>& generators);
// Same with G_j = dπ₂(X_j).
symalg::DiffOp quadratic_form_op(const QuadraticForm& q, const SymbolicParams& p = {});

class ClassificationFailedError : public ValidationError {
 public:
  explicit ClassificationFailedError(std::vector<ConstraintViolation> violations);
  const std::vector<ConstraintViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<ConstraintViolation> violations_;
};

class OrderNotReducedError : public NumericalContractError {
 public:
  OrderNotReducedError(symalg::DiffOp residue);
  // The surviving second-order part.
  const symalg::DiffOp& residue() const noexcept { return residue_; }

 private:
  symalg::DiffOp residue_;
};

class NotAPushforwardError : public ValidationError {
 public:
  NotAPushforwardError(const std::string& slot, symalg::Polynomial coefficient);
  const symalg::Polynomial& coefficient() const noexcept { return coefficient_; }

 private:
  symalg::Polynomial coefficient_;
};

struct BuildOptions {
  bool check_classification = true;
  bool check_order = true;
};

// H_r = Q + M_C∘𝒞 + M_S∘𝒮, where M_C = A∂₁ + B∂₂ + C∂₃ + K and M_S = F.
struct ReducedHamiltonian {
  symalg::DiffOp hr;
  symalg::DiffOp quadratic;
  ReductionCoeffs coeffs;
  symalg::DiffOp analytic_multiplier;
  symalg::DiffOp structural_multiplier;
};

ReducedHamiltonian build_Hr(const QuadraticForm& q, const SymbolicParams& p = {},
                            const BuildOptions& options = {});

// Rewrites a first-order operator on (x1,x2,x3), conjugated by the envelope,
// as an operator in the analytic coordinates (u1, u2).
symalg::DiffOp pushforward_to_analytic(const symalg::DiffOp& h, const SymbolicParams& p = {});

enum class Model { Free, Harmonic };

Model model_from_name(const std::string& name);
std::string model_name(Model model);

// Free: (1/m)[[1, D, 0], [D, D², 0], [0, 0, 0]]. Harmonic adds a33 = a²/m.
QuadraticForm model_form(Model model, const SymbolicParams& p = {});

}  // namespace cstgeo
