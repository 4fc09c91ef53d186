#include "cstgeo/symalg/diffop.hpp"

#include <algorithm>

#include "cstgeo/error.hpp"

namespace cstgeo::symalg {

namespace {

constexpr std::array<std::string_view, kNumCoordinates> kMarkers = {"d1", "d2", "d3",
                                                                    "dy", "du1", "du2"};

long binomial(unsigned n, unsigned k) {
  long r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * static_cast<long>(n - k + j) / static_cast<long>(j);
  return r;
}

// Applies the partial derivatives of a multi-index to a polynomial.
Polynomial differentiate(Polynomial p, const DerivIndex& idx) {
  for (std::size_t slot = 0; slot < kNumCoordinates; ++slot) {
    for (unsigned k = 0; k < idx[slot] && !p.is_zero(); ++k) {
      p = p.derivative(kCoordinates[slot]);
    }
  }
  return p;
}

}  // namespace

unsigned total_order(const DerivIndex& idx) {
  unsigned sum = 0;
  for (auto k : idx) sum += k;
  return sum;
}

DerivIndex deriv_index(Var coordinate, unsigned order) {
  auto slot = coordinate_slot(coordinate);
  if (!slot) throw ValidationError("cannot differentiate in " + std::string(name(coordinate)));
  DerivIndex idx{};
  idx[*slot] = static_cast<std::uint8_t>(order);
  return idx;
}

bool DerivOrder::operator()(const DerivIndex& lhs, const DerivIndex& rhs) const {
  unsigned ol = total_order(lhs);
  unsigned orr = total_order(rhs);
  if (ol != orr) return ol > orr;
  return lhs > rhs;
}

DiffOp DiffOp::identity() { return multiplication(Polynomial(1)); }

DiffOp DiffOp::multiplication(const Polynomial& coefficient) {
  return term(coefficient, DerivIndex{});
}

DiffOp DiffOp::partial(Var coordinate, unsigned order) {
  return term(Polynomial(1), deriv_index(coordinate, order));
}

DiffOp DiffOp::term(const Polynomial& coefficient, const DerivIndex& idx) {
  DiffOp op;
  op.add_term(idx, coefficient);
  return op;
}

void DiffOp::add_term(const DerivIndex& idx, const Polynomial& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(idx, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial DiffOp::coefficient(const DerivIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Polynomial() : it->second;
}

Polynomial DiffOp::coefficient(Var coordinate, unsigned order) const {
  return coefficient(deriv_index(coordinate, order));
}

unsigned DiffOp::order() const {
  unsigned best = 0;
  for (const auto& [idx, c] : terms_) best = std::max(best, total_order(idx));
  return best;
}

DiffOp DiffOp::part_of_order(unsigned k) const {
  DiffOp out;
  for (const auto& [idx, c] : terms_) {
    if (total_order(idx) == k) out.terms_.emplace(idx, c);
  }
  return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

DiffOp operator-(const DiffOp& a) {
  DiffOp out;
  for (const auto& [idx, c] : a.terms_) out.terms_.emplace(idx, -c);
  return out;
}

DiffOp operator*(const Polynomial& p, const DiffOp& op) {
  DiffOp out;
  if (p.is_zero()) return out;
  for (const auto& [idx, c] : op.terms_) out.add_term(idx, p * c);
  return out;
}

DiffOp DiffOp::substitute(const std::map<Var, Polynomial>& replacements) const {
  DiffOp out;
  for (const auto& [idx, c] : terms_) out.add_term(idx, c.substitute(replacements));
  return out;
}

Polynomial DiffOp::apply(const Polynomial& f) const {
  Polynomial out;
  for (const auto& [idx, c] : terms_) out += c * differentiate(f, idx);
  return out;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (std::size_t slot = 0; slot < kNumCoordinates; ++slot) {
      if (idx[slot] == 0) continue;
      out += "*";
      out += kMarkers[slot];
      if (idx[slot] != 1) out += "^" + std::to_string(idx[slot]);
    }
  }
  return out;
}

// c ∂^α ∘ d ∂^β = c Σ_{γ≤α} C(α,γ) (∂^γ d) ∂^{α−γ+β}
DiffOp compose(const DiffOp& lhs, const DiffOp& rhs) {
  DiffOp out;
  for (const auto& [alpha, c] : lhs.terms()) {
    for (const auto& [beta, d] : rhs.terms()) {
      DerivIndex gamma{};
      while (true) {
        long weight = 1;
        for (std::size_t k = 0; k < kNumCoordinates; ++k) weight *= binomial(alpha[k], gamma[k]);
        Polynomial dd = differentiate(d, gamma);
        if (!dd.is_zero()) {
          DerivIndex rest{};
          for (std::size_t k = 0; k < kNumCoordinates; ++k) {
            rest[k] = static_cast<std::uint8_t>(alpha[k] - gamma[k] + beta[k]);
          }
          out += DiffOp::term(Polynomial(weight) * c * dd, rest);
        }
        // next gamma in the box [0, alpha]
        std::size_t k = 0;
        while (k < kNumCoordinates) {
          if (gamma[k] < alpha[k]) {
            ++gamma[k];
            break;
          }
          gamma[k] = 0;
          ++k;
        }
        if (k == kNumCoordinates) break;
      }
    }
  }
  return out;
}

DiffOp commutator(const DiffOp& lhs, const DiffOp& rhs) {
  return compose(lhs, rhs) - compose(rhs, lhs);
}

}  // namespace cstgeo::symalg
