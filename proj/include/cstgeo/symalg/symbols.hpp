#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace cstgeo::symalg {

// Every symbol the exact layer knows about. The enumeration order is the
// variable order used by the graded-lexicographic term order.
enum class Var : std::uint8_t {
  // grid coordinates (exponents stay non-negative, derivatives allowed)
  x1, x2, x3, y, u1, u2,
  // auxiliary variables of the kernel equations
  xi, eta, s,
  // model parameters
  D, E, h2, h4, m, a,
  a11, a12, a13, a21, a22, a23, a31, a32, a33,
  pi,
};

inline constexpr std::size_t kNumVars = static_cast<std::size_t>(Var::pi) + 1;

// Variables a DiffOp may differentiate in.
inline constexpr std::array<Var, 6> kCoordinates = {Var::x1, Var::x2, Var::x3,
                                                    Var::y,  Var::u1, Var::u2};
inline constexpr std::size_t kNumCoordinates = kCoordinates.size();

constexpr std::size_t index(Var v) { return static_cast<std::size_t>(v); }

constexpr bool is_coordinate(Var v) { return index(v) <= index(Var::u2); }

std::string_view name(Var v);
std::optional<Var> var_from_name(std::string_view name);

// Position of a coordinate inside a derivative multi-index.
std::optional<std::size_t> coordinate_slot(Var v);

}  // namespace cstgeo::symalg
