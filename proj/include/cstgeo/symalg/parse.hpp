#pragma once

#include <string_view>

#include "cstgeo/symalg/diffop.hpp"

namespace cstgeo::symalg {

// Reads the canonical text form produced by to_string (and any equivalent
// arithmetic on it): sums, products, integer powers, division by invertible
// monomials, numbers, `i`, symbol names and derivative markers d1 d2 d3 dy
// du1 du2. `*` between operators is composition, so "d1*x1" means ∂₁∘x₁.
DiffOp parse_diffop(std::string_view text);

// As parse_diffop, but rejects derivative markers.
Polynomial parse_polynomial(std::string_view text);

}  // namespace cstgeo::symalg
