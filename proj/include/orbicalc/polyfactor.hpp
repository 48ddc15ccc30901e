#pragma once

// Factorization of squarefree integer polynomials over Q (modular factoring,
// Hensel lifting, recombination by trial division).

#include "orbicalc/numeric.hpp"

#include <optional>
#include <vector>

namespace orbicalc {

using ZPoly = std::vector<Integer>;  // low degree first, no trailing zeros

ZPoly trim(ZPoly f);
int degree(const ZPoly& f);  // -1 for zero
ZPoly poly_mul(const ZPoly& a, const ZPoly& b);
ZPoly primitive_part(const ZPoly& f);  // positive leading coefficient
std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b);  // a / b if it lies in Z[x]
// integer polynomial with the same roots as a rational one
ZPoly clear_denominators(const std::vector<Rational>& f);

// Primitive irreducible factors with positive leading coefficient, sorted by (degree, coefficients).
// Throws std::invalid_argument for the zero polynomial or a non-squarefree input.
std::vector<ZPoly> factor_squarefree(const ZPoly& f);

}  // namespace orbicalc
