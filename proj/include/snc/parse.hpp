#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "snc/polynomial.hpp"

namespace snc {

using SignedExponents = std::array<int, kMaxVars>;

// Polynomial text with possibly negative exponents, e.g. "x^-2 + 1/2*y".
struct LaurentPolynomial {
  std::map<SignedExponents, Scalar> terms;

  int min_exponent(std::size_t var) const;
  bool is_zero() const { return terms.empty(); }
};

// Infix grammar: sums of products of rational constants, variables,
// parenthesised expressions and non-negative integer powers. Negative powers
// are accepted only on monomials. Errors carry the given line number and the
// 1-based column of the offending character.
LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& names, const Field& field,
                                int line = 1, int column_offset = 0);

Polynomial parse_polynomial(std::string_view text, const PolyRingPtr& ring, int line = 1, int column_offset = 0);

// Converts a Laurent polynomial with non-negative exponents.
Polynomial to_polynomial(const LaurentPolynomial& lp, const PolyRingPtr& ring);

}  // namespace snc
