#pragma once

#include <string>
#include <vector>

#include "snc/module.hpp"

namespace snc {

// Dense univariate polynomial over Q, coefficient i of x^i, no trailing zeros.
using DensePoly = std::vector<Scalar>;

struct SmithInvariants {
  std::size_t rank = 0;
  std::vector<DensePoly> factors;  // monic, non-constant, each dividing the next

  std::string describe(const std::string& var = "x") const;
  friend bool operator==(const SmithInvariants&, const SmithInvariants&) = default;
};

// Smith form of a presentation over k[x] without relations. Works on dense
// coefficient arrays and never touches the Groebner machinery.
// Throws UnsupportedError for any other ring.
SmithInvariants smith_invariants(const PresentedModule& m);

std::string dense_to_string(const DensePoly& p, const std::string& var = "x");

}  // namespace snc
