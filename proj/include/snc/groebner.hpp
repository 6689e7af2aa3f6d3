#pragma once

#include <cstdint>
#include <vector>

#include "snc/field.hpp"
#include "snc/polynomial.hpp"

namespace snc {

// A term of a free-module element: coeff * mono * e_comp.
struct ModuleTerm {
  std::uint32_t comp = 0;
  Monomial mono;
  Scalar coeff;
};

// Term order on k[v]^r. Terms are compared by, in order:
//   1. the class of their component (higher class dominates),
//   2. the monomial restricted to `elim_mask` (degrevlex),
//   3. the component index (lower index dominates; position over term),
//   4. the monomial restricted to the remaining variables (`kind`).
// Class 1 over class 0 eliminates target components in kernel computations;
// a non-empty elim_mask eliminates variables (contraction to a subring).
struct ModuleOrder {
  std::vector<std::uint8_t> comp_class;  // missing entries count as class 0
  std::uint32_t elim_mask = 0;
  MonomialOrder::Kind kind = MonomialOrder::Kind::DegRevLex;

  std::uint8_t klass(std::uint32_t comp) const { return comp < comp_class.size() ? comp_class[comp] : 0; }
  int compare(const ModuleTerm& a, const ModuleTerm& b, std::size_t nvars) const;
  int compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b, std::size_t nvars) const;
};

// Sorted decreasing in the engine's order; no zero coefficients.
using ModuleVec = std::vector<ModuleTerm>;

// Buchberger's algorithm for submodules of k[v]^r with Gebauer-Moeller pair
// pruning and sugar selection. The computed basis is reduced and monic.
class ModuleGroebner {
 public:
  ModuleGroebner(std::size_t nvars, Field field, ModuleOrder order);

  const ModuleOrder& order() const { return order_; }
  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }

  void sort(ModuleVec& v) const;
  ModuleVec add(const ModuleVec& a, const ModuleVec& b, const Scalar& scale_b = 1) const;

  // Computes the reduced Groebner basis of the module generated by gens.
  void compute(const std::vector<ModuleVec>& gens);
  // Installs a basis already known to be a Groebner basis for this order.
  void assume_basis(std::vector<ModuleVec> basis);
  const std::vector<ModuleVec>& basis() const { return basis_; }

  // Full normal form with respect to the computed basis.
  ModuleVec reduce(const ModuleVec& v) const;
  bool contains(const ModuleVec& v) const { return reduce(v).empty(); }

 private:
  ModuleVec reduce_against(const ModuleVec& v, const std::vector<ModuleVec>& basis, bool tail) const;
  std::size_t nvars_;
  Field field_;
  ModuleOrder order_;
  std::vector<ModuleVec> basis_;
};

}  // namespace snc
