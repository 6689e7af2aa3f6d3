#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snc/ring.hpp"

namespace snc {

using PolyVec = std::vector<Polynomial>;

// Dense matrix of ring elements, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const RingPtr& ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const RingPtr& ring, std::size_t n);
  static Matrix from_columns(const RingPtr& ring, std::size_t rows, const std::vector<PolyVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Polynomial& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  PolyVec column(std::size_t c) const;
  std::vector<PolyVec> columns() const;

  Matrix operator*(const Matrix& o) const;
  PolyVec apply(const PolyVec& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

// Cokernel of `presentation`: n_gens generators, one relation per column.
class PresentedModule {
 public:
  PresentedModule() = default;
  PresentedModule(RingPtr ring, std::size_t n_gens, const std::vector<PolyVec>& relations);
  PresentedModule(RingPtr ring, const Matrix& presentation);

  static PresentedModule free(const RingPtr& ring, std::size_t rank);
  static PresentedModule zero(const RingPtr& ring) { return free(ring, 0); }

  const RingPtr& ring() const { return ring_; }
  std::size_t n_gens() const { return n_gens_; }
  const std::vector<PolyVec>& relations() const { return relations_; }
  Matrix presentation() const { return Matrix::from_columns(ring_, n_gens_, relations_); }

  PolyVec generator(std::size_t i) const;
  PolyVec zero_vector() const;
  std::string describe() const;

 private:
  RingPtr ring_;
  std::size_t n_gens_ = 0;
  std::vector<PolyVec> relations_;  // normal forms, zero columns removed
};

// Homomorphism given on generators: column j is the image of source gen j.
class ModuleMap {
 public:
  // Throws StructuralError when some source relation is not sent into the
  // target's relation module.
  ModuleMap(PresentedModule source, PresentedModule target, Matrix matrix);

  static ModuleMap identity(const PresentedModule& m);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  PresentedModule source_;
  PresentedModule target_;
  Matrix matrix_;
};

// Groebner basis of a submodule of A^rank (A's relations included), for
// membership and normal forms.
class SubmoduleBasis {
 public:
  SubmoduleBasis(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens, std::uint32_t elim_mask = 0);

  bool contains(const PolyVec& v) const;
  PolyVec reduce(const PolyVec& v) const;
  std::vector<PolyVec> basis() const;

 private:
  RingPtr ring_;
  std::size_t rank_;
  ModuleGroebner engine_;
};

ModuleVec to_module_vec(const PolyVec& v, std::uint32_t offset = 0);
PolyVec from_module_vec(const PolyRingPtr& ring, const ModuleVec& v, std::size_t rank, std::uint32_t offset = 0);

// Generators (in A^s) of { c : sum_j c_j images_j lies in span(target_relations) }
// over A = ring. With a non-zero elim_mask the result is contracted to vectors
// not involving the masked variables.
std::vector<PolyVec> kernel_generators(const RingPtr& ring, std::size_t target_rank, const std::vector<PolyVec>& images,
                                       const std::vector<PolyVec>& target_relations, std::uint32_t elim_mask = 0);

// (span(gens) + I * A^rank) intersected with vectors free of the masked variables.
std::vector<PolyVec> contract(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens,
                              std::uint32_t elim_mask);

// Saturation span(gens) : g^infinity inside A^rank.
std::vector<PolyVec> saturate(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens,
                              const Polynomial& g);

// Coefficients c with u = sum c_j generators_j modulo span(relations), if any.
std::optional<PolyVec> lift(const RingPtr& ring, const PolyVec& u, const std::vector<PolyVec>& generators,
                            const std::vector<PolyVec>& relations);

struct KernelResult {
  PresentedModule kernel;
  ModuleMap inclusion;
};

KernelResult syzygy_kernel(const ModuleMap& f);
PresentedModule cokernel(const ModuleMap& f);
PresentedModule base_change(const PresentedModule& m, const RingMorphism& phi);
ModuleMap base_change(const ModuleMap& f, const RingMorphism& phi);
PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

bool is_zero_module(const PresentedModule& m);
bool is_zero_element(const PresentedModule& m, const PolyVec& v);
bool is_module_iso(const ModuleMap& f);

// Drops generators that are redundant modulo the others and re-presents.
PresentedModule prune(const PresentedModule& m);

}  // namespace snc
