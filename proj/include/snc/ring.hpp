#pragma once

#include <memory>
#include <string>
#include <vector>

#include "snc/groebner.hpp"
#include "snc/polynomial.hpp"

namespace snc {

// Reduced Groebner basis of the ideal generated by gens, in the order of
// their common ring. Empty input gives the empty basis.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens);
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const PolyRingPtr& ring);

// Remainder of p on division by a Groebner basis (in p's ring order).
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis);

ModuleVec to_module_vec(const Polynomial& p, std::uint32_t comp);
Polynomial from_terms(const PolyRingPtr& ring, const ModuleVec& v, std::uint32_t comp);

// k[v_1..v_n] / (relations). The relation Groebner basis is computed once at
// construction; the object is immutable afterwards.
class PresentedRing {
 public:
  PresentedRing(PolyRingPtr ambient, std::vector<Polynomial> relations, std::string label = {});

  static std::shared_ptr<const PresentedRing> polynomial_ring(std::vector<std::string> names, Field field,
                                                             MonomialOrder order = {});

  const PolyRingPtr& ambient() const { return ambient_; }
  const std::vector<std::string>& vars() const { return ambient_->names(); }
  std::size_t nvars() const { return ambient_->nvars(); }
  const Field& field() const { return ambient_->field(); }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const std::vector<Polynomial>& relation_basis() const { return basis_; }
  const std::string& label() const { return label_; }

  bool is_zero_ring() const;
  bool has_relations() const { return !basis_.empty(); }

  Polynomial normal_form(const Polynomial& p) const;
  bool is_zero(const Polynomial& p) const { return normal_form(p).is_zero(); }
  bool equal(const Polynomial& a, const Polynomial& b) const { return is_zero(a - b); }

  Polynomial zero() const { return Polynomial(ambient_); }
  Polynomial one() const { return Polynomial::constant(ambient_, 1); }
  Polynomial var(std::size_t i) const { return Polynomial::variable(ambient_, i); }
  Polynomial var(const std::string& name) const;

  // Same variables and the same relation ideal.
  bool same_presentation(const PresentedRing& other) const;
  std::string describe() const;

 private:
  PolyRingPtr ambient_;
  std::vector<Polynomial> relations_;
  std::vector<Polynomial> basis_;
  std::string label_;
};

using RingPtr = std::shared_ptr<const PresentedRing>;

RingPtr make_ring(const std::vector<std::string>& names, Field field, const std::vector<std::string>& relations = {},
                  MonomialOrder order = {}, std::string label = {});

// k-algebra morphism given by the images of the source variables.
class RingMorphism {
 public:
  // Throws StructuralError if some source relation does not map to zero.
  RingMorphism(RingPtr source, RingPtr target, std::vector<Polynomial> images);

  static RingMorphism identity(const RingPtr& ring);
  // Variables map to the equally-named variables of the target.
  static RingMorphism by_names(const RingPtr& source, const RingPtr& target);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Polynomial apply(const Polynomial& p) const;
  RingMorphism then(const RingMorphism& next) const;  // next o this
  bool equals(const RingMorphism& other) const;

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<Polynomial> images_;
};

}  // namespace snc
