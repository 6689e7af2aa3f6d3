#include "snc/ring.hpp"

#include <algorithm>
#include <sstream>

#include "snc/errors.hpp"
#include "snc/parse.hpp"

namespace snc {

namespace {

ModuleOrder order_for(const PolyRing& ring) {
  ModuleOrder o;
  o.elim_mask = ring.order().elim_mask;
  o.kind = ring.order().kind;
  return o;
}

}  // namespace

ModuleVec to_module_vec(const Polynomial& p, std::uint32_t comp) {
  ModuleVec v;
  v.reserve(p.terms().size());
  for (const auto& t : p.terms()) v.push_back({comp, t.mono, t.coeff});
  return v;
}

Polynomial from_terms(const PolyRingPtr& ring, const ModuleVec& v, std::uint32_t comp) {
  std::vector<Term> terms;
  for (const auto& t : v)
    if (t.comp == comp) terms.push_back({t.mono, t.coeff});
  return Polynomial(ring, std::move(terms));
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const PolyRingPtr& ring) {
  ModuleGroebner engine(ring->nvars(), ring->field(), order_for(*ring));
  std::vector<ModuleVec> vs;
  for (const auto& g : gens) {
    if (g.ring() && g.ring()->nvars() != ring->nvars()) throw StructuralError("groebner_basis: ring mismatch");
    vs.push_back(to_module_vec(g, 0));
  }
  engine.compute(vs);
  std::vector<Polynomial> out;
  for (const auto& b : engine.basis()) out.push_back(from_terms(ring, b, 0));
  return out;
}

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return {};
  PolyRingPtr ring;
  for (const auto& g : gens)
    if (g.ring()) ring = g.ring();
  if (!ring) return {};
  for (const auto& g : gens)
    if (g.ring() && !g.ring()->same_as(*ring)) throw StructuralError("groebner_basis: generators live in different rings");
  return groebner_basis(gens, ring);
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis) {
  if (p.is_zero() || basis.empty()) return p;
  for (const auto& b : basis) {
    if (b.ring() && !b.ring()->same_as(*p.ring())) throw StructuralError("normal_form: ring mismatch");
  }
  ModuleGroebner engine(p.ring()->nvars(), p.ring()->field(), order_for(*p.ring()));
  std::vector<ModuleVec> vs;
  for (const auto& b : basis) vs.push_back(to_module_vec(b, 0));
  engine.assume_basis(std::move(vs));
  return from_terms(p.ring(), engine.reduce(to_module_vec(p, 0)), 0);
}

PresentedRing::PresentedRing(PolyRingPtr ambient, std::vector<Polynomial> relations, std::string label)
    : ambient_(std::move(ambient)), label_(std::move(label)) {
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    if (r.ring() && r.ring()->nvars() != ambient_->nvars()) throw StructuralError("relation from a different ring");
    relations_.push_back(r.rebased(ambient_));
  }
  basis_ = groebner_basis(relations_, ambient_);
}

std::shared_ptr<const PresentedRing> PresentedRing::polynomial_ring(std::vector<std::string> names, Field field,
                                                                   MonomialOrder order) {
  auto amb = std::make_shared<PolyRing>(std::move(names), field, order);
  return std::make_shared<PresentedRing>(amb, std::vector<Polynomial>{});
}

bool PresentedRing::is_zero_ring() const {
  return basis_.size() == 1 && basis_.front().is_constant() && !basis_.front().is_zero();
}

Polynomial PresentedRing::normal_form(const Polynomial& p) const {
  Polynomial q = p.ring() == ambient_ ? p : p.rebased(ambient_);
  return snc::normal_form(q, basis_);
}

Polynomial PresentedRing::var(const std::string& name) const {
  int i = ambient_->index_of(name);
  if (i < 0) throw StructuralError("unknown variable '" + name + "'");
  return var(static_cast<std::size_t>(i));
}

bool PresentedRing::same_presentation(const PresentedRing& other) const {
  if (vars() != other.vars() || !(field() == other.field())) return false;
  if (basis_.size() != other.basis_.size()) return false;
  // Reduced bases are unique per order; compare via mutual reduction so that
  // rings built with different term orders still compare equal.
  for (const auto& b : other.basis_)
    if (!is_zero(b.rebased(ambient_))) return false;
  for (const auto& b : basis_)
    if (!other.is_zero(b.rebased(other.ambient_))) return false;
  return true;
}

std::string PresentedRing::describe() const {
  std::ostringstream os;
  os << field().describe() << "[";
  for (std::size_t i = 0; i < vars().size(); ++i) os << (i ? "," : "") << vars()[i];
  os << "]";
  if (!relations_.empty()) {
    os << "/(";
    for (std::size_t i = 0; i < relations_.size(); ++i) os << (i ? ", " : "") << relations_[i].to_string();
    os << ")";
  }
  return os.str();
}

RingPtr make_ring(const std::vector<std::string>& names, Field field, const std::vector<std::string>& relations,
                  MonomialOrder order, std::string label) {
  auto amb = std::make_shared<PolyRing>(names, field, order);
  std::vector<Polynomial> rels;
  for (const auto& r : relations) rels.push_back(parse_polynomial(r, amb));
  return std::make_shared<PresentedRing>(amb, std::move(rels), std::move(label));
}

RingMorphism::RingMorphism(RingPtr source, RingPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->nvars()) throw StructuralError("ring morphism needs one image per source variable");
  for (auto& img : images_) img = target_->normal_form(img.ring() ? img : target_->zero());
  for (const auto& rel : source_->relations()) {
    if (!target_->is_zero(rel.substitute(images_, target_->ambient()))) {
      throw StructuralError("ring morphism is ill-defined: relation " + rel.to_string() + " does not map to 0");
    }
  }
}

RingMorphism RingMorphism::identity(const RingPtr& ring) {
  std::vector<Polynomial> imgs;
  for (std::size_t i = 0; i < ring->nvars(); ++i) imgs.push_back(ring->var(i));
  return RingMorphism(ring, ring, std::move(imgs));
}

RingMorphism RingMorphism::by_names(const RingPtr& source, const RingPtr& target) {
  std::vector<Polynomial> imgs;
  for (const auto& name : source->vars()) imgs.push_back(target->var(name));
  return RingMorphism(source, target, std::move(imgs));
}

Polynomial RingMorphism::apply(const Polynomial& p) const {
  Polynomial q = p.ring() ? p : source_->zero();
  return target_->normal_form(q.substitute(images_, target_->ambient()));
}

RingMorphism RingMorphism::then(const RingMorphism& next) const {
  if (next.source_ != target_ && !next.source_->same_presentation(*target_)) {
    throw StructuralError("cannot compose ring morphisms: codomain/domain mismatch");
  }
  std::vector<Polynomial> imgs;
  for (const auto& img : images_) imgs.push_back(next.apply(img.rebased(next.source_->ambient())));
  return RingMorphism(source_, next.target_, std::move(imgs));
}

bool RingMorphism::equals(const RingMorphism& other) const {
  if (images_.size() != other.images_.size()) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!target_->equal(images_[i], other.images_[i].rebased(target_->ambient()))) return false;
  return true;
}

}  // namespace snc
