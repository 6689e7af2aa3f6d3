#pragma once

#include <climits>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "snc/parse.hpp"
#include "snc/ring.hpp"

namespace snc {

// Bit i set <=> component f_{i+1} vanishes on the stratum.
using Stratum = std::uint32_t;

inline int stratum_size(Stratum t) { return __builtin_popcount(t); }
inline bool contains(Stratum big, Stratum small) { return (big & small) == small; }

// Strict normal crossings divisor f_1 * ... * f_n = 0 where every f_i is a
// coordinate variable of a polynomial ring without relations.
class DivisorSpec {
 public:
  DivisorSpec(RingPtr ring, std::vector<std::string> components);

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return components_.size(); }
  const std::vector<std::string>& components() const { return components_; }
  std::size_t var(std::size_t i) const { return vars_[i]; }
  Stratum full() const { return (Stratum{1} << n()) - 1; }
  Polynomial component(std::size_t i) const { return ring_->var(vars_[i]); }
  // Product of the components in `t`, in the ambient ring `amb` (which extends R).
  Polynomial product(Stratum t, const PolyRingPtr& amb) const;

  // "{}" for the open stratum, otherwise the vanishing components, e.g. "{x,y}".
  std::string stratum_name(Stratum t) const;

 private:
  RingPtr ring_;
  std::vector<std::string> components_;
  std::vector<std::size_t> vars_;
};

// Rabinowitsch presentation R[t]/(t*f - 1).
struct LocalizedRing {
  RingPtr base;
  Polynomial inverted;
  RingPtr ring;
  RingMorphism canonical;  // R -> R_f
  std::size_t t_index = 0;
  bool zero_ring = false;
  std::string warning;
};

// f = 0 in R yields the zero ring with a warning instead of an error.
LocalizedRing localize(const RingPtr& ring, const Polynomial& f);

struct Precision {
  int level = 8;
  int cap = 64;

  Precision() = default;
  Precision(int level, int cap);
  Precision doubled() const { return Precision(std::min(level * 2, cap), cap); }
};

// Truncations R/a^n for n = 1..depth.
class CompletionTower {
 public:
  CompletionTower(RingPtr base, std::vector<Polynomial> ideal_gens, int depth);

  const RingPtr& base() const { return base_; }
  const std::vector<Polynomial>& ideal_gens() const { return gens_; }
  int depth() const { return depth_; }
  // Level 0 is the zero ring.
  const RingPtr& level(int n) const;
  // Canonical surjection level n+1 -> level n.
  const RingMorphism& transition(int n) const;
  // Composite level `from` -> level `to` (from >= to).
  RingMorphism projection(int from, int to) const;
  RingMorphism from_base(int n) const;
  // Generators of a^n in the base ring.
  std::vector<Polynomial> ideal_power(int n) const;

 private:
  RingPtr base_;
  std::vector<Polynomial> gens_;
  int depth_;
  std::vector<RingPtr> levels_;  // index n, levels_[0] is the zero ring
  std::vector<RingMorphism> transitions_;
};

CompletionTower completion_tower(const RingPtr& ring, std::vector<Polynomial> ideal_gens, int depth);

// Products of `gens` of total degree n.
std::vector<Polynomial> power_products(const std::vector<Polynomial>& gens, int n);

// lim_l R[1/f_j : j not in T]/(f_i^l : i in T). `lambda` is the localized
// ring with one inverse variable per inverted component, appended after R's
// variables; `tower` truncates it along T up to prec.level.
class StratumRing {
 public:
  StratumRing(const DivisorSpec& spec, Stratum t, const Precision& prec);

  Stratum stratum() const { return stratum_; }
  const RingPtr& lambda() const { return lambda_; }
  // Index of the inverse of component i in lambda, or -1 if i is in T.
  int inverse_var(std::size_t i) const { return inverse_[i]; }
  const std::optional<CompletionTower>& tower() const { return tower_; }
  // lambda/(f_i^l : i in T); lambda itself when T is empty.
  RingPtr level(int l) const;
  // Product of the inverted components, the element u_T.
  Polynomial unit_product() const;
  std::string describe() const;

 private:
  Stratum stratum_;
  RingPtr lambda_;
  std::vector<int> inverse_;
  std::optional<CompletionTower> tower_;
  std::vector<Polynomial> truncation_vars_;
  Polynomial unit_product_;
};

StratumRing stratum_ring(const DivisorSpec& spec, Stratum t, const Precision& prec);

// Inverse variable names are the component name with a "t_" prefix.
std::string inverse_name(const std::string& component);

class ChainRing;
using ChainRingPtr = std::shared_ptr<const ChainRing>;

// Element pi^(-pole) * body of a chain ring, with pi the product of the pole
// variables. The body is known modulo (f_i^precision : i truncated).
class LaurentElement {
 public:
  static constexpr int kExact = INT_MAX / 4;

  LaurentElement() = default;
  LaurentElement(ChainRingPtr ring, Polynomial body, int pole, int precision);

  const ChainRingPtr& ring() const { return ring_; }
  const Polynomial& body() const { return body_; }
  int pole_order() const { return pole_; }
  int precision() const { return precision_; }
  bool exact() const { return precision_ >= kExact / 2; }
  bool is_zero() const { return body_.is_zero(); }

  LaurentElement operator-() const;
  LaurentElement operator+(const LaurentElement& o) const;
  LaurentElement operator-(const LaurentElement& o) const { return *this + (-o); }
  LaurentElement operator*(const LaurentElement& o) const;
  LaurentElement inverse() const;
  LaurentElement with_precision(int p) const;
  // Equality at the coarser of the two precisions.
  bool equals(const LaurentElement& o) const { return (*this - o).is_zero(); }

  // Inverse variables print as negative powers.
  std::string to_string() const;

 private:
  friend LaurentElement laurent_normalize(const LaurentElement& e);
  ChainRingPtr ring_;
  Polynomial body_;
  int pole_ = 0;
  int precision_ = kExact;
};

// Minimal pole order. Throws PrecisionExhausted when nothing is left.
LaurentElement laurent_normalize(const LaurentElement& e);

// R_{Y_1,...,Y_m} for T_1 < ... < T_m: the stratum ring of T_m, localized at
// the components of T_m \ T_1 and completed along T_1 (already truncated).
class ChainRing : public std::enable_shared_from_this<ChainRing> {
 public:
  ChainRing(const DivisorSpec& spec, std::vector<Stratum> chain, const Precision& prec);

  const DivisorSpec& spec() const { return spec_; }
  const std::vector<Stratum>& chain() const { return chain_; }
  const StratumRing& deepest() const { return deepest_; }
  const RingPtr& body_ring() const { return deepest_.lambda(); }
  Stratum truncated() const { return truncated_; }
  Stratum poles() const { return poles_; }
  int precision() const { return prec_.level; }
  const Precision& prec() const { return prec_; }
  // A single variable that is both the only truncated and the only pole
  // variable; shifting by pi then moves the precision too.
  bool single_variable() const;

  Polynomial pi() const;
  // Reduces by lambda's relations and drops terms beyond the precision.
  Polynomial truncate(const Polynomial& body, int precision) const;

  LaurentElement element(const Polynomial& body, int pole = 0, int precision = LaurentElement::kExact) const;
  LaurentElement zero() const { return element(Polynomial(body_ring()->ambient())); }
  LaurentElement one() const { return element(body_ring()->one()); }
  // Negative exponents are allowed on inverted and pole variables.
  LaurentElement from_laurent(const LaurentPolynomial& lp, int precision = LaurentElement::kExact) const;
  LaurentElement parse(const std::string& text, int line = 1, int column_offset = 0) const;

  bool same_structure(const ChainRing& o) const;
  std::string describe() const;
  // Coefficients shown as "k" and no truncation suffix, e.g. "k[[x]][1/x]".
  std::string describe_symbolic() const;

 private:
  DivisorSpec spec_;
  std::vector<Stratum> chain_;
  Precision prec_;
  StratumRing deepest_;
  Stratum truncated_ = 0;
  Stratum poles_ = 0;
};

// Throws ChainError unless chain is strictly increasing in inclusion.
ChainRingPtr chain_ring(const DivisorSpec& spec, const std::vector<Stratum>& chain, const Precision& prec);
void validate_chain(const DivisorSpec& spec, const std::vector<Stratum>& chain);

// Canonical map from the ring of a subchain into the ring of the chain.
class ChainMap {
 public:
  ChainMap(ChainRingPtr source, ChainRingPtr target);

  const ChainRingPtr& source() const { return source_; }
  const ChainRingPtr& target() const { return target_; }
  LaurentElement apply(const LaurentElement& e) const;
  // Image of a polynomial of the source body ring, as an exact element.
  LaurentElement apply(const Polynomial& p) const;

 private:
  ChainRingPtr source_;
  ChainRingPtr target_;
  std::vector<LaurentElement> images_;  // per source body variable
};

bool is_subchain(const std::vector<Stratum>& sub, const std::vector<Stratum>& chain);

struct BlWitness {
  std::string stage;  // "injective", "middle", "surjective"
  std::string detail;
};

struct BlReport {
  bool injective = true;
  bool middle_exact = true;
  bool surjective = true;
  std::size_t source_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t target_dim = 0;
  std::vector<BlWitness> witnesses;

  bool exact() const { return injective && middle_exact && surjective; }
};

// Checks 0 -> R -> R_f + R^ -> R^_f on the span of monomials of bounded degree,
// with R^ truncated at prec.level, by exact linear algebra over the field.
BlReport check_bl_sequence(const RingPtr& ring, const std::string& f, const Precision& prec, int degree_bound);

}  // namespace snc
