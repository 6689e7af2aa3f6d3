#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "snc/field.hpp"

namespace snc {

inline constexpr std::size_t kMaxVars = 14;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
// Requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial var_power(std::size_t var, unsigned e);

// Degree-reverse-lexicographic or lexicographic, optionally as a two-block
// order: variables in `elim_mask` form the first (dominant) block.
struct MonomialOrder {
  enum class Kind { DegRevLex, Lex };
  Kind kind = Kind::DegRevLex;
  std::uint32_t elim_mask = 0;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder block(std::uint32_t first_block) { return {Kind::DegRevLex, first_block}; }

  // <0, 0, >0 like strcmp.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const;
  std::string tag() const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

// Ambient polynomial ring k[v_1..v_n]: variable names, field, term order.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> names, Field field, MonomialOrder order = {});

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, names_.size()); }
  // Index of the named variable, or -1.
  int index_of(const std::string& name) const;

  bool same_as(const PolyRing& other) const {
    return names_ == other.names_ && field_ == other.field_ && order_ == other.order_;
  }

 private:
  std::vector<std::string> names_;
  Field field_;
  MonomialOrder order_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Monomial mono;
  Scalar coeff;
};

// Sparse polynomial; terms sorted strictly decreasing in the ring's order,
// no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(PolyRingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(PolyRingPtr ring, std::vector<Term> terms);  // normalizes

  static Polynomial constant(PolyRingPtr ring, const Scalar& c);
  static Polynomial variable(PolyRingPtr ring, std::size_t var);
  static Polynomial monomial(PolyRingPtr ring, const Monomial& m, const Scalar& c = 1);

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const { return Polynomial(*this) += o; }
  Polynomial operator-(const Polynomial& o) const { return Polynomial(*this) -= o; }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c = 1) const;
  Polynomial pow(unsigned e) const;
  Polynomial monic() const;

  // Reinterprets the same terms in another ring with the same variable count.
  Polynomial rebased(PolyRingPtr ring) const;
  // Substitutes images[i] for variable i; all images share one ring.
  Polynomial substitute(const std::vector<Polynomial>& images, const PolyRingPtr& target) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void normalize();
  PolyRingPtr ring_;
  std::vector<Term> terms_;
};

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);
std::string scalar_to_string(const Scalar& c);

}  // namespace snc
