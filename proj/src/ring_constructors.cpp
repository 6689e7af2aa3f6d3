#include "snc/ring_constructors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "snc/errors.hpp"

namespace snc {

// ---------------------------------------------------------------- divisor

DivisorSpec::DivisorSpec(RingPtr ring, std::vector<std::string> components)
    : ring_(std::move(ring)), components_(std::move(components)) {
  if (ring_->has_relations()) throw StructuralError("divisor ring must be a polynomial ring without relations");
  if (components_.empty()) throw StructuralError("divisor needs at least one component");
  if (components_.size() > 5) throw UnsupportedError("at most 5 divisor components are supported");
  for (const auto& c : components_) {
    const int idx = ring_->ambient()->index_of(c);
    if (idx < 0) throw StructuralError("divisor component '" + c + "' is not a variable of " + ring_->describe());
    if (std::find(vars_.begin(), vars_.end(), static_cast<std::size_t>(idx)) != vars_.end()) {
      throw StructuralError("divisor component '" + c + "' is listed twice");
    }
    vars_.push_back(static_cast<std::size_t>(idx));
  }
}

Polynomial DivisorSpec::product(Stratum t, const PolyRingPtr& amb) const {
  Monomial m;
  for (std::size_t i = 0; i < n(); ++i)
    if (t >> i & 1u) m.exp[vars_[i]] = 1;
  return Polynomial::monomial(amb, m);
}

std::string DivisorSpec::stratum_name(Stratum t) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < n(); ++i) {
    if (!(t >> i & 1u)) continue;
    if (!first) s += ",";
    s += components_[i];
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------- localize

LocalizedRing localize(const RingPtr& ring, const Polynomial& f) {
  std::vector<std::string> names = ring->vars();
  std::string t = "t";
  for (int k = 1; ring->ambient()->index_of(t) >= 0; ++k) t = "t" + std::to_string(k);
  names.push_back(t);
  auto amb = std::make_shared<PolyRing>(names, ring->field(), ring->ambient()->order());
  const Polynomial fr = ring->normal_form(f);
  std::vector<Polynomial> rels;
  for (const auto& r : ring->relations()) rels.push_back(r.rebased(amb));
  LocalizedRing out{ring, fr, nullptr, RingMorphism::identity(ring), names.size() - 1, false, {}};
  if (fr.is_zero()) {
    rels.push_back(Polynomial::constant(amb, 1));
    out.zero_ring = true;
    out.warning = "inverting zero: the localization is the zero ring";
  } else {
    rels.push_back(Polynomial::variable(amb, names.size() - 1) * fr.rebased(amb) - Polynomial::constant(amb, 1));
  }
  out.ring = std::make_shared<PresentedRing>(amb, rels);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < ring->nvars(); ++i) images.push_back(Polynomial::variable(amb, i));
  out.canonical = RingMorphism(ring, out.ring, images);
  return out;
}

// ---------------------------------------------------------------- towers

Precision::Precision(int level_, int cap_) : level(level_), cap(cap_) {
  if (level < 1) throw StructuralError("precision level must be at least 1");
  if (cap < level) throw StructuralError("precision cap " + std::to_string(cap) + " is below the level " +
                                         std::to_string(level));
}

std::vector<Polynomial> power_products(const std::vector<Polynomial>& gens, int n) {
  std::vector<Polynomial> out;
  if (gens.empty()) return out;
  std::vector<int> counts(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == gens.size()) {
      counts[i] = left;
      Polynomial p = Polynomial::constant(gens[0].ring(), 1);
      for (std::size_t k = 0; k < gens.size(); ++k)
        if (counts[k]) p = p * gens[k].pow(static_cast<unsigned>(counts[k]));
      out.push_back(std::move(p));
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, n);
  return out;
}

CompletionTower::CompletionTower(RingPtr base, std::vector<Polynomial> ideal_gens, int depth)
    : base_(std::move(base)), gens_(std::move(ideal_gens)), depth_(depth) {
  if (depth_ < 1) throw StructuralError("completion tower depth must be at least 1");
  for (auto& g : gens_) g = base_->normal_form(g);
  const auto& amb = base_->ambient();
  levels_.push_back(std::make_shared<PresentedRing>(amb, std::vector<Polynomial>{Polynomial::constant(amb, 1)}));
  for (int n = 1; n <= depth_; ++n) {
    std::vector<Polynomial> rels = base_->relations();
    for (auto& p : power_products(gens_, n)) rels.push_back(std::move(p));
    levels_.push_back(std::make_shared<PresentedRing>(amb, rels));
  }
  for (int n = 0; n < depth_; ++n) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < amb->nvars(); ++i) images.push_back(Polynomial::variable(amb, i));
    transitions_.emplace_back(levels_[n + 1], levels_[n], images);
  }
}

const RingPtr& CompletionTower::level(int n) const {
  if (n < 0 || n > depth_) throw StructuralError("tower level " + std::to_string(n) + " is out of range");
  return levels_[n];
}

const RingMorphism& CompletionTower::transition(int n) const {
  if (n < 0 || n >= depth_) throw StructuralError("tower transition " + std::to_string(n) + " is out of range");
  return transitions_[n];
}

RingMorphism CompletionTower::projection(int from, int to) const {
  if (to > from) throw StructuralError("tower projection must go down");
  RingMorphism m = RingMorphism::identity(level(from));
  for (int n = from - 1; n >= to; --n) m = m.then(transition(n));
  return m;
}

RingMorphism CompletionTower::from_base(int n) const {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < base_->nvars(); ++i) images.push_back(base_->var(i));
  return RingMorphism(base_, level(n), images);
}

std::vector<Polynomial> CompletionTower::ideal_power(int n) const { return power_products(gens_, n); }

CompletionTower completion_tower(const RingPtr& ring, std::vector<Polynomial> ideal_gens, int depth) {
  return CompletionTower(ring, std::move(ideal_gens), depth);
}

// ---------------------------------------------------------------- strata

std::string inverse_name(const std::string& component) { return "t_" + component; }

StratumRing::StratumRing(const DivisorSpec& spec, Stratum t, const Precision& prec)
    : stratum_(t), inverse_(spec.n(), -1) {
  if (t & ~spec.full()) throw StructuralError("stratum mentions a component outside the divisor");
  const RingPtr& r = spec.ring();
  std::vector<std::string> names = r->vars();
  for (std::size_t i = 0; i < spec.n(); ++i) {
    if (t >> i & 1u) continue;
    inverse_[i] = static_cast<int>(names.size());
    names.push_back(inverse_name(spec.components()[i]));
  }
  auto amb = std::make_shared<PolyRing>(names, r->field());
  std::vector<Polynomial> rels;
  for (std::size_t i = 0; i < spec.n(); ++i) {
    if (inverse_[i] < 0) continue;
    rels.push_back(Polynomial::variable(amb, inverse_[i]) * Polynomial::variable(amb, spec.var(i)) -
                   Polynomial::constant(amb, 1));
  }
  lambda_ = std::make_shared<PresentedRing>(amb, rels);
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (t >> i & 1u) truncation_vars_.push_back(Polynomial::variable(amb, spec.var(i)));
  if (t != 0) tower_.emplace(lambda_, truncation_vars_, prec.level);
  unit_product_ = spec.product(spec.full() & ~t, amb);
}

RingPtr StratumRing::level(int l) const {
  if (!tower_) return lambda_;
  if (l <= tower_->depth()) return tower_->level(l);
  std::vector<Polynomial> rels = lambda_->relations();
  for (const auto& v : truncation_vars_) rels.push_back(v.pow(static_cast<unsigned>(l)));
  return std::make_shared<PresentedRing>(lambda_->ambient(), rels);
}

Polynomial StratumRing::unit_product() const { return unit_product_; }

namespace {

std::string ring_text(const DivisorSpec& spec, Stratum truncated, Stratum poles, bool symbolic, int level) {
  std::ostringstream os;
  os << (symbolic ? "k" : spec.ring()->field().describe());
  std::vector<std::string> plain;
  for (std::size_t v = 0; v < spec.ring()->nvars(); ++v) {
    const std::string& name = spec.ring()->vars()[v];
    auto it = std::find(spec.components().begin(), spec.components().end(), name);
    if (it == spec.components().end()) {
      plain.push_back(name);
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(it - spec.components().begin());
    if (truncated >> i & 1u) continue;
    plain.push_back(name);
    plain.push_back("1/" + name);
  }
  if (!plain.empty()) {
    os << "[";
    for (std::size_t i = 0; i < plain.size(); ++i) os << (i ? "," : "") << plain[i];
    os << "]";
  }
  std::vector<std::string> trunc, pole;
  for (std::size_t i = 0; i < spec.n(); ++i) {
    if (truncated >> i & 1u) trunc.push_back(spec.components()[i]);
    if (poles >> i & 1u) pole.push_back("1/" + spec.components()[i]);
  }
  if (!trunc.empty()) {
    os << "[[";
    for (std::size_t i = 0; i < trunc.size(); ++i) os << (i ? "," : "") << trunc[i];
    os << "]]";
  }
  if (!pole.empty()) {
    os << "[";
    for (std::size_t i = 0; i < pole.size(); ++i) os << (i ? "," : "") << pole[i];
    os << "]";
  }
  if (!trunc.empty() && level > 0) {
    os << " mod (";
    for (std::size_t i = 0; i < trunc.size(); ++i) os << (i ? ", " : "") << trunc[i] << "^" << level;
    os << ")";
  }
  return os.str();
}

}  // namespace

std::string StratumRing::describe() const { return lambda_->describe(); }

StratumRing stratum_ring(const DivisorSpec& spec, Stratum t, const Precision& prec) {
  return StratumRing(spec, t, prec);
}

// ---------------------------------------------------------------- chains

void validate_chain(const DivisorSpec& spec, const std::vector<Stratum>& chain) {
  if (chain.empty()) throw ChainError("a chain needs at least one stratum");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k] & ~spec.full()) throw ChainError("chain entry mentions a component outside the divisor");
    if (k == 0) continue;
    if (!contains(chain[k], chain[k - 1]) || chain[k] == chain[k - 1]) {
      throw ChainError("not a chain: " + spec.stratum_name(chain[k - 1]) + " is not strictly contained in " +
                       spec.stratum_name(chain[k]));
    }
  }
}

bool is_subchain(const std::vector<Stratum>& sub, const std::vector<Stratum>& chain) {
  std::size_t j = 0;
  for (Stratum s : sub) {
    while (j < chain.size() && chain[j] != s) ++j;
    if (j == chain.size()) return false;
    ++j;
  }
  return true;
}

namespace {

const std::vector<Stratum>& checked(const DivisorSpec& spec, const std::vector<Stratum>& chain) {
  validate_chain(spec, chain);
  return chain;
}

}  // namespace

ChainRing::ChainRing(const DivisorSpec& spec, std::vector<Stratum> chain, const Precision& prec)
    : spec_(spec), chain_(checked(spec, chain)), prec_(prec), deepest_(spec, chain_.back(), prec) {
  // Unwind R_{T_1..T_m} = (R_{T_2..T_m}[1/f_j : j not in T_1])^ along T_1,
  // starting from the stratum ring of T_m.
  truncated_ = chain_.back();
  for (std::size_t k = chain_.size() - 1; k-- > 0;) {
    poles_ |= truncated_ & ~chain_[k];
    truncated_ |= chain_[k];
  }
}

bool ChainRing::single_variable() const {
  return stratum_size(truncated()) == 1 && poles() == truncated();
}

Polynomial ChainRing::pi() const { return spec_.product(poles(), body_ring()->ambient()); }

Polynomial ChainRing::truncate(const Polynomial& body, int precision) const {
  Polynomial nf = body_ring()->normal_form(body);
  if (precision >= LaurentElement::kExact / 2) return nf;
  std::vector<Term> kept;
  for (const auto& t : nf.terms()) {
    bool keep = true;
    for (std::size_t i = 0; i < spec_.n(); ++i)
      if ((truncated() >> i & 1u) && t.mono.exp[spec_.var(i)] >= precision) keep = false;
    if (keep) kept.push_back(t);
  }
  return Polynomial(body_ring()->ambient(), std::move(kept));
}

LaurentElement ChainRing::element(const Polynomial& body, int pole, int precision) const {
  return LaurentElement(shared_from_this(), body, pole, precision);
}

LaurentElement ChainRing::from_laurent(const LaurentPolynomial& lp, int precision) const {
  const auto& amb = body_ring()->ambient();
  const std::size_t nr = spec_.ring()->nvars();
  int pole = 0;
  for (const auto& [e, c] : lp.terms) {
    for (std::size_t v = 0; v < nr; ++v) {
      if (e[v] >= 0) continue;
      auto it = std::find(spec_.components().begin(), spec_.components().end(), spec_.ring()->vars()[v]);
      const std::string& name = spec_.ring()->vars()[v];
      if (it == spec_.components().end()) throw StructuralError(name + " is not invertible in " + describe());
      const std::size_t i = static_cast<std::size_t>(it - spec_.components().begin());
      if (poles() >> i & 1u) {
        pole = std::max(pole, -e[v]);
      } else if (truncated() >> i & 1u) {
        throw StructuralError(name + " is not invertible in " + describe());
      }
    }
    for (std::size_t v = nr; v < kMaxVars; ++v)
      if (e[v] != 0) throw StructuralError("Laurent term mentions an unknown variable");
  }
  std::vector<Term> terms;
  for (const auto& [e, c] : lp.terms) {
    Monomial m;
    for (std::size_t v = 0; v < nr; ++v) {
      int ev = e[v];
      auto it = std::find(spec_.components().begin(), spec_.components().end(), spec_.ring()->vars()[v]);
      if (it != spec_.components().end()) {
        const std::size_t i = static_cast<std::size_t>(it - spec_.components().begin());
        if (poles() >> i & 1u) ev += pole;
        if (ev < 0) {
          m.exp[static_cast<std::size_t>(deepest_.inverse_var(i))] = static_cast<std::uint16_t>(-ev);
          continue;
        }
      }
      m.exp[v] = static_cast<std::uint16_t>(ev);
    }
    terms.push_back({m, c});
  }
  return laurent_normalize(element(Polynomial(amb, std::move(terms)), pole, precision));
}

LaurentElement ChainRing::parse(const std::string& text, int line, int column_offset) const {
  return from_laurent(parse_laurent(text, spec_.ring()->vars(), spec_.ring()->field(), line, column_offset));
}

bool ChainRing::same_structure(const ChainRing& o) const {
  return truncated() == o.truncated() && poles() == o.poles() && precision() == o.precision() &&
         body_ring()->same_presentation(*o.body_ring());
}

std::string ChainRing::describe() const { return ring_text(spec_, truncated(), poles(), false, prec_.level); }

std::string ChainRing::describe_symbolic() const { return ring_text(spec_, truncated(), poles(), true, 0); }

ChainRingPtr chain_ring(const DivisorSpec& spec, const std::vector<Stratum>& chain, const Precision& prec) {
  validate_chain(spec, chain);
  return std::make_shared<ChainRing>(spec, chain, prec);
}

// ---------------------------------------------------------------- Laurent elements

LaurentElement::LaurentElement(ChainRingPtr ring, Polynomial body, int pole, int precision)
    : ring_(std::move(ring)), pole_(pole), precision_(precision) {
  if (pole_ < 0) throw StructuralError("negative pole order");
  if (precision_ <= 0) throw PrecisionExhausted("Laurent element has no significant digits left");
  if (precision_ >= kExact / 2) precision_ = kExact;
  body_ = ring_->truncate(body.ring() ? body : Polynomial(ring_->body_ring()->ambient()), precision_);
}

namespace {

int add_precision(int p, int shift) {
  return p >= LaurentElement::kExact / 2 ? LaurentElement::kExact : p + shift;
}

// Largest monomial in the pole variables dividing every term of p.
Monomial pole_content(const ChainRing& r, const Polynomial& p) {
  Monomial g;
  bool first = true;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < r.spec().n(); ++i) {
      if (!(r.poles() >> i & 1u)) continue;
      const std::size_t v = r.spec().var(i);
      g.exp[v] = first ? t.mono.exp[v] : std::min(g.exp[v], t.mono.exp[v]);
    }
    first = false;
  }
  return g;
}

unsigned max_exponent(const Monomial& m) {
  unsigned e = 0;
  for (auto x : m.exp) e = std::max<unsigned>(e, x);
  return e;
}

}  // namespace

LaurentElement laurent_normalize(const LaurentElement& e) {
  const ChainRing& r = *e.ring_;
  LaurentElement out = e;
  if (out.body_.is_zero()) {
    if (r.single_variable() || out.exact()) {
      const int p = add_precision(out.precision_, -out.pole_);
      if (p <= 0) throw PrecisionExhausted("Laurent element has no significant digits left");
      out.precision_ = p;
      out.pole_ = 0;
    }
    return out;
  }
  if (out.pole_ == 0 || !(r.single_variable() || out.exact())) return out;
  // Divide the body by pi as long as every term allows it.
  Monomial g = pole_content(r, out.body_);
  unsigned k = static_cast<unsigned>(out.pole_);
  for (std::size_t i = 0; i < r.spec().n(); ++i)
    if (r.poles() >> i & 1u) k = std::min<unsigned>(k, g.exp[r.spec().var(i)]);
  if (k == 0) return out;
  Monomial pik;
  for (std::size_t i = 0; i < r.spec().n(); ++i)
    if (r.poles() >> i & 1u) pik.exp[r.spec().var(i)] = static_cast<std::uint16_t>(k);
  std::vector<Term> terms;
  for (const auto& t : out.body_.terms()) terms.push_back({t.mono / pik, t.coeff});
  const int p = add_precision(out.precision_, -static_cast<int>(k));
  if (p <= 0) throw PrecisionExhausted("Laurent element has no significant digits left");
  return LaurentElement(e.ring_, Polynomial(out.body_.ring(), std::move(terms)), out.pole_ - static_cast<int>(k), p);
}

LaurentElement LaurentElement::operator-() const {
  LaurentElement out = *this;
  out.body_ = -body_;
  return out;
}

LaurentElement LaurentElement::operator+(const LaurentElement& o) const {
  if (ring_.get() != o.ring_.get() && !ring_->same_structure(*o.ring_)) {
    throw StructuralError("adding Laurent elements of different chain rings");
  }
  const int n = std::max(pole_, o.pole_);
  const bool shift_credit = ring_->single_variable();
  const Polynomial pi = ring_->pi();
  auto aligned = [&](const LaurentElement& e, int& prec) {
    const unsigned s = static_cast<unsigned>(n - e.pole_);
    prec = shift_credit ? add_precision(e.precision_, static_cast<int>(s)) : e.precision_;
    return s ? e.body_ * pi.pow(s) : e.body_;
  };
  int pa = 0, pb = 0;
  Polynomial sum = aligned(*this, pa);
  sum += aligned(o, pb);
  return laurent_normalize(LaurentElement(ring_, sum, n, std::min(pa, pb)));
}

LaurentElement LaurentElement::operator*(const LaurentElement& o) const {
  if (ring_.get() != o.ring_.get() && !ring_->same_structure(*o.ring_)) {
    throw StructuralError("multiplying Laurent elements of different chain rings");
  }
  const int p = std::min(precision_, o.precision_);
  return laurent_normalize(LaurentElement(ring_, ring_->truncate(body_ * o.body_, p), pole_ + o.pole_, p));
}

LaurentElement LaurentElement::with_precision(int p) const {
  return laurent_normalize(LaurentElement(ring_, body_, pole_, std::min(p, precision_)));
}

LaurentElement LaurentElement::inverse() const {
  const ChainRing& r = *ring_;
  const DivisorSpec& spec = r.spec();
  if (body_.is_zero()) throw PrecisionExhausted("cannot invert an element that vanishes at its precision");
  const auto& amb = r.body_ring()->ambient();

  // body = g * c with g a monomial in the pole variables (sound when the body
  // is exact, or when pi is a single variable and g stays below precision).
  Monomial g;
  if (exact() || r.single_variable()) g = pole_content(r, body_);
  std::vector<Term> cterms;
  for (const auto& t : body_.terms()) cterms.push_back({t.mono / g, t.coeff});
  const Polynomial c(amb, std::move(cterms));
  const int shift = static_cast<int>(g.degree());
  int q = exact() ? LaurentElement::kExact : precision_ - (r.single_variable() ? shift : 0);
  if (q <= 0) throw PrecisionExhausted("cannot invert: no significant digits left");

  // Residue modulo the truncated variables must be a unit monomial.
  std::vector<Term> residue;
  for (const auto& t : c.terms()) {
    bool free = true;
    for (std::size_t i = 0; i < spec.n(); ++i)
      if ((r.truncated() >> i & 1u) && t.mono.exp[spec.var(i)]) free = false;
    if (free) residue.push_back(t);
  }
  if (residue.size() != 1) throw UnsupportedError("cannot invert " + to_string() + ": residue is not a unit monomial");
  const Term& u = residue.front();
  Monomial uinv;
  for (std::size_t v = 0; v < amb->nvars(); ++v) {
    if (u.mono.exp[v] == 0) continue;
    bool swapped = false;
    for (std::size_t i = 0; i < spec.n(); ++i) {
      const int tv = r.deepest().inverse_var(i);
      if (tv < 0) continue;
      if (v == spec.var(i)) {
        uinv.exp[static_cast<std::size_t>(tv)] = u.mono.exp[v];
        swapped = true;
      } else if (v == static_cast<std::size_t>(tv)) {
        uinv.exp[spec.var(i)] = u.mono.exp[v];
        swapped = true;
      }
    }
    if (!swapped) throw UnsupportedError("cannot invert " + to_string() + ": residue is not a unit monomial");
  }
  const Polynomial ui = Polynomial::monomial(amb, uinv, r.body_ring()->field().inv(u.coeff));
  const Polynomial h = r.truncate(Polynomial::constant(amb, 1) - ui * c, LaurentElement::kExact);
  if (!h.is_zero() && q >= LaurentElement::kExact / 2) q = r.precision();

  Polynomial series = Polynomial::constant(amb, 1);
  Polynomial power = series;
  const int limit = static_cast<int>(spec.n()) * q + 2;
  for (int k = 0; k < limit && !h.is_zero(); ++k) {
    power = r.truncate(power * h, q);
    if (power.is_zero()) break;
    series += power;
  }
  const Polynomial cinv = r.truncate(ui * series, q);

  if (r.single_variable()) {
    const int k = pole_ - shift;
    if (k >= 0) return LaurentElement(ring_, cinv * r.pi().pow(static_cast<unsigned>(k)), 0, add_precision(q, k));
    return laurent_normalize(LaurentElement(ring_, cinv, -k, q));
  }
  // a^-1 = pi^pole * g^-1 * c^-1, with g^-1 = pi^-e * (pi^e / g).
  const unsigned e = max_exponent(g);
  Monomial pie;
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (r.poles() >> i & 1u) pie.exp[spec.var(i)] = static_cast<std::uint16_t>(e);
  LaurentElement ginv(ring_, Polynomial::monomial(amb, pie / g), static_cast<int>(e), kExact);
  LaurentElement pip(ring_, r.pi().pow(static_cast<unsigned>(pole_)), 0, kExact);
  return LaurentElement(ring_, cinv, 0, q) * ginv * pip;
}

std::string LaurentElement::to_string() const {
  if (body_.is_zero()) return "0";
  const ChainRing& r = *ring_;
  const DivisorSpec& spec = r.spec();
  const auto& names = spec.ring()->vars();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : body_.terms()) {
    std::vector<int> e(names.size());
    for (std::size_t v = 0; v < names.size(); ++v) e[v] = t.mono.exp[v];
    for (std::size_t i = 0; i < spec.n(); ++i) {
      const int tv = r.deepest().inverse_var(i);
      if (tv >= 0) e[spec.var(i)] -= t.mono.exp[static_cast<std::size_t>(tv)];
      if (r.poles() >> i & 1u) e[spec.var(i)] -= pole_;
    }
    Scalar c = t.coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < names.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] != 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << mono;
    }
  }
  if (!exact()) {
    os << " + O(";
    bool f = true;
    for (std::size_t i = 0; i < spec.n(); ++i) {
      if (!(r.truncated() >> i & 1u)) continue;
      const int p = precision_ - ((r.poles() >> i & 1u) ? pole_ : 0);
      os << (f ? "" : ", ") << spec.components()[i] << "^" << p;
      f = false;
    }
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- chain maps

ChainMap::ChainMap(ChainRingPtr source, ChainRingPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (!is_subchain(source_->chain(), target_->chain())) {
    throw ChainError("no canonical map: the source chain is not a subchain of the target chain");
  }
  const DivisorSpec& spec = target_->spec();
  const auto& tamb = target_->body_ring()->ambient();
  const std::size_t nr = spec.ring()->nvars();
  const std::size_t ns = source_->body_ring()->nvars();
  images_.assign(ns, target_->zero());
  for (std::size_t v = 0; v < nr; ++v) images_[v] = target_->element(Polynomial::variable(tamb, v));
  for (std::size_t i = 0; i < spec.n(); ++i) {
    const int sv = source_->deepest().inverse_var(i);
    if (sv < 0) continue;
    const int tv = target_->deepest().inverse_var(i);
    if (tv >= 0) {
      images_[static_cast<std::size_t>(sv)] = target_->element(Polynomial::variable(tamb, static_cast<std::size_t>(tv)));
    } else {
      // f_i becomes a pole: 1/f_i = pi^-1 * (pi / f_i).
      Monomial m;
      for (std::size_t k = 0; k < spec.n(); ++k)
        if ((target_->poles() >> k & 1u) && k != i) m.exp[spec.var(k)] = 1;
      images_[static_cast<std::size_t>(sv)] = target_->element(Polynomial::monomial(tamb, m), 1);
    }
  }
}

LaurentElement ChainMap::apply(const Polynomial& p) const {
  LaurentElement out = target_->zero();
  std::vector<std::vector<LaurentElement>> powers(images_.size());
  for (const auto& t : p.terms()) {
    LaurentElement term = target_->element(Polynomial::constant(target_->body_ring()->ambient(), t.coeff));
    for (std::size_t v = 0; v < images_.size(); ++v) {
      const unsigned e = t.mono.exp[v];
      if (!e) continue;
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(target_->one());
      while (cache.size() <= e) cache.push_back(cache.back() * images_[v]);
      term = term * cache[e];
    }
    out = out + term;
  }
  return out;
}

LaurentElement ChainMap::apply(const LaurentElement& e) const {
  LaurentElement out = apply(e.body());
  if (e.pole_order() > 0) {
    // pi_source^-1 = pi_target^-1 * (pi_target / pi_source)
    const DivisorSpec& spec = target_->spec();
    Monomial m;
    for (std::size_t k = 0; k < spec.n(); ++k)
      if ((target_->poles() >> k & 1u) && !(source_->poles() >> k & 1u)) m.exp[spec.var(k)] = 1;
    LaurentElement pinv = target_->element(Polynomial::monomial(target_->body_ring()->ambient(), m), 1);
    for (int k = 0; k < e.pole_order(); ++k) out = out * pinv;
  }
  if (!e.exact()) out = out.with_precision(e.precision());
  return out;
}

// ---------------------------------------------------------------- BL sequence

namespace {

// Row-reduced echelon form over a field; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Scalar>>& a, const Field& f) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Scalar inv = f.inv(a[r][c]);
    for (auto& x : a[r]) x = f.mul(x, inv);
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      const Scalar m = a[k][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] = f.sub(a[k][j], f.mul(m, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of {v : a v = 0}.
std::vector<std::vector<Scalar>> nullspace(std::vector<std::vector<Scalar>> a, std::size_t cols, const Field& f) {
  auto pivots = row_reduce(a, f);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Scalar> v(cols, Scalar(0));
    v[freec] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = f.neg(a[k][freec]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

BlReport check_bl_sequence(const RingPtr& ring, const std::string& fname, const Precision& prec, int d) {
  const int fv = ring->ambient()->index_of(fname);
  if (fv < 0) throw StructuralError("'" + fname + "' is not a variable of " + ring->describe());
  if (ring->has_relations()) throw UnsupportedError("the exactness check needs a polynomial ring without relations");
  if (d < 1) throw StructuralError("degree bound must be at least 1");
  const Field& field = ring->field();
  const int p = prec.level;

  // Monomials in the other variables of degree <= d.
  std::vector<Monomial> others;
  std::function<void(std::size_t, int, Monomial)> rec = [&](std::size_t v, int left, Monomial m) {
    if (v == ring->nvars()) {
      others.push_back(m);
      return;
    }
    if (static_cast<int>(v) == fv) return rec(v + 1, left, m);
    for (int e = 0; e <= left; ++e) {
      m.exp[v] = static_cast<std::uint16_t>(e);
      rec(v + 1, left - e, m);
    }
  };
  rec(0, d, Monomial{});

  // Coordinates: x^i * m  <->  (i, index of m).
  using Key = std::pair<int, std::size_t>;
  auto index_of = [](std::map<Key, std::size_t>& idx, Key k) {
    auto it = idx.find(k);
    if (it != idx.end()) return it->second;
    const std::size_t n = idx.size();
    idx.emplace(k, n);
    return n;
  };

  BlReport rep;
  auto describe_coord = [&](Key k) {
    Monomial m = others[k.second];
    std::string s = monomial_to_string(m, ring->vars());
    std::string xi = fname + (k.first == 1 ? "" : "^" + std::to_string(k.first));
    if (k.first == 0) return s;
    return s == "1" ? xi : xi + "*" + s;
  };

  // Source: polynomials of total degree <= d.
  std::vector<Key> src;
  for (std::size_t j = 0; j < others.size(); ++j)
    for (int i = 0; i + static_cast<int>(others[j].degree()) <= d; ++i) src.push_back({i, j});
  rep.source_dim = src.size();

  // Middle: span(B_f) + span(B^); target: R^_f truncated at f^p.
  std::vector<Key> bf, bhat, tgt;
  for (std::size_t j = 0; j < others.size(); ++j) {
    for (int i = -d; i <= d; ++i) bf.push_back({i, j});
    for (int i = 0; i < p; ++i) bhat.push_back({i, j});
    for (int i = -d; i < p; ++i) tgt.push_back({i, j});
  }
  std::map<Key, std::size_t> bf_idx, bhat_idx, tgt_idx;
  for (auto k : bf) index_of(bf_idx, k);
  for (auto k : bhat) index_of(bhat_idx, k);
  for (auto k : tgt) index_of(tgt_idx, k);
  const std::size_t mid = bf.size() + bhat.size();
  rep.target_dim = tgt.size();

  // (i) injectivity of R -> R_f + R^.
  {
    std::vector<std::vector<Scalar>> a(mid, std::vector<Scalar>(src.size(), Scalar(0)));
    for (std::size_t c = 0; c < src.size(); ++c) {
      a[bf_idx.at(src[c])][c] = 1;
      if (src[c].first < p) a[bf.size() + bhat_idx.at(src[c])][c] = 1;
    }
    const auto ker = nullspace(a, src.size(), field);
    if (!ker.empty()) {
      rep.injective = false;
      for (std::size_t c = 0; c < src.size(); ++c)
        if (ker[0][c] != 0) {
          rep.witnesses.push_back({"injective", "nonzero kernel element involving " + describe_coord(src[c])});
          break;
        }
    }
  }

  // Difference map (a, b) -> a - b in R^_f modulo f^p.
  std::vector<std::vector<Scalar>> delta(tgt.size(), std::vector<Scalar>(mid, Scalar(0)));
  for (std::size_t c = 0; c < bf.size(); ++c)
    if (bf[c].first < p) delta[tgt_idx.at(bf[c])][c] = 1;
  for (std::size_t c = 0; c < bhat.size(); ++c) delta[tgt_idx.at(bhat[c])][bf.size() + c] = field.neg(1);

  // (ii) exactness in the middle: every kernel vector is the image of its
  // first coordinate, which must be a polynomial.
  {
    const auto ker = nullspace(delta, mid, field);
    rep.kernel_dim = ker.size();
    for (const auto& v : ker) {
      std::string problem;
      for (std::size_t c = 0; c < bf.size() && problem.empty(); ++c)
        if (v[c] != 0 && bf[c].first < 0) problem = "kernel element has a pole at " + describe_coord(bf[c]);
      for (std::size_t c = 0; c < bhat.size() && problem.empty(); ++c) {
        const Key k = bhat[c];
        auto it = bf_idx.find(k);
        const Scalar expect = it == bf_idx.end() ? Scalar(0) : v[it->second];
        if (v[bf.size() + c] != expect) problem = "completion part disagrees at " + describe_coord(k);
      }
      if (!problem.empty()) {
        rep.middle_exact = false;
        rep.witnesses.push_back({"middle", problem});
        break;
      }
    }
    // The image of the source has the same dimension as the kernel.
    std::size_t image_dim = 0;
    for (std::size_t j = 0; j < others.size(); ++j) image_dim += static_cast<std::size_t>(d + 1);
    if (rep.middle_exact && ker.size() != image_dim) {
      rep.middle_exact = false;
      rep.witnesses.push_back({"middle", "kernel dimension " + std::to_string(ker.size()) + " differs from " +
                                             std::to_string(image_dim)});
    }
  }

  // (iii) surjectivity onto bounded elements of R^_f.
  {
    auto a = delta;
    const auto pivots = row_reduce(a, field);
    if (pivots.size() != tgt.size()) {
      rep.surjective = false;
      rep.witnesses.push_back({"surjective", "difference map has rank " + std::to_string(pivots.size()) + " < " +
                                                 std::to_string(tgt.size())});
    }
  }
  return rep;
}

}  // namespace snc
