#include "snc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "snc/errors.hpp"

namespace snc {

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

Monomial var_power(std::size_t var, unsigned e) {
  Monomial m;
  m.exp[var] = static_cast<std::uint16_t>(e);
  return m;
}

namespace {

int compare_restricted(MonomialOrder::Kind kind, const Monomial& a, const Monomial& b, std::size_t nvars,
                       std::uint32_t mask) {
  if (kind == MonomialOrder::Kind::Lex) {
    for (std::size_t i = 0; i < nvars; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
    }
    return 0;
  }
  unsigned da = 0, db = 0;
  for (std::size_t i = 0; i < nvars; ++i) {
    if (!(mask >> i & 1u)) continue;
    da += a.exp[i];
    db += b.exp[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = nvars; i-- > 0;) {
    if (!(mask >> i & 1u)) continue;
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
  const std::uint32_t all = nvars >= 32 ? 0xffffffffu : ((1u << nvars) - 1u);
  if (elim_mask != 0) {
    if (int c = compare_restricted(kind, a, b, nvars, elim_mask & all)) return c;
    return compare_restricted(kind, a, b, nvars, all & ~elim_mask);
  }
  return compare_restricted(kind, a, b, nvars, all);
}

std::string MonomialOrder::tag() const {
  if (elim_mask != 0) return "block";
  return kind == Kind::Lex ? "lex" : "degrevlex";
}

PolyRing::PolyRing(std::vector<std::string> names, Field field, MonomialOrder order)
    : names_(std::move(names)), field_(field), order_(order) {
  if (names_.size() > kMaxVars) {
    throw UnsupportedError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    const bool ident = !n.empty() && !std::isdigit(static_cast<unsigned char>(n[0])) &&
                       std::all_of(n.begin(), n.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    if (!ident) throw StructuralError("invalid variable name '" + n + "'");
    if (std::find(names_.begin(), names_.begin() + static_cast<long>(i), n) != names_.begin() + static_cast<long>(i)) {
      throw StructuralError("duplicate variable name '" + n + "'");
    }
  }
}

int PolyRing::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

Polynomial::Polynomial(PolyRingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Polynomial::normalize() {
  const Field& f = ring_->field();
  for (auto& t : terms_) t.coeff = f.reduce(t.coeff);
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return ring_->compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
}

Polynomial Polynomial::constant(PolyRingPtr ring, const Scalar& c) {
  return monomial(std::move(ring), Monomial{}, c);
}

Polynomial Polynomial::variable(PolyRingPtr ring, std::size_t var) {
  return monomial(std::move(ring), var_power(var, 1), 1);
}

Polynomial Polynomial::monomial(PolyRingPtr ring, const Monomial& m, const Scalar& c) {
  std::vector<Term> t;
  t.push_back({m, c});
  return Polynomial(std::move(ring), std::move(t));
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = ring_->field().neg(t.coeff);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (!ring_) ring_ = o.ring_;
  const Field& f = ring_->field();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c = 0;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = ring_->compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = f.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) out.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  PolyRingPtr r = ring_ ? ring_ : o.ring_;
  if (terms_.empty() || o.terms_.empty()) return Polynomial(r);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  const Field& f = r->field();
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, f.mul(a.coeff, b.coeff)});
  return Polynomial(r, std::move(prod));
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = ring_->field().mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) {
    t.mono = t.mono * m;
    t.coeff = ring_->field().mul(t.coeff, c);
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(ring_->field().inv(terms_.front().coeff));
}

Polynomial Polynomial::rebased(PolyRingPtr ring) const {
  if (ring_ && ring->nvars() < ring_->nvars()) {
    for (const auto& t : terms_)
      for (std::size_t i = ring->nvars(); i < ring_->nvars(); ++i)
        if (t.mono.exp[i] != 0) throw StructuralError("cannot rebase polynomial: variable out of range");
  }
  return Polynomial(std::move(ring), terms_);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images, const PolyRingPtr& target) const {
  Polynomial out(target);
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  for (const auto& t : terms_) {
    Polynomial term = Polynomial::constant(target, t.coeff);
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
      if (t.mono.exp[v] == 0) continue;
      if (v >= images.size()) throw StructuralError("substitution is missing an image");
      term = term * power_of(v, t.mono.exp[v]);
    }
    out += term;
  }
  return out;
}

std::string scalar_to_string(const Scalar& c) { return c.get_str(); }

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (t.mono.is_one()) {
      os << scalar_to_string(c);
    } else {
      if (c != 1) os << scalar_to_string(c) << "*";
      os << monomial_to_string(t.mono, ring_->names());
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

}  // namespace snc
