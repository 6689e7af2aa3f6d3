#include "snc/parse.hpp"

#include <algorithm>
#include <cctype>

#include "snc/errors.hpp"

namespace snc {

int LaurentPolynomial::min_exponent(std::size_t var) const {
  int m = 0;
  for (const auto& [e, c] : terms) m = std::min(m, e[var]);
  return m;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names, const Field& field, int line, int offset)
      : text_(text), names_(names), field_(field), line_(line), offset_(offset) {}

  LaurentPolynomial run() {
    skip();
    if (pos_ == text_.size()) fail("empty polynomial");
    LaurentPolynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  LaurentPolynomial add(LaurentPolynomial a, const LaurentPolynomial& b, bool negate) {
    for (const auto& [e, c] : b.terms) {
      Scalar& slot = a.terms[e];
      slot = field_.add(slot, negate ? field_.neg(c) : c);
      if (slot == 0) a.terms.erase(e);
    }
    return a;
  }

  LaurentPolynomial mul(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial r;
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        SignedExponents e{};
        for (std::size_t i = 0; i < kMaxVars; ++i) e[i] = ea[i] + eb[i];
        Scalar& slot = r.terms[e];
        slot = field_.add(slot, field_.mul(ca, cb));
        if (slot == 0) r.terms.erase(e);
      }
    return r;
  }

  LaurentPolynomial constant(const Scalar& c) {
    LaurentPolynomial r;
    Scalar v = field_.reduce(c);
    if (v != 0) r.terms[SignedExponents{}] = v;
    return r;
  }

  LaurentPolynomial expr() {
    LaurentPolynomial acc;
    bool first = true;
    while (true) {
      skip();
      bool negate = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        negate = text_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = add(std::move(acc), product(), negate);
      first = false;
    }
    return acc;
  }

  LaurentPolynomial product() {
    LaurentPolynomial acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        LaurentPolynomial d = power();
        if (d.terms.size() != 1 || d.terms.begin()->first != SignedExponents{}) {
          pos_ = at;
          fail("division is only supported by non-zero constants");
        }
        acc = mul(acc, constant(field_.inv(d.terms.begin()->second)));
      } else {
        return acc;
      }
    }
  }

  LaurentPolynomial power() {
    LaurentPolynomial base = atom();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected exponent");
    long e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 60000) fail("exponent too large");
    }
    if (negative) {
      if (base.terms.size() != 1) fail("negative powers are only allowed on monomials");
      SignedExponents exps = base.terms.begin()->first;
      const Scalar c = base.terms.begin()->second;
      for (auto& x : exps) x = static_cast<int>(-x * e);
      LaurentPolynomial r;
      Scalar coeff = 1;
      Scalar inv = field_.inv(c);
      for (long i = 0; i < e; ++i) coeff = field_.mul(coeff, inv);
      r.terms[exps] = coeff;
      return r;
    }
    LaurentPolynomial r = constant(1);
    for (long i = 0; i < e; ++i) r = mul(r, base);
    return r;
  }

  LaurentPolynomial atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return mul(constant(-1), power());
    }
    if (c == '(') {
      ++pos_;
      LaurentPolynomial inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant(Scalar(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      SignedExponents e{};
      e[static_cast<std::size_t>(it - names_.begin())] = 1;
      LaurentPolynomial r;
      r.terms[e] = 1;
      return r;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  const Field& field_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& names, const Field& field,
                                int line, int column_offset) {
  return Parser(text, names, field, line, column_offset).run();
}

Polynomial to_polynomial(const LaurentPolynomial& lp, const PolyRingPtr& ring) {
  std::vector<Term> terms;
  for (const auto& [e, c] : lp.terms) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (e[i] < 0) throw StructuralError("negative exponent where a polynomial is required");
      m.exp[i] = static_cast<std::uint16_t>(e[i]);
    }
    terms.push_back({m, c});
  }
  return Polynomial(ring, std::move(terms));
}

Polynomial parse_polynomial(std::string_view text, const PolyRingPtr& ring, int line, int column_offset) {
  LaurentPolynomial lp = parse_laurent(text, ring->names(), ring->field(), line, column_offset);
  for (const auto& [e, c] : lp.terms)
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] < 0) throw ParseError("negative exponent in a polynomial", line, column_offset + 1);
  return to_polynomial(lp, ring);
}

}  // namespace snc
