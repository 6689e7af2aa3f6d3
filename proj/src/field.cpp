#include "snc/field.hpp"

#include <stdexcept>

#include "snc/errors.hpp"

namespace snc {

namespace {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_number(p)) {
    throw UnsupportedError("field modulus must be a prime below 2^31, got " + std::to_string(p));
  }
  return Field(p);
}

Scalar Field::reduce(const Scalar& a) const {
  if (p_ == 0) return a;
  mpz_class num = a.get_num();
  mpz_class den = a.get_den();
  mpz_class mod = p_;
  mpz_class r;
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
      throw std::domain_error("denominator divisible by the field characteristic");
    }
    num *= inv;
  }
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
  return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw std::domain_error("division by zero in field");
  if (p_ == 0) return Scalar(1) / a;
  mpz_class r = reduce(a).get_num();
  mpz_class mod = p_;
  mpz_class out;
  mpz_invert(out.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return Scalar(out);
}

std::string Field::describe() const { return p_ == 0 ? std::string("Q") : "GF(" + std::to_string(p_) + ")"; }

Field parse_field(const std::string& text) {
  if (text == "Q" || text == "QQ" || text == "rational" || text == "rationals") return Field::rationals();
  std::size_t pos = 0;
  unsigned long long p = 0;
  try {
    p = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw UnsupportedError("unknown field '" + text + "'");
  }
  if (pos != text.size() || p > 0xffffffffULL) throw UnsupportedError("unknown field '" + text + "'");
  return Field::prime(static_cast<std::uint32_t>(p));
}

}  // namespace snc
