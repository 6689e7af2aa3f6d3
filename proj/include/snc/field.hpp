#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace snc {

using Scalar = mpq_class;

// Coefficient field: the rationals, or Z/p for a prime p < 2^31.
// Scalars are stored as mpq_class in both cases; in the prime case they are
// kept as canonical integers in [0, p).
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);

  bool is_prime() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar reduce(const Scalar& a) const;
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

// Parses "Q" / "QQ" / "rational" or a decimal prime.
Field parse_field(const std::string& text);

}  // namespace snc
