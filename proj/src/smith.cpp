#include "snc/smith.hpp"

#include <sstream>
#include <utility>

#include "snc/errors.hpp"

namespace snc {

namespace {

void trim(DensePoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long deg(const DensePoly& p) { return static_cast<long>(p.size()) - 1; }

DensePoly sub_mul(const DensePoly& a, const DensePoly& q, const DensePoly& b) {
  // a - q*b
  DensePoly out = a;
  if (q.empty() || b.empty()) return out;
  out.resize(std::max(a.size(), q.size() + b.size() - 1), Scalar(0));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

// Quotient and remainder of a by non-zero b.
std::pair<DensePoly, DensePoly> divmod(DensePoly a, const DensePoly& b) {
  DensePoly q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Scalar(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    const std::size_t shift = a.size() - b.size();
    const Scalar c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

DensePoly monic(DensePoly p) {
  if (p.empty()) return p;
  const Scalar lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

using DenseMatrix = std::vector<std::vector<DensePoly>>;

}  // namespace

std::string dense_to_string(const DensePoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Scalar c = p[i];
    const bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (i == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::string SmithInvariants::describe(const std::string& var) const {
  std::ostringstream os;
  os << "rank " << rank << "; invariant factors:";
  if (factors.empty()) os << " none";
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? ", " : " ") << dense_to_string(factors[i], var);
  return os.str();
}

SmithInvariants smith_invariants(const PresentedModule& m) {
  const RingPtr& ring = m.ring();
  if (ring->nvars() != 1 || ring->has_relations() || ring->field().is_prime()) {
    throw UnsupportedError("Smith invariants need the ring Q[x] without relations, got " + ring->describe());
  }
  const std::size_t rows = m.n_gens();
  const std::size_t cols = m.relations().size();
  DenseMatrix a(rows, std::vector<DensePoly>(cols));
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      for (const auto& t : m.relations()[c][r].terms()) {
        auto& p = a[r][c];
        const std::size_t e = t.mono.exp[0];
        if (p.size() <= e) p.resize(e + 1, Scalar(0));
        p[e] = t.coeff;
      }

  std::vector<DensePoly> diagonal;
  std::size_t k = 0;
  while (k < rows && k < cols) {
    // Each pass moves the least-degree entry of the block to (k, k) and
    // clears its row and column. A non-zero remainder or a failed
    // divisibility check forces another pass with a strictly smaller pivot.
    bool found = false;
    for (;;) {
      long best = -1;
      std::size_t pr = 0, pc = 0;
      for (std::size_t r = k; r < rows; ++r)
        for (std::size_t c = k; c < cols; ++c)
          if (!a[r][c].empty() && (best < 0 || deg(a[r][c]) < best)) {
            best = deg(a[r][c]);
            pr = r;
            pc = c;
          }
      if (best < 0) break;
      found = true;
      std::swap(a[k], a[pr]);
      for (auto& row : a) std::swap(row[k], row[pc]);
      const Scalar lc = a[k][k].back();
      for (std::size_t c = k; c < cols; ++c)
        for (auto& x : a[k][c]) x /= lc;

      bool clean = true;
      for (std::size_t r = k + 1; r < rows; ++r) {
        if (a[r][k].empty()) continue;
        auto q = divmod(a[r][k], a[k][k]).first;
        for (std::size_t c = k; c < cols; ++c) a[r][c] = sub_mul(a[r][c], q, a[k][c]);
        if (!a[r][k].empty()) clean = false;
      }
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (a[k][c].empty()) continue;
        auto q = divmod(a[k][c], a[k][k]).first;
        for (std::size_t r = k; r < rows; ++r) a[r][c] = sub_mul(a[r][c], q, a[r][k]);
        if (!a[k][c].empty()) clean = false;
      }
      if (!clean) continue;
      // Fold in a row the pivot does not divide.
      bool divides = true;
      for (std::size_t r = k + 1; r < rows && divides; ++r)
        for (std::size_t c = k + 1; c < cols && divides; ++c)
          if (!divmod(a[r][c], a[k][k]).second.empty()) {
            for (std::size_t j = k; j < cols; ++j) a[k][j] = sub_mul(a[k][j], {Scalar(-1)}, a[r][j]);
            divides = false;
          }
      if (divides) break;
    }
    if (!found) break;
    diagonal.push_back(monic(a[k][k]));
    ++k;
  }

  SmithInvariants out;
  out.rank = rows - diagonal.size();
  for (auto& d : diagonal)
    if (deg(d) > 0) out.factors.push_back(std::move(d));
  return out;
}

}  // namespace snc
