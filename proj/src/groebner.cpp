#include "snc/groebner.hpp"

#include <algorithm>
#include <map>

namespace snc {

namespace {

int degrevlex_restricted(const Monomial& a, const Monomial& b, std::size_t nvars, std::uint32_t mask) {
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

int lex_restricted(const Monomial& a, const Monomial& b, std::size_t nvars, std::uint32_t mask) {
  for (std::size_t i = 0; i < nvars; ++i) {
    if (!(mask >> i & 1u)) continue;
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int ModuleOrder::compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b,
                         std::size_t nvars) const {
  const auto ka = klass(ca), kb = klass(cb);
  if (ka != kb) return ka > kb ? 1 : -1;
  const std::uint32_t all = (1u << nvars) - 1u;
  if (elim_mask != 0) {
    if (int c = degrevlex_restricted(a, b, nvars, elim_mask & all)) return c;
  }
  if (ca != cb) return ca < cb ? 1 : -1;
  const std::uint32_t rest = all & ~elim_mask;
  return kind == MonomialOrder::Kind::Lex ? lex_restricted(a, b, nvars, rest)
                                          : degrevlex_restricted(a, b, nvars, rest);
}

int ModuleOrder::compare(const ModuleTerm& a, const ModuleTerm& b, std::size_t nvars) const {
  return compare(a.comp, a.mono, b.comp, b.mono, nvars);
}

ModuleGroebner::ModuleGroebner(std::size_t nvars, Field field, ModuleOrder order)
    : nvars_(nvars), field_(field), order_(std::move(order)) {}

void ModuleGroebner::sort(ModuleVec& v) const {
  for (auto& t : v) t.coeff = field_.reduce(t.coeff);
  std::sort(v.begin(), v.end(),
            [&](const ModuleTerm& a, const ModuleTerm& b) { return order_.compare(a, b, nvars_) > 0; });
  ModuleVec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = field_.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const ModuleTerm& t) { return t.coeff == 0; });
  v = std::move(out);
}

ModuleVec ModuleGroebner::add(const ModuleVec& a, const ModuleVec& b, const Scalar& scale_b) const {
  ModuleVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = order_.compare(a[i], b[j], nvars_);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      Scalar s = field_.mul(b[j].coeff, scale_b);
      if (s != 0) out.push_back({b[j].comp, b[j].mono, s});
      ++j;
    } else {
      Scalar s = field_.add(a[i].coeff, field_.mul(b[j].coeff, scale_b));
      if (s != 0) out.push_back({a[i].comp, a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

struct TermKey {
  std::uint32_t comp;
  Monomial mono;
};

// Working polynomial for reductions: a map ordered decreasing in the module order.
struct KeyLess {
  const ModuleOrder* order;
  std::size_t nvars;
  bool operator()(const TermKey& a, const TermKey& b) const {
    return order->compare(a.comp, a.mono, b.comp, b.mono, nvars) > 0;
  }
};

unsigned sugar_of(const ModuleVec& v) {
  unsigned s = 0;
  for (const auto& t : v) s = std::max(s, t.mono.degree());
  return s;
}

bool single_component(const ModuleVec& v) {
  for (const auto& t : v)
    if (t.comp != v.front().comp) return false;
  return true;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] && b.exp[i]) return false;
  return true;
}

}  // namespace

ModuleVec ModuleGroebner::reduce_against(const ModuleVec& v, const std::vector<ModuleVec>& basis, bool tail) const {
  std::map<TermKey, Scalar, KeyLess> work(KeyLess{&order_, nvars_});
  for (const auto& t : v) work.emplace(TermKey{t.comp, t.mono}, t.coeff);
  ModuleVec out;
  while (!work.empty()) {
    auto it = work.begin();
    const TermKey key = it->first;
    const Scalar c = it->second;
    const ModuleVec* reducer = nullptr;
    for (const auto& g : basis) {
      const auto& lt = g.front();
      if (lt.comp == key.comp && lt.mono.divides(key.mono)) {
        reducer = &g;
        break;
      }
    }
    if (!reducer) {
      out.push_back({key.comp, key.mono, c});
      work.erase(it);
      if (!tail) {
        for (auto& [k, s] : work) out.push_back({k.comp, k.mono, s});
        break;
      }
      continue;
    }
    const auto& lt = reducer->front();
    const Monomial shift = key.mono / lt.mono;
    const Scalar factor = field_.neg(field_.div(c, lt.coeff));
    work.erase(it);
    for (std::size_t k = 1; k < reducer->size(); ++k) {
      const auto& t = (*reducer)[k];
      TermKey tk{t.comp, t.mono * shift};
      Scalar add = field_.mul(t.coeff, factor);
      auto [pos, inserted] = work.emplace(tk, add);
      if (!inserted) {
        pos->second = field_.add(pos->second, add);
        if (pos->second == 0) work.erase(pos);
      }
    }
  }
  return out;
}

void ModuleGroebner::assume_basis(std::vector<ModuleVec> basis) {
  for (auto& b : basis) sort(b);
  std::erase_if(basis, [](const ModuleVec& b) { return b.empty(); });
  basis_ = std::move(basis);
}

ModuleVec ModuleGroebner::reduce(const ModuleVec& v) const { return reduce_against(v, basis_, true); }

void ModuleGroebner::compute(const std::vector<ModuleVec>& gens) {
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t comp;
    unsigned sugar;
  };
  std::vector<ModuleVec> g;
  std::vector<unsigned> sugar;
  std::vector<bool> live;
  std::vector<Pair> pairs;

  auto make_monic = [&](ModuleVec& v) {
    const Scalar inv = field_.inv(v.front().coeff);
    for (auto& t : v) t.coeff = field_.mul(t.coeff, inv);
  };

  auto insert = [&](ModuleVec h, unsigned h_sugar) {
    make_monic(h);
    const std::size_t k = g.size();
    const auto& lh = h.front();
    // Gebauer-Moeller: drop old pairs made redundant by the new leading term.
    std::erase_if(pairs, [&](const Pair& p) {
      if (p.comp != lh.comp || !lh.mono.divides(p.lcm)) return false;
      const Monomial li = lcm(g[p.i].front().mono, lh.mono);
      const Monomial lj = lcm(g[p.j].front().mono, lh.mono);
      return !(li == p.lcm) && !(lj == p.lcm);
    });
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i) {
      if (!live[i]) continue;
      const auto& li = g[i].front();
      if (li.comp != lh.comp) continue;
      const Monomial l = lcm(li.mono, lh.mono);
      const unsigned s = std::max(sugar[i] + (l.degree() - li.mono.degree()), h_sugar + (l.degree() - lh.mono.degree()));
      fresh.push_back({i, k, l, lh.comp, s});
    }
    // Chain criterion among the new pairs, keeping one pair per lcm.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
        if (a == b) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm) && !(fresh[b].lcm == fresh[a].lcm)) drop = true;
        if (fresh[b].lcm == fresh[a].lcm && b < a) drop = true;
      }
      if (drop) continue;
      const auto& gi = g[fresh[a].i];
      if (coprime(gi.front().mono, lh.mono) && single_component(gi) && single_component(h)) continue;
      kept.push_back(fresh[a]);
    }
    pairs.insert(pairs.end(), kept.begin(), kept.end());
    for (std::size_t i = 0; i < k; ++i) {
      if (live[i] && g[i].front().comp == lh.comp && lh.mono.divides(g[i].front().mono)) live[i] = false;
    }
    g.push_back(std::move(h));
    sugar.push_back(h_sugar);
    live.push_back(true);
  };

  auto live_basis = [&]() {
    std::vector<ModuleVec> b;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (live[i]) b.push_back(g[i]);
    return b;
  };

  // Seed with the generators, reduced against each other as they arrive.
  std::vector<ModuleVec> seeds;
  for (auto v : gens) {
    sort(v);
    if (!v.empty()) seeds.push_back(std::move(v));
  }
  std::sort(seeds.begin(), seeds.end(), [&](const ModuleVec& a, const ModuleVec& b) {
    return order_.compare(a.front(), b.front(), nvars_) < 0;
  });
  for (auto& v : seeds) {
    ModuleVec r = reduce_against(v, live_basis(), false);
    if (!r.empty()) insert(std::move(r), sugar_of(v));
  }

  std::vector<ModuleVec> current = live_basis();
  bool dirty = false;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return order_.compare(a.comp, a.lcm, b.comp, b.lcm, nvars_) < 0;
    });
    Pair p = *best;
    pairs.erase(best);
    const auto& gi = g[p.i];
    const auto& gj = g[p.j];
    ModuleVec si, sj;
    const Monomial mi = p.lcm / gi.front().mono;
    const Monomial mj = p.lcm / gj.front().mono;
    si.reserve(gi.size());
    for (const auto& t : gi) si.push_back({t.comp, t.mono * mi, t.coeff});
    sj.reserve(gj.size());
    for (const auto& t : gj) sj.push_back({t.comp, t.mono * mj, t.coeff});
    ModuleVec s = add(si, sj, field_.neg(1));
    if (s.empty()) continue;
    if (dirty) {
      current = live_basis();
      dirty = false;
    }
    ModuleVec r = reduce_against(s, current, false);
    if (!r.empty()) {
      insert(std::move(r), p.sugar);
      dirty = true;
    }
  }

  // Interreduce the minimal basis.
  std::vector<ModuleVec> minimal = live_basis();
  std::vector<ModuleVec> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModuleVec> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    ModuleVec r = reduce_against(minimal[i], others, true);
    if (r.empty()) continue;
    make_monic(r);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const ModuleVec& a, const ModuleVec& b) {
    return order_.compare(a.front(), b.front(), nvars_) > 0;
  });
  basis_ = std::move(reduced);
}

}  // namespace snc
