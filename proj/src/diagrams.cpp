#include "snc/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "snc/errors.hpp"

namespace snc {

// ---------------------------------------------------------------- poset and nerve

StrataPoset::StrataPoset(int n) : n_(n) {
  if (n < 1 || n > 5) throw UnsupportedError("strata poset supports 1..5 components, got " + std::to_string(n));
}

std::vector<Stratum> StrataPoset::elements() const {
  std::vector<Stratum> out;
  for (Stratum t = 0; t < (Stratum{1} << n_); ++t) out.push_back(t);
  return out;
}

std::vector<std::pair<Stratum, Stratum>> StrataPoset::strict_relations() const {
  std::vector<std::pair<Stratum, Stratum>> out;
  for (Stratum a : elements())
    for (Stratum b : elements())
      if (a != b && contains(b, a)) out.emplace_back(a, b);
  return out;
}

StrataPoset strata_poset(int n) { return StrataPoset(n); }

Nerve::Nerve(const StrataPoset& poset) : n_(poset.n()) {
  const Stratum full = (Stratum{1} << n_) - 1;
  std::vector<Chain> all;
  Chain cur;
  std::function<void()> extend = [&] {
    all.push_back(cur);
    for (Stratum t = 0; t <= full; ++t) {
      if (t == cur.back() || !contains(t, cur.back())) continue;
      cur.push_back(t);
      extend();
      cur.pop_back();
    }
  };
  for (Stratum t = 0; t <= full; ++t) {
    cur = {t};
    extend();
  }
  for (auto& c : all) {
    if (chains_.size() < c.size()) chains_.resize(c.size());
    chains_[c.size() - 1].push_back(std::move(c));
  }
  for (auto& s : chains_) std::sort(s.begin(), s.end());
}

const std::vector<Chain>& Nerve::chains(int m) const {
  static const std::vector<Chain> kEmpty;
  if (m < 1 || m > max_length()) return kEmpty;
  return chains_[static_cast<std::size_t>(m - 1)];
}

Chain Nerve::face(const Chain& c, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= c.size() || c.size() < 2) {
    throw StructuralError("face index out of range");
  }
  Chain out = c;
  out.erase(out.begin() + i);
  return out;
}

Nerve nerve(const StrataPoset& poset) { return Nerve(poset); }

// ---------------------------------------------------------------- integral of S

namespace {

// Positions of sub inside chain, if sub is a subsequence.
std::optional<std::vector<int>> embedding(const Chain& sub, const Chain& chain) {
  std::vector<int> mu;
  std::size_t j = 0;
  for (Stratum s : sub) {
    while (j < chain.size() && chain[j] != s) ++j;
    if (j == chain.size()) return std::nullopt;
    mu.push_back(static_cast<int>(j++));
  }
  return mu;
}

}  // namespace

IntSCategory::IntSCategory(const Nerve& nerve) {
  for (int m = 1; m <= nerve.max_length(); ++m)
    for (const auto& c : nerve.chains(m)) objects_.push_back({c});
  const std::size_t n = objects_.size();
  hom_.assign(n, std::vector<std::size_t>(n, npos));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (objects_[a].chain.size() > objects_[b].chain.size()) continue;
      auto mu = embedding(objects_[a].chain, objects_[b].chain);
      if (!mu) continue;
      hom_[a][b] = morphisms_.size();
      morphisms_.push_back({a, b, *mu});
    }
}

std::size_t IntSCategory::object_index(const Chain& c) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i].chain == c) return i;
  return npos;
}

std::size_t IntSCategory::hom(std::size_t a, std::size_t b) const { return hom_.at(a).at(b); }

std::size_t IntSCategory::compose(std::size_t f, std::size_t g) const {
  const IntSMorphism& mf = morphisms_.at(f);
  const IntSMorphism& mg = morphisms_.at(g);
  if (mf.target != mg.source) throw StructuralError("morphisms are not composable");
  const std::size_t h = hom(mf.source, mg.target);
  // Every composite of embeddings is an embedding, so h always exists.
  if (h == npos) throw StructuralError("composition table is not closed");
  std::vector<int> mu;
  for (int p : mf.mu) mu.push_back(mg.mu[static_cast<std::size_t>(p)]);
  if (mu != morphisms_[h].mu) throw StructuralError("composite disagrees with the stored morphism");
  return h;
}

std::size_t IntSCategory::non_identity_count() const {
  return static_cast<std::size_t>(
      std::count_if(morphisms_.begin(), morphisms_.end(), [](const IntSMorphism& m) { return !m.identity(); }));
}

IntSCategory grothendieck_construction(const Nerve& nerve) { return IntSCategory(nerve); }

// ---------------------------------------------------------------- ring diagram

RingDiagram::RingDiagram(const DivisorSpec& spec, const Precision& prec)
    : spec_(spec), prec_(prec), index_(nerve(strata_poset(static_cast<int>(spec.n())))) {
  for (const auto& o : index_.objects()) rings_.push_back(chain_ring(spec, o.chain, prec));
  for (const auto& m : index_.morphisms()) maps_.emplace_back(rings_[m.source], rings_[m.target]);
}

bool RingDiagram::functorial(std::string* witness) const {
  const auto& ms = index_.morphisms();
  for (std::size_t f = 0; f < ms.size(); ++f) {
    const ChainRingPtr& src = rings_[ms[f].source];
    const auto& amb = src->body_ring()->ambient();
    for (std::size_t g = 0; g < ms.size(); ++g) {
      if (ms[g].source != ms[f].target) continue;
      const std::size_t h = index_.compose(f, g);
      for (std::size_t v = 0; v < amb->nvars(); ++v) {
        const LaurentElement x = src->element(Polynomial::variable(amb, v));
        const LaurentElement two = maps_[g].apply(maps_[f].apply(x));
        const LaurentElement one = maps_[h].apply(x);
        if (!(two - one).is_zero()) {
          if (witness) {
            *witness = "generator " + amb->names()[v] + " along morphisms " + std::to_string(f) + ", " +
                       std::to_string(g);
          }
          return false;
        }
      }
    }
    // Identities go to identities.
    if (ms[f].identity()) {
      for (std::size_t v = 0; v < amb->nvars(); ++v) {
        const LaurentElement x = src->element(Polynomial::variable(amb, v));
        if (!(maps_[f].apply(x) - x).is_zero()) {
          if (witness) *witness = "identity morphism " + std::to_string(f) + " moves " + amb->names()[v];
          return false;
        }
      }
    }
  }
  return true;
}

RingDiagramPtr ring_diagram(const DivisorSpec& spec, const Precision& prec) {
  return std::make_shared<const RingDiagram>(spec, prec);
}

// ---------------------------------------------------------------- Laurent modules

LaurentMatrix LaurentMatrix::identity(const ChainRingPtr& ring, std::size_t n) {
  LaurentMatrix m;
  m.rows = n;
  m.columns.assign(n, LaurentVec(n, ring->zero()));
  for (std::size_t i = 0; i < n; ++i) m.columns[i][i] = ring->one();
  return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
  if (columns.size() != o.rows) throw StructuralError("Laurent matrix shapes do not match");
  LaurentMatrix out;
  out.rows = rows;
  for (const auto& oc : o.columns) {
    LaurentVec col;
    for (std::size_t r = 0; r < rows; ++r) {
      LaurentElement acc = oc.empty() ? LaurentElement() : oc[0].ring()->zero();
      for (std::size_t k = 0; k < columns.size(); ++k) acc = acc + columns[k][r] * oc[k];
      col.push_back(acc);
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

LaurentModule to_laurent(const PresentedModule& m, const ChainRingPtr& ring) {
  const auto& amb = ring->body_ring()->ambient();
  LaurentModule out{ring, m.n_gens(), {}};
  for (const auto& rel : m.relations()) {
    LaurentVec v;
    for (const auto& p : rel) v.push_back(ring->element(p.rebased(amb)));
    out.relations.push_back(std::move(v));
  }
  return out;
}

LaurentVec map_vec(const ChainMap& f, const LaurentVec& v) {
  LaurentVec out;
  for (const auto& e : v) out.push_back(f.apply(e));
  return out;
}

LaurentMatrix map_matrix(const ChainMap& f, const LaurentMatrix& m) {
  LaurentMatrix out;
  out.rows = m.rows;
  for (const auto& c : m.columns) out.columns.push_back(map_vec(f, c));
  return out;
}

LaurentModule base_change(const LaurentModule& m, const ChainMap& f) {
  LaurentModule out{f.target(), m.n_gens, {}};
  for (const auto& r : m.relations) out.relations.push_back(map_vec(f, r));
  return out;
}

namespace {

int vec_pole(const LaurentVec& v) {
  int n = 0;
  for (const auto& e : v) n = std::max(n, e.pole_order());
  return n;
}

int vec_precision(const LaurentVec& v) {
  int p = LaurentElement::kExact;
  for (const auto& e : v) p = std::min(p, e.precision());
  return p;
}

// pi^shift * pi^pole(v) * v as bodies.
PolyVec clear_poles(const ChainRing& ring, const LaurentVec& v, int pole, int shift = 0) {
  const Polynomial pi = ring.pi();
  PolyVec out;
  for (const auto& e : v) {
    const unsigned s = static_cast<unsigned>(pole - e.pole_order() + shift);
    out.push_back(ring.body_ring()->normal_form(s ? e.body() * pi.pow(s) : e.body()));
  }
  return out;
}

Polynomial comp_power(const ChainRing& ring, std::size_t i, int e) {
  return Polynomial::variable(ring.body_ring()->ambient(), ring.spec().var(i)).pow(static_cast<unsigned>(e));
}

// f_i^e(i) * e_j for every truncated component i and every j < rank.
void add_truncation(std::vector<PolyVec>& gens, const ChainRing& ring, std::size_t rank,
                    const std::function<int(std::size_t)>& exponent) {
  for (std::size_t i = 0; i < ring.spec().n(); ++i) {
    if (!(ring.truncated() >> i & 1u)) continue;
    const Polynomial p = comp_power(ring, i, exponent(i));
    for (std::size_t j = 0; j < rank; ++j) {
      PolyVec v(rank, ring.body_ring()->zero());
      v[j] = p;
      gens.push_back(std::move(v));
    }
  }
}

std::string vec_text(const PolyVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

}  // namespace

bool is_laurent_iso(const LaurentModule& source, const LaurentModule& target, const LaurentMatrix& matrix, int q,
                    std::string* witness) {
  const ChainRing& ring = *target.ring;
  const RingPtr& body = ring.body_ring();
  const std::size_t as = source.n_gens;
  const std::size_t at = target.n_gens;
  if (matrix.rows != at || matrix.columns.size() != as) throw StructuralError("Laurent matrix has the wrong shape");
  for (const auto& c : matrix.columns) q = std::min(q, vec_precision(c));
  for (const auto& c : source.relations) q = std::min(q, vec_precision(c));
  for (const auto& c : target.relations) q = std::min(q, vec_precision(c));
  if (q >= LaurentElement::kExact / 2) q = ring.precision();
  if (q < 2) throw PrecisionExhausted("too little precision left to compare modules");

  int np = 0;
  for (const auto& c : matrix.columns) np = std::max(np, vec_pole(c));
  std::vector<PolyVec> rho0;
  for (const auto& c : matrix.columns) rho0.push_back(clear_poles(ring, c, np));

  const bool has_poles = ring.poles() != 0;
  const Polynomial pi = ring.pi();
  auto saturated = [&](const LaurentModule& m) {
    std::vector<PolyVec> rels;
    for (const auto& c : m.relations) rels.push_back(clear_poles(ring, c, vec_pole(c)));
    return has_poles ? saturate(body, m.n_gens, rels, pi) : rels;
  };
  const std::vector<PolyVec> sat_src = saturated(source);
  const std::vector<PolyVec> sat_tgt = saturated(target);
  const int h = has_poles ? q / 2 : 0;

  std::vector<PolyVec> tgt_rels = sat_tgt;
  add_truncation(tgt_rels, ring, at, [&](std::size_t) { return q; });

  // Cokernel: pi^h e_i must lie in the image.
  std::vector<PolyVec> image = rho0;
  image.insert(image.end(), tgt_rels.begin(), tgt_rels.end());
  SubmoduleBasis img(body, at, image);
  const Polynomial pih = pi.pow(static_cast<unsigned>(h));
  for (std::size_t i = 0; i < at; ++i) {
    PolyVec e(at, body->zero());
    e[i] = pih;
    if (!img.contains(e)) {
      if (witness) *witness = "generator " + std::to_string(i) + " of the target is not reached";
      return false;
    }
  }

  // Kernel: everything sent to zero must already vanish in the source.
  std::vector<PolyVec> kernel;
  if (at == 0) {
    for (std::size_t j = 0; j < as; ++j) {
      PolyVec e(as, body->zero());
      e[j] = body->one();
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = kernel_generators(body, at, rho0, tgt_rels);
  }
  std::vector<PolyVec> src_rels = sat_src;
  add_truncation(src_rels, ring, as, [&](std::size_t i) { return (ring.poles() >> i & 1u) ? q - h : q; });
  SubmoduleBasis src(body, as, src_rels);
  for (const auto& k : kernel) {
    if (!src.contains(k)) {
      if (witness) *witness = "kernel element " + vec_text(k);
      return false;
    }
  }
  return true;
}

namespace {

std::string object_text(const IntSObject& o, const DivisorSpec* spec) {
  std::ostringstream os;
  os << "(" << o.m() << ", [";
  // The chain is printed as decreasing strata Y_1 > ... > Y_m.
  for (std::size_t i = 0; i < o.chain.size(); ++i) {
    if (i) os << " > ";
    os << "Y" << (spec ? spec->stratum_name(o.chain[i]) : std::to_string(o.chain[i]));
  }
  os << "])";
  return os.str();
}

}  // namespace

DiagramVerdict is_cocartesian_diagram(const DiagramModule& m) {
  const RingDiagram& d = *m.diagram;
  const auto& ms = d.index().morphisms();
  if (m.modules.size() != d.index().objects().size() || m.structure.size() != ms.size()) {
    throw StructuralError("diagram module does not match its index category");
  }
  DiagramVerdict v;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].identity()) continue;
    const LaurentModule src = base_change(m.modules[ms[k].source], d.map(k));
    std::string why;
    if (!is_laurent_iso(src, m.modules[ms[k].target], m.structure[k], d.prec().level, &why)) {
      v.ok = false;
      v.morphism = k;
      v.witness = object_text(d.index().objects()[ms[k].source], &d.spec()) + " -> " +
                  object_text(d.index().objects()[ms[k].target], &d.spec()) + ": " + why;
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------- limits

namespace {

PolyVec rebase_all(const PolyVec& v, const PolyRingPtr& amb) {
  PolyVec out;
  for (const auto& p : v) out.push_back(p.rebased(amb));
  return out;
}

// Multiplies by u^c with c the largest inverse-variable degree, then reduces
// so no inverse variable survives; the result is read in R.
PolyVec clear_inverses(const ChainRing& ring, const PolyVec& v, const PolyRingPtr& base) {
  const StratumRing& st = ring.deepest();
  unsigned c = 0;
  for (const auto& p : v)
    for (std::size_t i = 0; i < ring.spec().n(); ++i)
      if (st.inverse_var(i) >= 0) c = std::max(c, p.degree_in(static_cast<std::size_t>(st.inverse_var(i))));
  const Polynomial u = st.unit_product().pow(c);
  PolyVec out;
  for (const auto& p : v) out.push_back(rebase_all({st.lambda()->normal_form(p * u)}, base)[0]);
  return out;
}

std::uint32_t inverse_mask(const StratumRing& st, std::size_t n) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (st.inverse_var(i) >= 0) mask |= 1u << st.inverse_var(i);
  return mask;
}

}  // namespace

KanLimit kan_limit(const DiagramModule& m, const std::vector<std::size_t>& slice, int level) {
  const RingDiagram& d = *m.diagram;
  const IntSCategory& cat = d.index();
  const DivisorSpec& spec = d.spec();
  const RingPtr& r = spec.ring();
  const auto& ramb = r->ambient();
  if (level < 2) throw PrecisionExhausted("limit needs precision level >= 2");

  KanLimit out;
  out.level = level;
  out.half = (level + 1) / 2;
  const int L = level;
  const int K = out.half;

  std::vector<std::size_t> vertex_objs;
  std::vector<std::size_t> edge_objs;
  for (std::size_t o : slice) {
    const int len = cat.objects().at(o).m();
    if (len == 1) {
      vertex_objs.push_back(o);
    } else if (len == 2) {
      edge_objs.push_back(o);
    } else {
      // Longer chains only restate conditions already imposed along edges.
    }
  }
  if (vertex_objs.empty()) throw UnsupportedError("limit slice has no stratum objects");
  std::sort(vertex_objs.begin(), vertex_objs.end());
  std::vector<std::size_t> block(cat.objects().size(), IntSCategory::npos);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < vertex_objs.size(); ++k) {
    block[vertex_objs[k]] = k;
    out.vertices.push_back(cat.objects()[vertex_objs[k]].chain[0]);
    out.offsets.push_back(rank);
    rank += m.modules[vertex_objs[k]].n_gens;
  }

  // Lattices C_T = contraction of (P_T + f_i^L, i in T) to R.
  for (std::size_t k = 0; k < vertex_objs.size(); ++k) {
    const LaurentModule& mt = m.modules[vertex_objs[k]];
    const ChainRing& ring = *mt.ring;
    const RingPtr& lam = ring.body_ring();
    std::vector<PolyVec> gens;
    for (const auto& c : mt.relations) {
      if (vec_pole(c) != 0) throw StructuralError("stratum module relations must not have poles");
      gens.push_back(clear_poles(ring, c, 0));
    }
    add_truncation(gens, ring, mt.n_gens, [&](std::size_t) { return L; });
    for (const auto& v : contract(lam, mt.n_gens, gens, inverse_mask(ring.deepest(), spec.n()))) {
      PolyVec full(rank, r->zero());
      for (std::size_t j = 0; j < v.size(); ++j) full[out.offsets[k] + j] = v[j].rebased(ramb);
      out.lattice_relations.push_back(std::move(full));
    }
  }

  // Equalizer conditions A v_Y - B v_Z in C'_c for each edge object c.
  std::size_t target_rank = 0;
  std::vector<PolyVec> images(rank);
  std::vector<PolyVec> target_rels;
  struct EdgeBlock {
    std::size_t offset;
    std::vector<PolyVec> a, b;  // columns
    std::size_t y, z;
    std::vector<PolyVec> rels;
  };
  std::vector<EdgeBlock> blocks;
  for (std::size_t c : edge_objs) {
    const Chain& ch = cat.objects()[c].chain;
    const std::size_t oy = cat.object_index({ch[0]});
    const std::size_t oz = cat.object_index({ch[1]});
    if (block[oy] == IntSCategory::npos || block[oz] == IntSCategory::npos) continue;
    const ChainRing& ring = *m.modules[c].ring;
    const LaurentMatrix& sy = m.structure[cat.hom(oy, c)];
    const LaurentMatrix& sz = m.structure[cat.hom(oz, c)];
    int ny = 0, nz = 0;
    for (const auto& col : sy.columns) ny = std::max(ny, vec_pole(col));
    for (const auto& col : sz.columns) nz = std::max(nz, vec_pole(col));
    const int e = std::max(ny + K, nz);
    for (const auto& col : sy.columns) {
      const int p = vec_precision(col);
      if (p < LaurentElement::kExact / 2 && p < L + K + vec_pole(col)) {
        throw PrecisionExhausted("comparison map over " + ring.describe() + " is known to precision " +
                                 std::to_string(p) + ", gluing at level " + std::to_string(L) + " needs " +
                                 std::to_string(L + K + vec_pole(col)));
      }
    }
    for (const auto& col : sz.columns) {
      const int p = vec_precision(col);
      if (p < LaurentElement::kExact / 2 && p < L + e) {
        throw PrecisionExhausted("comparison map over " + ring.describe() + " is known to precision " +
                                 std::to_string(p) + ", gluing at level " + std::to_string(L) + " needs " +
                                 std::to_string(L + e));
      }
    }
    EdgeBlock eb{target_rank, {}, {}, block[oy], block[oz], {}};
    std::vector<PolyVec> bodies_a, bodies_b;
    for (const auto& col : sy.columns) bodies_a.push_back(clear_poles(ring, col, ny, e - ny - K));
    for (const auto& col : sz.columns) bodies_b.push_back(clear_poles(ring, col, nz, e - nz));
    // One common power of u_Z clears inverse variables on both sides.
    std::vector<PolyVec> joint = bodies_a;
    joint.insert(joint.end(), bodies_b.begin(), bodies_b.end());
    PolyVec flat;
    for (const auto& v : joint) flat.insert(flat.end(), v.begin(), v.end());
    const PolyVec cleared = flat.empty() ? flat : clear_inverses(ring, flat, ramb);
    const std::size_t ac = m.modules[c].n_gens;
    std::size_t pos = 0;
    for (std::size_t j = 0; j < bodies_a.size(); ++j, pos += ac)
      eb.a.emplace_back(cleared.begin() + static_cast<long>(pos), cleared.begin() + static_cast<long>(pos + ac));
    for (std::size_t j = 0; j < bodies_b.size(); ++j, pos += ac)
      eb.b.emplace_back(cleared.begin() + static_cast<long>(pos), cleared.begin() + static_cast<long>(pos + ac));

    std::vector<PolyVec> prc;
    for (const auto& col : m.modules[c].relations) {
      PolyVec body = clear_poles(ring, col, vec_pole(col));
      prc.push_back(clear_inverses(ring, body, ramb));
    }
    const Polynomial uz = spec.product(spec.full() & ~ring.truncated(), ramb);
    const Polynomial pi = spec.product(ring.poles(), ramb);
    std::vector<PolyVec> s1 = saturate(r, ac, prc, pi * uz);
    for (std::size_t i = 0; i < spec.n(); ++i) {
      int ex = 0;
      if (ring.poles() >> i & 1u) {
        ex = L + e;
      } else if (ring.chain().front() >> i & 1u) {
        ex = L;
      } else {
        continue;
      }
      const Polynomial p = r->var(spec.var(i)).pow(static_cast<unsigned>(ex));
      for (std::size_t j = 0; j < ac; ++j) {
        PolyVec v(ac, r->zero());
        v[j] = p;
        s1.push_back(std::move(v));
      }
    }
    eb.rels = saturate(r, ac, s1, uz);
    {
      std::vector<PolyVec> span = eb.a;
      span.insert(span.end(), eb.b.begin(), eb.b.end());
      span.insert(span.end(), eb.rels.begin(), eb.rels.end());
      SubmoduleBasis sb(r, ac, span);
      const Polynomial pe = pi.pow(static_cast<unsigned>(e));
      bool onto = true;
      for (std::size_t i = 0; i < ac && onto; ++i) {
        PolyVec v(ac, r->zero());
        v[i] = pe;
        onto = sb.contains(v);
      }
      out.edges.emplace_back(ch[0], ch[1]);
      out.edge_onto.push_back(onto);
    }
    target_rank += ac;
    blocks.push_back(std::move(eb));
  }

  for (auto& img : images) img.assign(target_rank, r->zero());
  for (const auto& eb : blocks) {
    const std::size_t ac = eb.a.empty() ? (eb.b.empty() ? 0 : eb.b[0].size()) : eb.a[0].size();
    for (std::size_t j = 0; j < eb.a.size(); ++j)
      for (std::size_t i = 0; i < ac; ++i) images[out.offsets[eb.y] + j][eb.offset + i] += eb.a[j][i];
    for (std::size_t j = 0; j < eb.b.size(); ++j)
      for (std::size_t i = 0; i < ac; ++i) images[out.offsets[eb.z] + j][eb.offset + i] -= eb.b[j][i];
    for (const auto& rel : eb.rels) {
      PolyVec full(target_rank, r->zero());
      for (std::size_t i = 0; i < ac; ++i) full[eb.offset + i] = rel[i];
      target_rels.push_back(std::move(full));
    }
  }

  std::vector<PolyVec> kernel;
  if (target_rank == 0) {
    for (std::size_t j = 0; j < rank; ++j) {
      PolyVec e(rank, r->zero());
      e[j] = r->one();
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = kernel_generators(r, target_rank, images, target_rels);
  }
  // Drop generators already inside the lattice relations.
  SubmoduleBasis lattice(r, rank, out.lattice_relations);
  std::vector<PolyVec> gens;
  for (const auto& k : kernel) {
    PolyVec red = lattice.reduce(k);
    bool zero = true;
    for (const auto& p : red) zero = zero && p.is_zero();
    if (!zero) gens.push_back(std::move(red));
  }
  std::vector<PolyVec> rels;
  if (!gens.empty()) rels = kernel_generators(r, rank, gens, out.lattice_relations);
  out.module = PresentedModule(r, gens.size(), rels);
  out.generators = Matrix::from_columns(r, rank, gens);
  return out;
}

// ---------------------------------------------------------------- listings

std::string describe_nerve(const Nerve& nv, const DivisorSpec* spec) {
  std::ostringstream os;
  for (int m = 1; m <= nv.max_length(); ++m) {
    os << "S_" << m << " (" << nv.count(m) << "):\n";
    for (const auto& c : nv.chains(m)) os << "  " << object_text({c}, spec) << "\n";
  }
  return os.str();
}

std::string describe_int_s(const IntSCategory& cat, const DivisorSpec* spec) {
  std::ostringstream os;
  os << "objects (" << cat.objects().size() << "):\n";
  for (std::size_t i = 0; i < cat.objects().size(); ++i)
    os << "  " << i << ": " << object_text(cat.objects()[i], spec) << "\n";
  os << "non-identity morphisms (" << cat.non_identity_count() << "):\n";
  for (const auto& m : cat.morphisms()) {
    if (m.identity()) continue;
    os << "  " << m.source << " -> " << m.target << "  mu = (";
    for (std::size_t k = 0; k < m.mu.size(); ++k) os << (k ? "," : "") << m.mu[k];
    os << ")\n";
  }
  return os.str();
}

}  // namespace snc
