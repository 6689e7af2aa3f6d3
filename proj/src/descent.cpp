#include "snc/descent.hpp"

#include <algorithm>
#include <sstream>

#include "snc/errors.hpp"
#include "snc/towers.hpp"

namespace snc {

namespace {

std::string chain_text(const DivisorSpec& spec, const Chain& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " > Y" : "Y") + spec.stratum_name(c[i]);
  return s + ")";
}

}  // namespace

DescentDatum::DescentDatum(DivisorSpec spec, Precision prec, std::map<Stratum, PresentedModule> modules,
                           std::map<StratumPair, LaurentMatrix> rho)
    : DescentDatum(ring_diagram(spec, prec), std::move(modules), std::move(rho)) {}

DescentDatum::DescentDatum(RingDiagramPtr diagram, std::map<Stratum, PresentedModule> modules,
                           std::map<StratumPair, LaurentMatrix> rho)
    : diagram_(std::move(diagram)), modules_(std::move(modules)), rho_(std::move(rho)) {
  validate();
}

void DescentDatum::validate() {
  const DivisorSpec& sp = diagram_->spec();
  for (Stratum t = 0; t <= sp.full(); ++t) {
    auto it = modules_.find(t);
    if (it == modules_.end()) throw StructuralError("descent datum has no module on stratum Y" + sp.stratum_name(t));
    const RingPtr& lam = ring({t})->body_ring();
    if (!it->second.ring()->same_presentation(*lam)) {
      throw StructuralError("module on stratum Y" + sp.stratum_name(t) + " is not over " + lam->describe());
    }
  }
  for (Stratum y = 0; y <= sp.full(); ++y)
    for (Stratum z = 0; z <= sp.full(); ++z) {
      if (y == z || !contains(z, y)) continue;
      auto it = rho_.find({y, z});
      const std::string pair = "(Y" + sp.stratum_name(y) + ", Y" + sp.stratum_name(z) + ")";
      if (it == rho_.end()) throw StructuralError("descent datum has no comparison for " + pair);
      const LaurentMatrix& m = it->second;
      if (m.rows != modules_.at(z).n_gens() || m.columns.size() != modules_.at(y).n_gens()) {
        throw StructuralError("comparison for " + pair + " has the wrong shape");
      }
      const ChainRingPtr& r = ring({y, z});
      for (const auto& col : m.columns)
        for (const auto& e : col)
          if (!e.ring() || !e.ring()->same_structure(*r)) {
            throw StructuralError("comparison for " + pair + " is not over " + r->describe());
          }
    }
  for (const auto& [key, m] : rho_)
    if (key.first == key.second || !contains(key.second, key.first)) {
      throw ChainError("comparison given for a pair that is not a strict chain");
    }
}

const ChainRingPtr& DescentDatum::ring(const Chain& chain) const {
  const std::size_t o = diagram_->index().object_index(chain);
  if (o == IntSCategory::npos) throw ChainError("not a chain of strata");
  return diagram_->ring(o);
}

LaurentModule DescentDatum::laurent_module(Stratum t) const { return to_laurent(module(t), ring({t})); }

DescentDatum datum_from_module(const PresentedModule& m, const DivisorSpec& spec, const Precision& prec) {
  if (!m.ring()->same_presentation(*spec.ring())) throw StructuralError("module is not over the divisor's ring");
  std::map<Stratum, PresentedModule> modules;
  for (Stratum t = 0; t <= spec.full(); ++t) {
    StratumRing st(spec, t, prec);
    modules.emplace(t, base_change(m, RingMorphism::by_names(spec.ring(), st.lambda())));
  }
  RingDiagramPtr diagram = ring_diagram(spec, prec);
  std::map<StratumPair, LaurentMatrix> rho;
  for (Stratum y = 0; y <= spec.full(); ++y)
    for (Stratum z = 0; z <= spec.full(); ++z) {
      if (y == z || !contains(z, y)) continue;
      const std::size_t o = diagram->index().object_index({y, z});
      rho.emplace(StratumPair{y, z}, LaurentMatrix::identity(diagram->ring(o), m.n_gens()));
    }
  DescentDatum tmp(diagram, std::move(modules), std::move(rho));
  tmp.set_cocycle_valid(true);
  return tmp;
}

DiagramModule datum_diagram(const DescentDatum& d) {
  const RingDiagram& rd = *d.diagram();
  const IntSCategory& cat = rd.index();
  DiagramModule out;
  out.diagram = d.diagram();
  for (std::size_t o = 0; o < cat.objects().size(); ++o) {
    const Chain& c = cat.objects()[o].chain;
    const std::size_t base = cat.object_index({c.back()});
    LaurentModule lm = d.laurent_module(c.back());
    out.modules.push_back(o == base ? lm : base_change(lm, rd.map(cat.hom(base, o))));
  }
  for (std::size_t k = 0; k < cat.morphisms().size(); ++k) {
    const IntSMorphism& mor = cat.morphisms()[k];
    const Chain& src = cat.objects()[mor.source].chain;
    const Chain& tgt = cat.objects()[mor.target].chain;
    const ChainRingPtr& ring = rd.ring(mor.target);
    if (src.back() == tgt.back()) {
      out.structure.push_back(LaurentMatrix::identity(ring, d.module(tgt.back()).n_gens()));
      continue;
    }
    const std::size_t pair = cat.object_index({src.back(), tgt.back()});
    const LaurentMatrix& rho = d.rho(src.back(), tgt.back());
    out.structure.push_back(pair == mor.target ? rho : map_matrix(rd.map(cat.hom(pair, mor.target)), rho));
  }
  return out;
}

Verdict check_comparisons(const DescentDatum& d) {
  Verdict v;
  for (const auto& [key, rho] : d.comparisons()) {
    const ChainRingPtr& ring = d.ring({key.first, key.second});
    const ChainMap fy(d.ring({key.first}), ring);
    const ChainMap fz(d.ring({key.second}), ring);
    const LaurentModule src = base_change(d.laurent_module(key.first), fy);
    const LaurentModule tgt = base_change(d.laurent_module(key.second), fz);
    std::string why;
    if (!is_laurent_iso(src, tgt, rho, d.prec().level, &why)) {
      v.ok = false;
      v.witness = "comparison " + chain_text(d.spec(), {key.first, key.second}) + " is not an isomorphism: " + why;
      return v;
    }
  }
  return v;
}

Verdict check_cocycle(const DescentDatum& d) {
  const RingDiagram& rd = *d.diagram();
  const IntSCategory& cat = rd.index();
  const DivisorSpec& spec = d.spec();
  Verdict v;
  for (std::size_t o = 0; o < cat.objects().size(); ++o) {
    const Chain& c = cat.objects()[o].chain;
    if (c.size() != 3) continue;
    const ChainRingPtr& ring = rd.ring(o);
    auto lifted = [&](Stratum a, Stratum b) {
      const std::size_t po = cat.object_index({a, b});
      return map_matrix(rd.map(cat.hom(po, o)), d.rho(a, b));
    };
    const LaurentMatrix diff_a = lifted(c[1], c[2]) * lifted(c[0], c[1]);
    const LaurentMatrix direct = lifted(c[0], c[2]);

    // Relations of M_W over the triple ring, poles cleared and saturated.
    const LaurentModule mw =
        base_change(d.laurent_module(c[2]), rd.map(cat.hom(cat.object_index({c[2]}), o)));
    const RingPtr& body = ring->body_ring();
    const Polynomial pi = ring->pi();
    std::vector<PolyVec> rels;
    for (const auto& col : mw.relations) {
      int p = 0;
      for (const auto& e : col) p = std::max(p, e.pole_order());
      PolyVec cleared;
      for (const auto& e : col) cleared.push_back(e.body() * pi.pow(static_cast<unsigned>(p - e.pole_order())));
      rels.push_back(std::move(cleared));
    }
    if (ring->poles()) rels = saturate(body, mw.n_gens, rels, pi);

    int q = d.prec().level;
    std::vector<LaurentVec> cols;
    for (std::size_t j = 0; j < direct.columns.size(); ++j) {
      LaurentVec col;
      for (std::size_t i = 0; i < direct.rows; ++i) {
        LaurentElement e = diff_a.at(i, j) - direct.at(i, j);
        q = std::min(q, e.precision());
        col.push_back(e);
      }
      cols.push_back(std::move(col));
    }
    if (q < 1) throw PrecisionExhausted("cocycle check has no precision left");
    for (std::size_t i = 0; i < spec.n(); ++i) {
      if (!(ring->truncated() >> i & 1u)) continue;
      const Polynomial pw = Polynomial::variable(body->ambient(), spec.var(i)).pow(static_cast<unsigned>(q));
      for (std::size_t j = 0; j < mw.n_gens; ++j) {
        PolyVec e(mw.n_gens, body->zero());
        e[j] = pw;
        rels.push_back(std::move(e));
      }
    }
    SubmoduleBasis sb(body, mw.n_gens, rels);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      int p = 0;
      for (const auto& e : cols[j]) p = std::max(p, e.pole_order());
      PolyVec cleared;
      for (const auto& e : cols[j]) cleared.push_back(e.body() * pi.pow(static_cast<unsigned>(p - e.pole_order())));
      if (!sb.contains(cleared)) {
        v.ok = false;
        v.witness = "triple " + chain_text(spec, c) + ", column " + std::to_string(j);
        d.set_cocycle_valid(false);
        return v;
      }
    }
  }
  d.set_cocycle_valid(true);
  return v;
}

std::vector<StratumPair> refinement_edges(std::size_t n) {
  std::vector<StratumPair> out;
  for (std::size_t k = n; k-- > 0;) {
    for (Stratum t = 0; t < (Stratum{1} << k); ++t) out.emplace_back(t, t | (Stratum{1} << k));
  }
  return out;
}

namespace {

// Counit at stratum T: N (x) Lambda_T/(f^L) -> M_T/(f^L) sends generator j to
// t_T^K times the T-block of the j-th limit generator.
bool counit_holds(const DescentDatum& d, const KanLimit& lim, std::size_t block, int cap) {
  const DivisorSpec& spec = d.spec();
  const Stratum t = lim.vertices[block];
  StratumRing st(spec, t, Precision(lim.level, std::max(cap, lim.level)));
  const RingPtr level = st.level(lim.level);
  const auto& amb = st.lambda()->ambient();
  Monomial tk;
  for (std::size_t i = 0; i < spec.n(); ++i)
    if (st.inverse_var(i) >= 0) tk.exp[static_cast<std::size_t>(st.inverse_var(i))] = static_cast<std::uint16_t>(lim.half);
  const PresentedModule& mt = d.module(t);
  const std::size_t a = mt.n_gens();
  Matrix mat(level, a, lim.module.n_gens());
  for (std::size_t j = 0; j < lim.module.n_gens(); ++j)
    for (std::size_t i = 0; i < a; ++i) {
      const Polynomial& g = lim.generators.at(lim.offsets[block] + i, j);
      mat.at(i, j) = level->normal_form(g.rebased(amb).times_monomial(tk));
    }
  try {
    const PresentedModule src = base_change(lim.module, RingMorphism::by_names(spec.ring(), level));
    const PresentedModule tgt = base_change(mt, RingMorphism::by_names(st.lambda(), level));
    return is_module_iso(ModuleMap(src, tgt, mat));
  } catch (const StructuralError&) {
    return false;
  }
}

}  // namespace

GlueReport glue(const DescentDatum& d, const GlueOptions& options) {
  const Verdict cv = check_cocycle(d);
  if (!cv.ok) throw CocycleInvalid("cocycle condition fails: " + cv.witness);

  const DivisorSpec& spec = d.spec();
  const DiagramModule dm = datum_diagram(d);
  const IntSCategory& cat = d.diagram()->index();
  std::vector<std::size_t> slice;
  for (Stratum t = 0; t <= spec.full(); ++t) slice.push_back(cat.object_index({t}));
  const std::vector<StratumPair> edges = refinement_edges(spec.n());
  for (const auto& e : edges) slice.push_back(cat.object_index({e.first, e.second}));

  GlueReport report;
  for (int level = d.prec().level;; level *= 2) {
    if (level > d.prec().cap) {
      throw PrecisionExhausted("gluing did not verify up to the precision cap " + std::to_string(d.prec().cap));
    }
    report.attempts.push_back(level);
    KanLimit lim = kan_limit(dm, slice, level);
    std::vector<StratumVerdict> verdicts;
    bool all = true;
    for (std::size_t b = 0; b < lim.vertices.size(); ++b) {
      StratumVerdict sv;
      sv.stratum = lim.vertices[b];
      sv.name = "Y" + spec.stratum_name(sv.stratum);
      sv.counit = counit_holds(d, lim, b, d.prec().cap);
      all = all && sv.counit;
      verdicts.push_back(sv);
    }
    if (!all) continue;
    report.limit = std::move(lim);
    report.strata = std::move(verdicts);
    report.precision = level;
    break;
  }

  for (std::size_t k = 0; k < report.limit.edges.size(); ++k)
    report.edges.push_back({report.limit.edges[k], report.limit.edge_onto[k]});
  if (options.stabilization) {
    for (auto& sv : report.strata) {
      if (sv.stratum == 0) continue;
      StratumRing st(spec, sv.stratum, Precision(report.precision, std::max(d.prec().cap, report.precision)));
      try {
        const TowerModule tm = module_to_tower(d.module(sv.stratum), *st.tower());
        sv.stabilization = tower_stabilized_presentation(tm).level;
      } catch (const NoStabilization&) {
        sv.stabilization = -1;
      }
    }
  }
  bool edges_ok = true;
  for (const auto& e : report.edges) edges_ok = edges_ok && e.surjective;
  if (edges_ok) report.result = report.limit.module;
  return report;
}

RoundtripReport verify_roundtrip(const PresentedModule& m, const DivisorSpec& spec, const Precision& prec,
                                 const GlueOptions& options) {
  RoundtripReport out;
  const DescentDatum d = datum_from_module(m, spec, prec);
  out.glue = glue(d, options);
  const RingPtr& r = spec.ring();
  if (out.glue.ok()) {
    const KanLimit& lim = out.glue.limit;
    const std::size_t rank = lim.generators.rows();
    std::vector<PolyVec> gens = lim.generators.columns();
    Matrix mat(r, lim.module.n_gens(), m.n_gens());
    bool lifted = true;
    for (std::size_t i = 0; i < m.n_gens() && lifted; ++i) {
      PolyVec u(rank, r->zero());
      for (std::size_t b = 0; b < lim.vertices.size(); ++b) {
        const Polynomial uk = spec.product(spec.full() & ~lim.vertices[b], r->ambient()).pow(
            static_cast<unsigned>(lim.half));
        u[lim.offsets[b] + i] = uk;
      }
      auto c = lift(r, u, gens, lim.lattice_relations);
      if (!c) {
        lifted = false;
        break;
      }
      for (std::size_t j = 0; j < c->size(); ++j) mat.at(j, i) = (*c)[j];
    }
    if (lifted) {
      try {
        out.iso = is_module_iso(ModuleMap(m, lim.module, mat));
      } catch (const StructuralError&) {
        out.iso = false;
      }
    }
  }
  if (r->nvars() == 1 && !r->field().is_prime() && !r->has_relations()) {
    out.input_smith = smith_invariants(m);
    if (out.glue.ok()) out.output_smith = smith_invariants(*out.glue.result);
  }
  return out;
}

}  // namespace snc
