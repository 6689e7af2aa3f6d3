#include "snc/module.hpp"

#include <sstream>

#include "snc/errors.hpp"

namespace snc {

Matrix::Matrix(const RingPtr& ring, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, ring->zero()) {}

Matrix Matrix::identity(const RingPtr& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring->one();
  return m;
}

Matrix Matrix::from_columns(const RingPtr& ring, std::size_t rows, const std::vector<PolyVec>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw StructuralError("matrix column has the wrong length");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

PolyVec Matrix::column(std::size_t c) const {
  PolyVec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

std::vector<PolyVec> Matrix::columns() const {
  std::vector<PolyVec> out;
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw StructuralError("matrix product shape mismatch");
  Matrix m;
  m.rows_ = rows_;
  m.cols_ = o.cols_;
  PolyRingPtr ring;
  for (const auto& e : entries_)
    if (e.ring()) ring = e.ring();
  for (const auto& e : o.entries_)
    if (e.ring()) ring = e.ring();
  m.entries_.assign(rows_ * o.cols_, Polynomial(ring));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Polynomial& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Polynomial& b = o.at(k, j);
        if (!b.is_zero()) m.at(i, j) += a * b;
      }
    }
  return m;
}

PolyVec Matrix::apply(const PolyVec& v) const {
  if (v.size() != cols_) throw StructuralError("matrix-vector shape mismatch");
  PolyVec out;
  PolyRingPtr ring;
  for (const auto& e : entries_)
    if (e.ring()) ring = e.ring();
  for (std::size_t i = 0; i < rows_; ++i) {
    Polynomial acc(ring);
    for (std::size_t k = 0; k < cols_; ++k)
      if (!at(i, k).is_zero() && !v[k].is_zero()) acc += at(i, k) * v[k];
    out.push_back(std::move(acc));
  }
  return out;
}

PresentedModule::PresentedModule(RingPtr ring, std::size_t n_gens, const std::vector<PolyVec>& relations)
    : ring_(std::move(ring)), n_gens_(n_gens) {
  for (const auto& col : relations) {
    if (col.size() != n_gens_) throw StructuralError("relation column has the wrong length");
    PolyVec nf;
    bool nonzero = false;
    for (const auto& e : col) {
      nf.push_back(ring_->normal_form(e.ring() ? e : ring_->zero()));
      nonzero = nonzero || !nf.back().is_zero();
    }
    if (nonzero) relations_.push_back(std::move(nf));
  }
}

PresentedModule::PresentedModule(RingPtr ring, const Matrix& presentation)
    : PresentedModule(ring, presentation.rows(), presentation.columns()) {}

PresentedModule PresentedModule::free(const RingPtr& ring, std::size_t rank) { return PresentedModule(ring, rank, {}); }

PolyVec PresentedModule::generator(std::size_t i) const {
  PolyVec v = zero_vector();
  v.at(i) = ring_->one();
  return v;
}

PolyVec PresentedModule::zero_vector() const { return PolyVec(n_gens_, ring_->zero()); }

std::string PresentedModule::describe() const {
  std::ostringstream os;
  os << "coker over " << ring_->describe() << ", " << n_gens_ << " generator(s)";
  if (relations_.empty()) return os.str();
  os << ", relations:";
  for (const auto& col : relations_) {
    os << " (";
    for (std::size_t i = 0; i < col.size(); ++i) os << (i ? ", " : "") << col[i].to_string();
    os << ")";
  }
  return os.str();
}

ModuleVec to_module_vec(const PolyVec& v, std::uint32_t offset) {
  ModuleVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& t : v[i].terms()) out.push_back({static_cast<std::uint32_t>(offset + i), t.mono, t.coeff});
  return out;
}

PolyVec from_module_vec(const PolyRingPtr& ring, const ModuleVec& v, std::size_t rank, std::uint32_t offset) {
  std::vector<std::vector<Term>> parts(rank);
  for (const auto& t : v) {
    if (t.comp < offset || t.comp >= offset + rank) continue;
    parts[t.comp - offset].push_back({t.mono, t.coeff});
  }
  PolyVec out;
  for (auto& p : parts) out.emplace_back(ring, std::move(p));
  return out;
}

namespace {

std::vector<ModuleVec> ring_relation_vectors(const PresentedRing& ring, std::uint32_t first, std::uint32_t count) {
  std::vector<ModuleVec> out;
  for (std::uint32_t c = first; c < first + count; ++c)
    for (const auto& g : ring.relation_basis()) out.push_back(to_module_vec(g, c));
  return out;
}

PolyVec rebase_vec(const PolyVec& v, const PolyRingPtr& ring) {
  PolyVec out;
  for (const auto& p : v) out.push_back(p.ring() ? p.rebased(ring) : Polynomial(ring));
  return out;
}

bool all_zero_in(const PresentedRing& ring, const PolyVec& v) {
  for (const auto& p : v)
    if (!ring.is_zero(p)) return false;
  return true;
}

}  // namespace

SubmoduleBasis::SubmoduleBasis(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens,
                               std::uint32_t elim_mask)
    : ring_(ring), rank_(rank), engine_(ring->nvars(), ring->field(), ModuleOrder{{}, elim_mask}) {
  std::vector<ModuleVec> vs = ring_relation_vectors(*ring, 0, static_cast<std::uint32_t>(rank));
  for (const auto& g : gens) {
    if (g.size() != rank) throw StructuralError("submodule generator has the wrong length");
    vs.push_back(to_module_vec(g));
  }
  engine_.compute(vs);
}

PolyVec SubmoduleBasis::reduce(const PolyVec& v) const {
  return from_module_vec(ring_->ambient(), engine_.reduce(to_module_vec(v)), rank_);
}

bool SubmoduleBasis::contains(const PolyVec& v) const { return engine_.reduce(to_module_vec(v)).empty(); }

std::vector<PolyVec> SubmoduleBasis::basis() const {
  std::vector<PolyVec> out;
  for (const auto& b : engine_.basis()) out.push_back(from_module_vec(ring_->ambient(), b, rank_));
  return out;
}

std::vector<PolyVec> kernel_generators(const RingPtr& ring, std::size_t target_rank, const std::vector<PolyVec>& images,
                                       const std::vector<PolyVec>& target_relations, std::uint32_t elim_mask) {
  const auto r = static_cast<std::uint32_t>(target_rank);
  const auto s = static_cast<std::uint32_t>(images.size());
  ModuleOrder order;
  order.comp_class.assign(r + s, 0);
  for (std::uint32_t i = 0; i < r; ++i) order.comp_class[i] = 1;
  order.elim_mask = elim_mask;
  ModuleGroebner engine(ring->nvars(), ring->field(), order);

  std::vector<ModuleVec> gens = ring_relation_vectors(*ring, 0, r + s);
  for (std::uint32_t j = 0; j < s; ++j) {
    if (images[j].size() != target_rank) throw StructuralError("kernel: image has the wrong length");
    ModuleVec v = to_module_vec(images[j]);
    v.push_back({r + j, Monomial{}, Scalar(1)});
    gens.push_back(std::move(v));
  }
  for (const auto& rel : target_relations) {
    if (rel.size() != target_rank) throw StructuralError("kernel: relation has the wrong length");
    gens.push_back(to_module_vec(rel));
  }
  engine.compute(gens);

  std::vector<PolyVec> out;
  for (const auto& b : engine.basis()) {
    const auto& lt = b.front();
    if (lt.comp < r) continue;
    bool eliminated = false;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if ((elim_mask >> i & 1u) && lt.mono.exp[i]) eliminated = true;
    if (eliminated) continue;
    PolyVec c = from_module_vec(ring->ambient(), b, s, r);
    if (all_zero_in(*ring, c)) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<PolyVec> contract(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens,
                              std::uint32_t elim_mask) {
  SubmoduleBasis sb(ring, rank, gens, elim_mask);
  std::vector<PolyVec> out;
  for (const auto& b : sb.basis()) {
    bool free_of = true;
    for (const auto& p : b)
      for (std::size_t i = 0; i < ring->nvars(); ++i)
        if ((elim_mask >> i & 1u) && p.involves(i)) free_of = false;
    if (free_of) out.push_back(b);
  }
  return out;
}

std::vector<PolyVec> saturate(const RingPtr& ring, std::size_t rank, const std::vector<PolyVec>& gens,
                              const Polynomial& g) {
  if (g.is_constant() && !g.is_zero()) return gens;
  std::vector<std::string> names = ring->vars();
  names.push_back("_sat");
  auto amb = std::make_shared<PolyRing>(names, ring->field());
  std::vector<Polynomial> rels;
  for (const auto& r : ring->relation_basis()) rels.push_back(r.rebased(amb));
  rels.push_back(Polynomial::variable(amb, names.size() - 1) * g.rebased(amb) - Polynomial::constant(amb, 1));
  auto ext = std::make_shared<PresentedRing>(amb, rels);
  std::vector<PolyVec> lifted;
  for (const auto& v : gens) lifted.push_back(rebase_vec(v, amb));
  const std::uint32_t mask = 1u << (names.size() - 1);
  std::vector<PolyVec> out;
  for (const auto& v : contract(ext, rank, lifted, mask)) {
    PolyVec back = rebase_vec(v, ring->ambient());
    if (!all_zero_in(*ring, back)) out.push_back(std::move(back));
  }
  return out;
}

std::optional<PolyVec> lift(const RingPtr& ring, const PolyVec& u, const std::vector<PolyVec>& generators,
                            const std::vector<PolyVec>& relations) {
  const auto r = static_cast<std::uint32_t>(u.size());
  const auto s = static_cast<std::uint32_t>(generators.size());
  ModuleOrder order;
  order.comp_class.assign(r + s, 0);
  for (std::uint32_t i = 0; i < r; ++i) order.comp_class[i] = 1;
  ModuleGroebner engine(ring->nvars(), ring->field(), order);
  std::vector<ModuleVec> gens = ring_relation_vectors(*ring, 0, r);
  for (std::uint32_t j = 0; j < s; ++j) {
    ModuleVec v = to_module_vec(generators[j]);
    v.push_back({r + j, Monomial{}, Scalar(1)});
    gens.push_back(std::move(v));
  }
  for (const auto& rel : relations) gens.push_back(to_module_vec(rel));
  engine.compute(gens);
  ModuleVec target = to_module_vec(u);
  engine.sort(target);
  ModuleVec rem = engine.reduce(target);
  for (const auto& t : rem)
    if (t.comp < r) return std::nullopt;
  PolyVec c = from_module_vec(ring->ambient(), rem, s, r);
  for (auto& p : c) p = ring->normal_form(-p);
  return c;
}

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (source_.ring() != target_.ring() && !source_.ring()->same_presentation(*target_.ring())) {
    throw StructuralError("module map between modules over different rings");
  }
  if (matrix_.rows() != target_.n_gens() || matrix_.cols() != source_.n_gens()) {
    throw StructuralError("module map matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_.n_gens()) + "x" +
                          std::to_string(source_.n_gens()));
  }
  const RingPtr& ring = target_.ring();
  for (std::size_t r = 0; r < matrix_.rows(); ++r)
    for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_.at(r, c) = ring->normal_form(matrix_.at(r, c));
  if (source_.relations().empty()) return;
  SubmoduleBasis tgt(ring, target_.n_gens(), target_.relations());
  for (const auto& rel : source_.relations()) {
    if (!tgt.contains(matrix_.apply(rel))) {
      throw StructuralError("module map is ill-defined: a source relation does not map into the target relations");
    }
  }
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  return ModuleMap(m, m, Matrix::identity(m.ring(), m.n_gens()));
}

KernelResult syzygy_kernel(const ModuleMap& f) {
  const PresentedModule& src = f.source();
  const RingPtr& ring = src.ring();
  std::vector<PolyVec> gens = kernel_generators(ring, f.target().n_gens(), f.matrix().columns(), f.target().relations());
  std::vector<PolyVec> nonzero;
  if (!gens.empty()) {
    SubmoduleBasis rels(ring, src.n_gens(), src.relations());
    for (auto& g : gens) {
      PolyVec red = rels.reduce(g);
      bool zero = true;
      for (const auto& p : red) zero = zero && p.is_zero();
      if (!zero) nonzero.push_back(std::move(red));
    }
  }
  std::vector<PolyVec> relations;
  if (!nonzero.empty()) relations = kernel_generators(ring, src.n_gens(), nonzero, src.relations());
  PresentedModule k(ring, nonzero.size(), relations);
  Matrix incl = Matrix::from_columns(ring, src.n_gens(), nonzero);
  return {k, ModuleMap(k, src, incl)};
}

PresentedModule cokernel(const ModuleMap& f) {
  std::vector<PolyVec> rels = f.target().relations();
  for (auto& col : f.matrix().columns()) rels.push_back(std::move(col));
  return PresentedModule(f.target().ring(), f.target().n_gens(), rels);
}

PresentedModule base_change(const PresentedModule& m, const RingMorphism& phi) {
  if (m.ring() != phi.source() && !m.ring()->same_presentation(*phi.source())) {
    throw StructuralError("base_change: module is not over the morphism's source ring");
  }
  std::vector<PolyVec> rels;
  for (const auto& col : m.relations()) {
    PolyVec img;
    for (const auto& e : col) img.push_back(phi.apply(e));
    rels.push_back(std::move(img));
  }
  return PresentedModule(phi.target(), m.n_gens(), rels);
}

ModuleMap base_change(const ModuleMap& f, const RingMorphism& phi) {
  Matrix m(phi.target(), f.matrix().rows(), f.matrix().cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = phi.apply(f.matrix().at(r, c));
  return ModuleMap(base_change(f.source(), phi), base_change(f.target(), phi), m);
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  const std::size_t n = a.n_gens() + b.n_gens();
  std::vector<PolyVec> rels;
  for (const auto& col : a.relations()) {
    PolyVec v = col;
    v.resize(n, a.ring()->zero());
    rels.push_back(std::move(v));
  }
  for (const auto& col : b.relations()) {
    PolyVec v(a.n_gens(), a.ring()->zero());
    v.insert(v.end(), col.begin(), col.end());
    rels.push_back(std::move(v));
  }
  return PresentedModule(a.ring(), n, rels);
}

bool is_zero_element(const PresentedModule& m, const PolyVec& v) {
  SubmoduleBasis sb(m.ring(), m.n_gens(), m.relations());
  return sb.contains(v);
}

bool is_zero_module(const PresentedModule& m) {
  if (m.n_gens() == 0 || m.ring()->is_zero_ring()) return true;
  SubmoduleBasis sb(m.ring(), m.n_gens(), m.relations());
  for (std::size_t i = 0; i < m.n_gens(); ++i)
    if (!sb.contains(m.generator(i))) return false;
  return true;
}

bool is_module_iso(const ModuleMap& f) {
  if (!is_zero_module(cokernel(f))) return false;
  const PresentedModule& src = f.source();
  std::vector<PolyVec> gens =
      kernel_generators(src.ring(), f.target().n_gens(), f.matrix().columns(), f.target().relations());
  if (gens.empty()) return true;
  SubmoduleBasis rels(src.ring(), src.n_gens(), src.relations());
  for (const auto& g : gens)
    if (!rels.contains(g)) return false;
  return true;
}

PresentedModule prune(const PresentedModule& m) {
  const RingPtr& ring = m.ring();
  std::size_t n = m.n_gens();
  std::vector<PolyVec> rels = m.relations();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < rels.size() && !changed; ++c) {
      for (std::size_t i = 0; i < n && !changed; ++i) {
        if (!alive[i]) continue;
        const Polynomial& piv = rels[c][i];
        if (piv.is_zero() || !piv.is_constant()) continue;
        const Scalar inv = ring->field().inv(piv.leading().coeff);
        PolyVec pivot = rels[c];
        std::vector<PolyVec> next;
        for (std::size_t d = 0; d < rels.size(); ++d) {
          if (d == c) continue;
          PolyVec col = rels[d];
          const Polynomial factor = col[i].scaled(inv);
          if (!factor.is_zero()) {
            for (std::size_t k = 0; k < n; ++k) col[k] = ring->normal_form(col[k] - factor * pivot[k]);
          }
          next.push_back(std::move(col));
        }
        rels = std::move(next);
        alive[i] = false;
        changed = true;
      }
    }
  }
  std::vector<PolyVec> out;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += alive[i];
  for (const auto& col : rels) {
    PolyVec v;
    for (std::size_t i = 0; i < n; ++i)
      if (alive[i]) v.push_back(col[i]);
    out.push_back(std::move(v));
  }
  return PresentedModule(ring, count, out);
}

}  // namespace snc
