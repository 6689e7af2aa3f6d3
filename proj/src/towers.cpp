#include "snc/towers.hpp"

#include <algorithm>
#include <set>

#include "snc/errors.hpp"

namespace snc {

namespace {

std::string vec_text(const PolyVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

// Relations a^k * e_i for every generator.
std::vector<PolyVec> ideal_times_free(const CompletionTower& tower, int k, std::size_t rank, const RingPtr& ring) {
  std::vector<PolyVec> out;
  for (const auto& g : tower.ideal_power(k)) {
    for (std::size_t i = 0; i < rank; ++i) {
      PolyVec v(rank, ring->zero());
      v[i] = g.rebased(ring->ambient());
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

TowerModule::TowerModule(CompletionTower tower, std::vector<PresentedModule> levels, std::vector<Matrix> transitions)
    : tower_(std::move(tower)), levels_(std::move(levels)), transitions_(std::move(transitions)) {
  if (levels_.empty()) throw StructuralError("a tower module needs at least one level");
  if (static_cast<int>(levels_.size()) > tower_.depth()) throw StructuralError("tower module is deeper than its tower");
  if (transitions_.size() + 1 != levels_.size()) throw StructuralError("tower module needs one transition per level step");
  for (int n = 1; n <= depth(); ++n) {
    if (!level(n).ring()->same_presentation(*tower_.level(n))) {
      throw StructuralError("tower module level " + std::to_string(n) + " is over the wrong ring");
    }
  }
  for (int n = 1; n < depth(); ++n) {
    // Well-definedness of M_{n+1} -> M_n over the ring surjection.
    ModuleMap check(base_change(level(n + 1), tower_.transition(n)), level(n), transition(n));
    transitions_[static_cast<std::size_t>(n - 1)] = check.matrix();
  }
}

Matrix TowerModule::composite(int from, int to) const {
  if (to > from || to < 1 || from > depth()) throw StructuralError("invalid tower composite");
  Matrix m = Matrix::identity(level(from).ring(), level(from).n_gens());
  for (int n = from - 1; n >= to; --n) m = transition(n) * m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = level(to).ring()->normal_form(m.at(r, c));
  return m;
}

TowerModule module_to_tower(const PresentedModule& m, const CompletionTower& tower) {
  if (!m.ring()->same_presentation(*tower.base())) throw StructuralError("module is not over the tower's base ring");
  std::vector<PresentedModule> levels;
  std::vector<Matrix> transitions;
  for (int n = 1; n <= tower.depth(); ++n) {
    levels.push_back(base_change(m, tower.from_base(n)));
    if (n < tower.depth()) transitions.push_back(Matrix::identity(tower.level(n), m.n_gens()));
  }
  return TowerModule(tower, std::move(levels), std::move(transitions));
}

TowerVerdict is_cocartesian_tower(const TowerModule& t) {
  const CompletionTower& tower = t.tower();
  for (int l = 2; l <= t.depth(); ++l) {
    const RingPtr& ring = t.level(l).ring();
    const std::size_t al = t.level(l).n_gens();
    for (int k = 1; k < l; ++k) {
      const PresentedModule& mk = t.level(k);
      // M_k as a module over level l.
      std::vector<PolyVec> target = mk.relations();
      for (auto& v : target)
        for (auto& p : v) p = p.rebased(ring->ambient());
      for (auto& v : ideal_times_free(tower, k, mk.n_gens(), ring)) target.push_back(std::move(v));
      Matrix comp = t.composite(l, k);
      std::vector<PolyVec> images;
      for (auto col : comp.columns()) {
        for (auto& p : col) p = p.rebased(ring->ambient());
        images.push_back(std::move(col));
      }
      // Surjectivity.
      std::vector<PolyVec> span = target;
      span.insert(span.end(), images.begin(), images.end());
      SubmoduleBasis image(ring, mk.n_gens(), span);
      for (std::size_t i = 0; i < mk.n_gens(); ++i) {
        PolyVec e(mk.n_gens(), ring->zero());
        e[i] = ring->one();
        if (!image.contains(e)) return {false, k, l, "generator " + std::to_string(i + 1) + " of M_" +
                                                         std::to_string(k) + " is not in the image of M_" +
                                                         std::to_string(l)};
      }
      // Kernel equals a^k M_l.
      const auto kernel = kernel_generators(ring, mk.n_gens(), images, target);
      std::vector<PolyVec> expected = t.level(l).relations();
      for (auto& v : ideal_times_free(tower, k, al, ring)) expected.push_back(std::move(v));
      SubmoduleBasis ak(ring, al, expected);
      for (const auto& g : kernel) {
        if (!ak.contains(g)) {
          return {false, k, l, "kernel element " + vec_text(g) +
                                   " of M_" + std::to_string(l) + " -> M_" + std::to_string(k) + " is not in a^" +
                                   std::to_string(k) + " M_" + std::to_string(l)};
        }
      }
    }
  }
  return {};
}

StabilizedPresentation tower_stabilized_presentation(const TowerModule& t) {
  const TowerVerdict v = is_cocartesian_tower(t);
  if (!v.ok) throw StructuralError("tower is not coCartesian at (" + std::to_string(v.k) + ", " + std::to_string(v.l) + ")");
  const CompletionTower& tower = t.tower();
  const RingPtr& base = tower.base();
  const int depth = t.depth();
  const PresentedModule& top = t.level(depth);
  const std::size_t a = top.n_gens();

  // L_n: reduced basis of the level-n relations (read through the top level,
  // which is legitimate for coCartesian towers) minus what lies in a^n F.
  std::vector<PolyVec> lifted = top.relations();
  for (auto& col : lifted)
    for (auto& p : col) p = base->normal_form(p.rebased(base->ambient()));
  std::vector<std::vector<PolyVec>> l_sets;
  std::vector<std::set<std::string>> keys;
  for (int n = 1; n <= depth; ++n) {
    std::vector<PolyVec> gens = lifted;
    const auto an = ideal_times_free(tower, n, a, base);
    gens.insert(gens.end(), an.begin(), an.end());
    SubmoduleBasis sb(base, a, gens);
    SubmoduleBasis anf(base, a, an);
    std::vector<PolyVec> ln;
    std::set<std::string> key;
    for (const auto& b : sb.basis()) {
      if (anf.contains(b)) continue;
      key.insert(vec_text(b));
      ln.push_back(b);
    }
    l_sets.push_back(std::move(ln));
    keys.push_back(std::move(key));
  }
  int level = depth;
  while (level > 1 && keys[static_cast<std::size_t>(level - 2)] == keys[static_cast<std::size_t>(depth - 1)]) --level;
  if (depth < level + 2) {
    throw NoStabilization("relations have not stabilized: depth " + std::to_string(depth) +
                          " leaves no margin above level " + std::to_string(level));
  }
  PresentedModule result(base, a, l_sets[static_cast<std::size_t>(level - 1)]);
  // Re-verify levelwise.
  for (int n = 1; n <= depth; ++n) {
    ModuleMap m(base_change(result, tower.from_base(n)), t.level(n), t.composite(depth, n));
    if (!is_module_iso(m)) {
      throw NoStabilization("stabilized presentation disagrees with the tower at level " + std::to_string(n));
    }
  }
  return {result, level};
}

}  // namespace snc
