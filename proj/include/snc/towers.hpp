#pragma once

#include <string>
#include <vector>

#include "snc/module.hpp"
#include "snc/ring_constructors.hpp"

namespace snc {

// Compatible modules M_n over the levels R/a^n of a completion tower.
class TowerModule {
 public:
  // levels[n-1] lives over tower.level(n); transitions[n-1] is the matrix of
  // M_{n+1} -> M_n with entries read in level n. Throws StructuralError when
  // some transition is ill-defined.
  TowerModule(CompletionTower tower, std::vector<PresentedModule> levels, std::vector<Matrix> transitions);

  const CompletionTower& tower() const { return tower_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const PresentedModule& level(int n) const { return levels_.at(static_cast<std::size_t>(n - 1)); }
  const Matrix& transition(int n) const { return transitions_.at(static_cast<std::size_t>(n - 1)); }
  // Matrix of M_from -> M_to.
  Matrix composite(int from, int to) const;

 private:
  CompletionTower tower_;
  std::vector<PresentedModule> levels_;
  std::vector<Matrix> transitions_;
};

TowerModule module_to_tower(const PresentedModule& m, const CompletionTower& tower);

struct TowerVerdict {
  bool ok = true;
  int k = 0;
  int l = 0;
  std::string witness;
};

// Checks 0 -> a^k M_l -> M_l -> M_k -> 0 for all k < l <= depth; reports the
// first failing (k, l) in order of increasing l, then k.
TowerVerdict is_cocartesian_tower(const TowerModule& t);

struct StabilizedPresentation {
  PresentedModule module;
  int level = 0;
};

// A presentation over the base ring whose tower matches t up to its depth.
// Throws NoStabilization when the depth leaves too little margin to decide.
StabilizedPresentation tower_stabilized_presentation(const TowerModule& t);

}  // namespace snc
