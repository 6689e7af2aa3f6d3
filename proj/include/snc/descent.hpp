#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snc/diagrams.hpp"
#include "snc/smith.hpp"

namespace snc {

using StratumPair = std::pair<Stratum, Stratum>;  // (T_Y, T_Z) with T_Y strictly inside T_Z

// Modules on the strata plus comparison isomorphisms
//   rho_{Y,Z} : M_Y (x) R_{Y,Z} -> M_Z (x) R_{Y,Z}
// for every strict pair. Stratum modules are finitely presented over the
// localized ring of their stratum; their completions are read off on demand.
class DescentDatum {
 public:
  DescentDatum(DivisorSpec spec, Precision prec, std::map<Stratum, PresentedModule> modules,
               std::map<StratumPair, LaurentMatrix> rho);
  // The ring diagram must match the matrices' chain rings.
  DescentDatum(RingDiagramPtr diagram, std::map<Stratum, PresentedModule> modules,
               std::map<StratumPair, LaurentMatrix> rho);

  const DivisorSpec& spec() const { return diagram_->spec(); }
  const Precision& prec() const { return diagram_->prec(); }
  const RingDiagramPtr& diagram() const { return diagram_; }
  const PresentedModule& module(Stratum t) const { return modules_.at(t); }
  const LaurentMatrix& rho(Stratum y, Stratum z) const { return rho_.at({y, z}); }
  const std::map<StratumPair, LaurentMatrix>& comparisons() const { return rho_; }
  // Chain ring of a chain, taken from the ring diagram.
  const ChainRingPtr& ring(const Chain& chain) const;
  // The module on the stratum, as a Laurent module over its chain ring.
  LaurentModule laurent_module(Stratum t) const;

  // Result of the last check_cocycle, if any.
  std::optional<bool> cocycle_valid() const { return cocycle_valid_; }
  void set_cocycle_valid(bool v) const { cocycle_valid_ = v; }

 private:
  void validate();
  RingDiagramPtr diagram_;
  std::map<Stratum, PresentedModule> modules_;
  std::map<StratumPair, LaurentMatrix> rho_;
  mutable std::optional<bool> cocycle_valid_;
};

DescentDatum datum_from_module(const PresentedModule& m, const DivisorSpec& spec, const Precision& prec);

// Object (m, xi) carries M_{last(xi)} (x) R_xi; structure maps are the rho of
// the last strata, or identities when these agree.
DiagramModule datum_diagram(const DescentDatum& d);

struct Verdict {
  bool ok = true;
  std::string witness;
};

// Each rho is an isomorphism at its precision.
Verdict check_comparisons(const DescentDatum& d);

// rho_{Z,W} o rho_{Y,Z} = rho_{Y,W} over every triple chain ring, modulo the
// relations of M_W; the first failing triple is the witness.
Verdict check_cocycle(const DescentDatum& d);

struct StratumVerdict {
  Stratum stratum = 0;
  std::string name;
  bool counit = false;
  int stabilization = -1;  // level of the completed tower, -1 when undecided
};

struct EdgeVerdict {
  StratumPair pair;
  bool surjective = false;
};

struct GlueReport {
  std::optional<PresentedModule> result;
  KanLimit limit;
  std::vector<StratumVerdict> strata;
  std::vector<EdgeVerdict> edges;
  std::vector<int> attempts;  // precision levels tried, in order
  int precision = 0;

  bool ok() const { return result.has_value(); }
};

struct GlueOptions {
  bool stabilization = true;
};

// Throws CocycleInvalid when the cocycle check fails and PrecisionExhausted
// when no level up to the cap verifies.
GlueReport glue(const DescentDatum& d, const GlueOptions& options = {});

// Refinement edges (T, T + {k}) for k = n..1 and T inside {1..k-1}.
std::vector<StratumPair> refinement_edges(std::size_t n);

struct RoundtripReport {
  GlueReport glue;
  bool iso = false;
  std::optional<SmithInvariants> input_smith;
  std::optional<SmithInvariants> output_smith;

  bool smith_match() const {
    return !input_smith || input_smith == output_smith;
  }
  bool ok() const { return glue.ok() && iso && smith_match(); }
};

RoundtripReport verify_roundtrip(const PresentedModule& m, const DivisorSpec& spec, const Precision& prec,
                                 const GlueOptions& options = {});

}  // namespace snc
