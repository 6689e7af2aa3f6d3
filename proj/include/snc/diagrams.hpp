#pragma once

#include <memory>
#include <string>
#include <vector>

#include "snc/module.hpp"
#include "snc/ring_constructors.hpp"

namespace snc {

// Strata of an n-component divisor, indexed by the set T of vanishing
// components. Y_T <= Y_T' iff T contains T'.
class StrataPoset {
 public:
  explicit StrataPoset(int n);

  int n() const { return n_; }
  std::vector<Stratum> elements() const;
  bool leq(Stratum y, Stratum z) const { return contains(y, z); }
  // Pairs (T, T') with Y_T > Y_T', i.e. T strictly inside T'.
  std::vector<std::pair<Stratum, Stratum>> strict_relations() const;

 private:
  int n_;
};

// Throws UnsupportedError outside 1 <= n <= 5.
StrataPoset strata_poset(int n);

// Y_1 > ... > Y_m stored as T_1 < ... < T_m.
using Chain = std::vector<Stratum>;

class Nerve {
 public:
  explicit Nerve(const StrataPoset& poset);

  int n() const { return n_; }
  int max_length() const { return static_cast<int>(chains_.size()); }
  // S_m, sorted lexicographically; empty past the longest chain.
  const std::vector<Chain>& chains(int m) const;
  std::size_t count(int m) const { return chains(m).size(); }
  // Deletes entry i (0-based).
  static Chain face(const Chain& c, int i);

 private:
  int n_;
  std::vector<std::vector<Chain>> chains_;  // index m-1
};

Nerve nerve(const StrataPoset& poset);

struct IntSObject {
  Chain chain;
  int m() const { return static_cast<int>(chain.size()); }
};

// mu lists the positions of the source chain inside the target chain.
struct IntSMorphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<int> mu;
  bool identity() const { return source == target; }
};

// Objects (m, xi) with xi in S_m; a morphism (k, xi') -> (m, xi) is an
// injective monotone map mu with xi o mu = xi'.
class IntSCategory {
 public:
  explicit IntSCategory(const Nerve& nerve);

  const std::vector<IntSObject>& objects() const { return objects_; }
  const std::vector<IntSMorphism>& morphisms() const { return morphisms_; }
  std::size_t object_index(const Chain& c) const;
  // Index of the unique morphism a -> b, or npos.
  std::size_t hom(std::size_t a, std::size_t b) const;
  std::size_t identity(std::size_t a) const { return hom(a, a); }
  // Index of g o f.
  std::size_t compose(std::size_t f, std::size_t g) const;
  std::size_t non_identity_count() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<IntSObject> objects_;
  std::vector<IntSMorphism> morphisms_;
  std::vector<std::vector<std::size_t>> hom_;
};

IntSCategory grothendieck_construction(const Nerve& nerve);

// Object (m, chain) goes to the chain ring; morphisms to the canonical maps.
class RingDiagram {
 public:
  RingDiagram(const DivisorSpec& spec, const Precision& prec);

  const DivisorSpec& spec() const { return spec_; }
  const Precision& prec() const { return prec_; }
  const IntSCategory& index() const { return index_; }
  const ChainRingPtr& ring(std::size_t object) const { return rings_[object]; }
  const ChainMap& map(std::size_t morphism) const { return maps_[morphism]; }
  // map(g o f) == map(g) o map(f) on generators for every composable pair.
  bool functorial(std::string* witness = nullptr) const;

 private:
  DivisorSpec spec_;
  Precision prec_;
  IntSCategory index_;
  std::vector<ChainRingPtr> rings_;
  std::vector<ChainMap> maps_;
};

using RingDiagramPtr = std::shared_ptr<const RingDiagram>;
RingDiagramPtr ring_diagram(const DivisorSpec& spec, const Precision& prec);

using LaurentVec = std::vector<LaurentElement>;

// Cokernel of Laurent relation columns over a chain ring.
struct LaurentModule {
  ChainRingPtr ring;
  std::size_t n_gens = 0;
  std::vector<LaurentVec> relations;
};

// Column-major matrix of Laurent elements.
struct LaurentMatrix {
  std::size_t rows = 0;
  std::vector<LaurentVec> columns;

  static LaurentMatrix identity(const ChainRingPtr& ring, std::size_t n);
  LaurentMatrix operator*(const LaurentMatrix& o) const;
  LaurentElement at(std::size_t r, std::size_t c) const { return columns[c][r]; }
};

LaurentModule to_laurent(const PresentedModule& m, const ChainRingPtr& ring);
LaurentVec map_vec(const ChainMap& f, const LaurentVec& v);
LaurentMatrix map_matrix(const ChainMap& f, const LaurentMatrix& m);
LaurentModule base_change(const LaurentModule& m, const ChainMap& f);

// Module per object of the index category and, per morphism i -> j, the
// matrix of M_i (base-changed to ring j) -> M_j.
struct DiagramModule {
  RingDiagramPtr diagram;
  std::vector<LaurentModule> modules;
  std::vector<LaurentMatrix> structure;
};

// Isomorphism test for a Laurent matrix between Laurent modules over one
// chain ring, at precision q: cokernel and kernel are checked after clearing
// poles, with half the precision reserved for denominators.
bool is_laurent_iso(const LaurentModule& source, const LaurentModule& target, const LaurentMatrix& matrix, int q,
                    std::string* witness = nullptr);

struct DiagramVerdict {
  bool ok = true;
  std::size_t morphism = IntSCategory::npos;
  std::string witness;
};

DiagramVerdict is_cocartesian_diagram(const DiagramModule& m);

// R-module computed as the limit over the given slice of objects: vertex
// objects contribute their lattices at precision level L, chain objects of
// length two whose faces are in the slice contribute equalizer conditions.
struct KanLimit {
  PresentedModule module;
  std::vector<Stratum> vertices;      // strata of the vertex objects used
  std::vector<std::size_t> offsets;   // start of each vertex block in F
  Matrix generators;                  // columns: generators of the limit in F
  std::vector<PolyVec> lattice_relations;  // the lattice relations C inside F
  std::vector<std::pair<Stratum, Stratum>> edges;  // equalizer conditions used
  // Per edge: the difference map hits pi^E e_i for every target generator,
  // so it is onto once pi is inverted.
  std::vector<bool> edge_onto;
  int level = 0;
  int half = 0;  // K: vertex T stands for u_T^-K * v_T
};

KanLimit kan_limit(const DiagramModule& m, const std::vector<std::size_t>& slice, int level);

std::string describe_nerve(const Nerve& nerve, const DivisorSpec* spec = nullptr);
std::string describe_int_s(const IntSCategory& cat, const DivisorSpec* spec = nullptr);

}  // namespace snc
