#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "snc/descent.hpp"
#include "snc/errors.hpp"
#include "snc/parse.hpp"

using namespace snc;

namespace {

// Independent enumerators over raw subsets of {0..n-1}.
std::size_t brute_pairs(int n) {
  std::size_t c = 0;
  for (unsigned a = 0; a < (1u << n); ++a)
    for (unsigned b = 0; b < (1u << n); ++b)
      if (a != b && (a & b) == a) ++c;
  return c;
}

std::size_t brute_triples(int n) {
  std::size_t c = 0;
  const unsigned s = 1u << n;
  for (unsigned a = 0; a < s; ++a)
    for (unsigned b = 0; b < s; ++b)
      for (unsigned d = 0; d < s; ++d)
        if (a != b && b != d && (a & b) == a && (b & d) == b) ++c;
  return c;
}

RingPtr qx() { return make_ring({"x"}, Field::rationals()); }
RingPtr qxy() { return make_ring({"x", "y"}, Field::rationals()); }

}  // namespace

TEST_CASE("strata poset") {
  CHECK_THROWS_AS(strata_poset(0), UnsupportedError);
  CHECK_THROWS_AS(strata_poset(6), UnsupportedError);
  CHECK(strata_poset(1).strict_relations().size() == 1);
  CHECK(strata_poset(2).strict_relations().size() == 5);
  CHECK(strata_poset(3).strict_relations().size() == 19);
  for (int n = 1; n <= 4; ++n) {
    auto p = strata_poset(n);
    auto els = p.elements();
    CHECK(els.size() == (1u << n));
    CHECK(p.strict_relations().size() == brute_pairs(n));
    for (auto a : els)
      for (auto b : els) {
        CHECK(p.leq(a, a));
        if (p.leq(a, b) && p.leq(b, a)) CHECK(a == b);
        for (auto c : els)
          if (p.leq(a, b) && p.leq(b, c)) CHECK(p.leq(a, c));
      }
  }
}

TEST_CASE("nerve counts") {
  const std::vector<std::vector<std::size_t>> expected = {{2, 1, 0}, {4, 5, 2, 0}, {8, 19, 18}};
  for (int n = 1; n <= 3; ++n) {
    auto nv = nerve(strata_poset(n));
    for (std::size_t m = 0; m < expected[n - 1].size(); ++m) CHECK(nv.count(static_cast<int>(m + 1)) == expected[n - 1][m]);
  }
  for (int n = 1; n <= 4; ++n) {
    auto nv = nerve(strata_poset(n));
    CHECK(nv.count(1) == (1u << n));
    CHECK(nv.count(2) == brute_pairs(n));
    CHECK(nv.count(3) == brute_triples(n));
    CHECK(nv.max_length() == n + 1);
  }
}

TEST_CASE("semi-simplicial identities") {
  for (int n = 1; n <= 3; ++n) {
    auto nv = nerve(strata_poset(n));
    for (int m = 2; m <= nv.max_length(); ++m)
      for (const auto& c : nv.chains(m)) {
        for (int i = 0; i < m; ++i) {
          auto f = Nerve::face(c, i);
          CHECK(std::find(nv.chains(m - 1).begin(), nv.chains(m - 1).end(), f) != nv.chains(m - 1).end());
        }
        if (m < 3) continue;
        for (int j = 0; j < m; ++j)
          for (int i = 0; i < j; ++i) CHECK(Nerve::face(Nerve::face(c, j), i) == Nerve::face(Nerve::face(c, i), j - 1));
      }
  }
}

TEST_CASE("integral of the nerve") {
  auto c1 = grothendieck_construction(nerve(strata_poset(1)));
  CHECK(c1.objects().size() == 3);
  CHECK(c1.non_identity_count() == 2);
  auto c2 = grothendieck_construction(nerve(strata_poset(2)));
  CHECK(c2.objects().size() == 11);
  for (const auto* c : {&c1, &c2}) {
    const auto& ms = c->morphisms();
    for (std::size_t a = 0; a < c->objects().size(); ++a) {
      const std::size_t id = c->identity(a);
      REQUIRE(id != IntSCategory::npos);
      for (std::size_t f = 0; f < ms.size(); ++f) {
        if (ms[f].source == a) CHECK(c->compose(id, f) == f);
        if (ms[f].target == a) CHECK(c->compose(f, id) == f);
      }
    }
    for (std::size_t f = 0; f < ms.size(); ++f)
      for (std::size_t g = 0; g < ms.size(); ++g) {
        if (ms[g].source != ms[f].target) continue;
        for (std::size_t h = 0; h < ms.size(); ++h) {
          if (ms[h].source != ms[g].target) continue;
          CHECK(c->compose(c->compose(f, g), h) == c->compose(f, c->compose(g, h)));
        }
      }
  }
}

TEST_CASE("ring diagram") {
  DivisorSpec s1(qx(), {"x"});
  auto d1 = ring_diagram(s1, Precision(8, 64));
  const auto& idx = d1->index();
  CHECK(d1->ring(idx.object_index({0}))->describe() == "Q[x,1/x]");
  CHECK(d1->ring(idx.object_index({1}))->describe() == "Q[[x]] mod (x^8)");
  CHECK(d1->ring(idx.object_index({0, 1}))->describe() == "Q[[x]][1/x] mod (x^8)");
  std::string why;
  CHECK(d1->functorial(&why));

  DivisorSpec s2(qxy(), {"x", "y"});
  auto d2 = ring_diagram(s2, Precision(3, 12));
  CHECK(d2->functorial(&why));
  // The recursion for (2, [Y_{} > Y_{x,y}]) agrees with the direct description.
  auto r = d2->ring(d2->index().object_index({0, 3}));
  CHECK(r->truncated() == 3);
  CHECK(r->poles() == 3);
  CHECK(r->describe() == "Q[[x,y]][1/x,1/y] mod (x^3, y^3)");
  CHECK(r->same_structure(*chain_ring(s2, {0, 3}, Precision(3, 12))));
}

TEST_CASE("coCartesian diagrams") {
  auto r = qx();
  DivisorSpec spec(r, {"x"});
  Precision prec(8, 64);
  auto d = datum_from_module(PresentedModule::free(r, 1), spec, prec);
  auto dm = datum_diagram(d);
  CHECK(is_cocartesian_diagram(dm).ok);

  // Zero structure map on the chain object.
  auto bad = dm;
  const auto& idx = dm.diagram->index();
  const std::size_t k = idx.hom(idx.object_index({0}), idx.object_index({0, 1}));
  bad.structure[k].columns[0][0] = dm.diagram->ring(idx.object_index({0, 1}))->zero();
  auto v = is_cocartesian_diagram(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.morphism == k);
  CHECK(v.witness.find("(1, [Y{}]) -> (2, [Y{} > Y{x}])") == 0);

  // Over Q[[x,y]][1/y] the transition from Y{x} is perturbed to x + x^2,
  // which is not a unit because x is not inverted there.
  DivisorSpec s2(qxy(), {"x", "y"});
  auto d2 = datum_from_module(PresentedModule::free(qxy(), 1), s2, prec);
  auto dm2 = datum_diagram(d2);
  CHECK(is_cocartesian_diagram(dm2).ok);
  const auto& idx2 = dm2.diagram->index();
  const std::size_t target = idx2.object_index({1, 3});
  const std::size_t k2 = idx2.hom(idx2.object_index({1}), target);
  dm2.structure[k2].columns[0][0] = dm2.diagram->ring(target)->parse("x + x^2");
  auto v2 = is_cocartesian_diagram(dm2);
  CHECK_FALSE(v2.ok);
  CHECK(v2.morphism == k2);
}

TEST_CASE("Kan limits") {
  auto r = qx();
  DivisorSpec spec(r, {"x"});
  for (int level : {2, 3, 4, 8, 16}) {
    auto d = datum_from_module(PresentedModule::free(r, 1), spec, Precision(level, 64));
    auto dm = datum_diagram(d);
    std::vector<std::size_t> all = {0, 1, 2};
    auto lim = kan_limit(dm, all, level);
    CHECK(smith_invariants(prune(lim.module)).describe() == "rank 1; invariant factors: none");
  }
  // One object: the truncated module itself.
  auto m = PresentedModule(r, 2, {{parse_polynomial("x^3", r->ambient()), r->zero()}});
  auto d = datum_from_module(m, spec, Precision(8, 64));
  auto dm = datum_diagram(d);
  const auto& idx = dm.diagram->index();
  auto one = kan_limit(dm, {idx.object_index({1})}, 8);
  CHECK(smith_invariants(one.module).describe() == "rank 0; invariant factors: x^3, x^8");
  // Discrete two-object slice: the direct sum of the two pieces.
  auto two = kan_limit(dm, {idx.object_index({0}), idx.object_index({1})}, 8);
  auto lone = kan_limit(dm, {idx.object_index({0})}, 8);
  CHECK(smith_invariants(two.module) == smith_invariants(direct_sum(lone.module, one.module)));
}

TEST_CASE("listings") {
  DivisorSpec spec(qxy(), {"x", "y"});
  auto nv = nerve(strata_poset(2));
  auto text = describe_nerve(nv, &spec);
  CHECK(text.find("S_3 (2):") != std::string::npos);
  CHECK(text.find("(3, [Y{} > Y{x} > Y{x,y}])") != std::string::npos);
  auto cat = describe_int_s(grothendieck_construction(nv), &spec);
  CHECK(cat.find("objects (11):") != std::string::npos);
}
