#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "snc/module.hpp"
#include "snc/parse.hpp"
#include "snc/errors.hpp"
#include "snc/smith.hpp"

using namespace snc;

TEST_CASE("groebner basis of x^2-1, x^3-1 is x-1") {
  auto r = make_ring({"x"}, Field::rationals());
  auto gb = groebner_basis({parse_polynomial("x^2-1", r->ambient()), parse_polynomial("x^3-1", r->ambient())});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0].to_string() == "x - 1");
}

namespace {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r->ambient()); }

}  // namespace

TEST_CASE("lex basis of the twisted cubic") {
  auto amb = std::make_shared<PolyRing>(std::vector<std::string>{"z", "y", "x"}, Field::rationals(), MonomialOrder::lex());
  auto r = std::make_shared<PresentedRing>(amb, std::vector<Polynomial>{});
  auto gb = groebner_basis({P(r, "y - x^2"), P(r, "z - x^3")});
  std::vector<std::string> strs;
  for (const auto& g : gb) strs.push_back(g.to_string());
  CHECK(std::find(strs.begin(), strs.end(), "z - x^3") != strs.end());
  CHECK(std::find(strs.begin(), strs.end(), "y - x^2") != strs.end());
  CHECK(normal_form(P(r, "(y-x^2)*(z+x) + (z-x^3)*y^2"), gb).is_zero());
  CHECK(groebner_basis(gb).size() == gb.size());
}

TEST_CASE("normal form basics") {
  auto r = make_ring({"x"}, Field::rationals());
  CHECK(normal_form(P(r, "x^2"), {P(r, "x - 1")}).to_string() == "1");
  CHECK(normal_form(Polynomial(r->ambient()), {P(r, "x - 1")}).is_zero());
  CHECK(groebner_basis({}).empty());
}

TEST_CASE("kernel examples") {
  auto r = make_ring({"x"}, Field::rationals());
  auto free1 = PresentedModule::free(r, 1);
  Matrix mx(r, 1, 1);
  mx.at(0, 0) = P(r, "x");
  CHECK(syzygy_kernel(ModuleMap(free1, free1, mx)).kernel.n_gens() == 0);
  CHECK(!is_module_iso(ModuleMap(free1, free1, mx)));

  PresentedModule q(r, 1, {{P(r, "x")}});
  auto k = syzygy_kernel(ModuleMap(free1, q, Matrix::identity(r, 1)));
  REQUIRE(k.kernel.n_gens() == 1);
  CHECK(k.kernel.relations().empty());
  CHECK(k.inclusion.matrix().at(0, 0).to_string() == "x");
  CHECK(is_zero_module(PresentedModule(r, 1, {{P(r, "x")}, {P(r, "x - 1")}})));
}

TEST_CASE("redundant relation iso and base change") {
  auto r = make_ring({"x"}, Field::rationals());
  PresentedModule a(r, 1, {{P(r, "x^2")}});
  PresentedModule b(r, 1, {{P(r, "x^2")}, {P(r, "x^3")}});
  CHECK(is_module_iso(ModuleMap(a, b, Matrix::identity(r, 1))));
  CHECK(is_module_iso(ModuleMap::identity(a)));
  auto rx = make_ring({"x"}, Field::rationals(), {"x"});
  auto bc = base_change(a, RingMorphism::by_names(r, rx));
  CHECK(bc.relations().empty());
  CHECK(bc.n_gens() == 1);
}

TEST_CASE("saturation and lift") {
  auto r = make_ring({"x", "y"}, Field::rationals());
  auto sat = saturate(r, 1, {{P(r, "x^2*y")}, {P(r, "x*y^2")}}, P(r, "x"));
  REQUIRE(sat.size() == 1);
  CHECK(sat[0][0].to_string() == "y");
  auto c = lift(r, {P(r, "x^2 + y^2")}, {{P(r, "x")}, {P(r, "y")}}, {});
  REQUIRE(c.has_value());
  CHECK(((*c)[0] * P(r, "x") + (*c)[1] * P(r, "y")) == P(r, "x^2 + y^2"));
  CHECK(!lift(r, {P(r, "1")}, {{P(r, "x")}, {P(r, "y")}}, {}).has_value());
}

TEST_CASE("prime field arithmetic") {
  auto f = Field::prime(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK_THROWS(Field::prime(8));
  auto r = make_ring({"x"}, f);
  CHECK(P(r, "8*x + 9").to_string() == "x + 2");
}

TEST_CASE("smith invariants") {
  auto r = make_ring({"x"}, Field::rationals());
  PresentedModule d(r, 2, {{P(r, "x"), P(r, "0")}, {P(r, "0"), P(r, "x^2")}});
  auto s = smith_invariants(d);
  CHECK(s.rank == 0);
  CHECK(s.describe() == "rank 0; invariant factors: x, x^2");
  CHECK(smith_invariants(PresentedModule::free(r, 3)).describe() == "rank 3; invariant factors: none");
  PresentedModule twice(r, 1, {{P(r, "x")}, {P(r, "x")}});
  CHECK(smith_invariants(twice).describe() == "rank 0; invariant factors: x");
  PresentedModule mixed(r, 2, {{P(r, "x^2"), P(r, "x+1")}});
  CHECK(smith_invariants(mixed).describe() == "rank 1; invariant factors: none");
  CHECK_THROWS_AS(smith_invariants(PresentedModule::free(make_ring({"x", "y"}, Field::rationals()), 1)),
                  UnsupportedError);
}
