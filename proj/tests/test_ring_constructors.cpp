#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "snc/errors.hpp"
#include "snc/ring_constructors.hpp"

using namespace snc;

namespace {

RingPtr qx() { return make_ring({"x"}, Field::rationals()); }
RingPtr qxy() { return make_ring({"x", "y"}, Field::rationals()); }

}  // namespace

TEST_CASE("localize") {
  auto r = qx();
  auto l = localize(r, r->var("x"));
  CHECK(l.ring->same_presentation(*make_ring({"x", "t"}, Field::rationals(), {"t*x - 1"})));
  CHECK(!l.zero_ring);

  auto r2 = qxy();
  auto l2 = localize(r2, r2->var("x") * r2->var("y"));
  CHECK(l2.ring->normal_form(l2.ring->var("t") * l2.ring->var("x") * l2.ring->var("y")) == l2.ring->one());

  auto l1 = localize(r, r->one());
  CHECK(l1.ring->normal_form(l1.ring->var("t")) == l1.ring->one());

  auto l0 = localize(r, r->zero());
  CHECK(l0.zero_ring);
  CHECK(l0.ring->is_zero_ring());
  CHECK(!l0.warning.empty());
}

TEST_CASE("completion towers") {
  auto r = qx();
  auto t = completion_tower(r, {r->var("x")}, 3);
  for (int n = 1; n <= 3; ++n)
    CHECK(t.level(n)->same_presentation(*make_ring({"x"}, Field::rationals(), {"x^" + std::to_string(n)})));
  CHECK(t.level(0)->is_zero_ring());

  auto r2 = qxy();
  auto t2 = completion_tower(r2, {r2->var("x"), r2->var("y")}, 2);
  CHECK(t2.level(2)->same_presentation(*make_ring({"x", "y"}, Field::rationals(), {"x^2", "x*y", "y^2"})));

  // Over Q[x,y][1/y], along (x).
  auto ly = localize(r2, r2->var("y"));
  auto t3 = completion_tower(ly.ring, {ly.ring->var("x")}, 2);
  CHECK(t3.level(2)->is_zero(t3.level(2)->var("x").pow(2)));
  CHECK(t3.level(2)->equal(t3.level(2)->var("t") * t3.level(2)->var("y"), t3.level(2)->one()));

  // Transitions compose to the skipping projection.
  auto t4 = completion_tower(r2, {r2->var("x"), r2->var("y")}, 4);
  for (int n = 1; n + 2 <= 4; ++n)
    CHECK(t4.transition(n + 1).then(t4.transition(n)).equals(t4.projection(n + 2, n)));
}

TEST_CASE("stratum rings of the affine line") {
  auto r = qx();
  DivisorSpec spec(r, {"x"});
  Precision prec(8, 64);
  auto open = stratum_ring(spec, 0, prec);
  CHECK(open.lambda()->same_presentation(*make_ring({"x", "t_x"}, Field::rationals(), {"t_x*x - 1"})));
  CHECK(!open.tower().has_value());
  auto closed = stratum_ring(spec, 1, prec);
  REQUIRE(closed.tower().has_value());
  for (int l = 1; l <= 8; ++l)
    CHECK(closed.level(l)->same_presentation(*make_ring({"x"}, Field::rationals(), {"x^" + std::to_string(l)})));
  // The closed stratum with no localization is the plain completion tower.
  auto plain = completion_tower(r, {r->var("x")}, 8);
  for (int l = 1; l <= 8; ++l) CHECK(closed.level(l)->same_presentation(*plain.level(l)));
}

TEST_CASE("stratum ring with a localized base") {
  DivisorSpec spec(qxy(), {"x", "y"});
  auto s = stratum_ring(spec, 1, Precision(4, 8));
  for (int l = 1; l <= 4; ++l) {
    auto lev = s.level(l);
    CHECK(lev->is_zero(lev->var("x").pow(static_cast<unsigned>(l))));
    CHECK(lev->equal(lev->var("t_y") * lev->var("y"), lev->one()));
    if (l > 1) CHECK(!lev->is_zero(lev->var("x").pow(static_cast<unsigned>(l - 1))));
  }
}

TEST_CASE("chain rings") {
  DivisorSpec spec(qx(), {"x"});
  Precision prec(8, 64);
  auto yd = chain_ring(spec, {0, 1}, prec);
  CHECK(yd->truncated() == 1);
  CHECK(yd->poles() == 1);
  CHECK(yd->describe() == "Q[[x]][1/x] mod (x^8)");
  CHECK(yd->body_ring()->same_presentation(*qx()));

  auto single = chain_ring(spec, {1}, prec);
  CHECK(single->poles() == 0);
  CHECK(single->body_ring()->same_presentation(*stratum_ring(spec, 1, prec).lambda()));

  CHECK_THROWS_AS(chain_ring(spec, {1, 0}, prec), ChainError);
  CHECK_THROWS_AS(chain_ring(spec, {1, 1}, prec), ChainError);
  CHECK_THROWS_AS(chain_ring(spec, {}, prec), ChainError);

  DivisorSpec spec2(qxy(), {"x", "y"});
  auto c = chain_ring(spec2, {0, 3}, Precision(3, 8));
  CHECK(c->truncated() == 3);
  CHECK(c->poles() == 3);
  CHECK(c->describe() == "Q[[x,y]][1/x,1/y] mod (x^3, y^3)");
  auto c2 = chain_ring(spec2, {1, 3}, Precision(3, 8));
  CHECK(c2->poles() == 2);
  CHECK(c2->describe() == "Q[[x,y]][1/y] mod (x^3, y^3)");
  auto c3 = chain_ring(spec2, {0, 1}, Precision(3, 8));
  CHECK(c3->describe() == "Q[y,1/y][[x]][1/x] mod (x^3)");
}

TEST_CASE("laurent arithmetic examples") {
  DivisorSpec spec(qx(), {"x"});
  auto k = chain_ring(spec, {0, 1}, Precision(5, 64));
  auto x = k->parse("x");
  auto xinv = k->parse("x^-1");
  auto one = x * xinv;
  CHECK(one.pole_order() == 0);
  CHECK(one.to_string() == "1");
  auto s = (k->parse("x^-1 + 1") + k->parse("-x^-1"));
  CHECK(s.to_string() == "1");
  CHECK(s.pole_order() == 0);
  auto inv = k->parse("1 - x").inverse();
  CHECK(inv.to_string() == "x^4 + x^3 + x^2 + x + 1 + O(x^5)");
  CHECK((inv * k->parse("1 - x")).equals(k->one().with_precision(5)));
  auto x2inv = k->parse("x^2").inverse();
  CHECK(x2inv.to_string() == "x^-2");
  CHECK_THROWS_AS(k->element(Polynomial(k->body_ring()->ambient()), 0, 0), PrecisionExhausted);
  // x^-3 known to x^1 then cancelled: nothing left.
  auto a = k->element(k->body_ring()->one(), 3, 3);
  CHECK_THROWS_AS(a - a, PrecisionExhausted);
}

TEST_CASE("laurent arithmetic laws") {
  DivisorSpec spec(qxy(), {"x", "y"});
  for (auto chain : {std::vector<Stratum>{0, 1}, std::vector<Stratum>{0, 3}, std::vector<Stratum>{1, 3}}) {
    auto k = chain_ring(spec, chain, Precision(4, 8));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-2, 2), e(-2, 3), prec(5, 8);
    auto random_elem = [&]() {
      std::string text = "0";
      for (int t = 0; t < 3; ++t) {
        int ex = e(rng), ey = e(rng);
        if (!(k->poles() & 1) && (k->truncated() & 1)) ex = std::max(ex, 0);
        if (!(k->poles() & 2) && (k->truncated() & 2)) ey = std::max(ey, 0);
        text += " + " + std::to_string(c(rng)) + "*x^" + std::to_string(ex) + "*y^" + std::to_string(ey);
      }
      return k->parse(text).with_precision(prec(rng));
    };
    for (int i = 0; i < 200; ++i) {
      auto a = random_elem(), b = random_elem(), d = random_elem();
      CHECK(((a + b) + d).equals(a + (b + d)));
      CHECK((a * (b + d)).equals(a * b + a * d));
    }
  }
}

TEST_CASE("chain maps") {
  DivisorSpec spec(qxy(), {"x", "y"});
  Precision prec(4, 8);
  auto open = chain_ring(spec, {0}, prec);
  auto c = chain_ring(spec, {0, 1, 3}, prec);
  ChainMap m(open, c);
  auto e = m.apply(open->parse("x^-1*y^-2 + 3"));
  CHECK(e.equals(c->parse("x^-1*y^-2 + 3")));
  CHECK_THROWS_AS(ChainMap(c, open), ChainError);
  auto mid = chain_ring(spec, {1, 3}, prec);
  ChainMap m2(mid, c);
  auto f = mid->parse("y^-1 + x");
  CHECK(m2.apply(f).equals(c->parse("y^-1 + x")));
}

TEST_CASE("Beauville-Laszlo sequence") {
  auto r = qx();
  auto rep = check_bl_sequence(r, "x", Precision(16, 64), 10);
  CHECK(rep.exact());
  CHECK(rep.witnesses.empty());
  CHECK(rep.kernel_dim == 11);
  auto rep2 = check_bl_sequence(qxy(), "x", Precision(8, 64), 6);
  CHECK(rep2.exact());
  CHECK_THROWS_AS(check_bl_sequence(r, "z", Precision(4, 8), 2), StructuralError);
}
