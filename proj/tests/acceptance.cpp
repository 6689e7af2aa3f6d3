// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "snc/descent.hpp"
#include "snc/errors.hpp"
#include "snc/parse.hpp"
#include "snc/runner.hpp"
#include "snc/smith.hpp"
#include "snc/towers.hpp"

#ifndef SNC_BINARY
#error "SNC_BINARY must point at the snc executable"
#endif
#ifndef SNC_FIXTURES
#error "SNC_FIXTURES must point at the fixture directory"
#endif

using namespace snc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures without stopping at the first one.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    ++total_;
    if (cond) {
      ++passed_;
    } else if (first_.empty()) {
      first_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << " " << passed_ << "/" << total_;
    if (!first_.empty()) s << "; first failure: " << first_;
    return {passed_ == total_ && total_ > 0, s.str()};
  }

 private:
  int total_ = 0;
  int passed_ = 0;
  std::string first_;
};

RingPtr qx() { return make_ring({"x"}, Field::rationals()); }
RingPtr qxy() { return make_ring({"x", "y"}, Field::rationals()); }
Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r->ambient()); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string(SNC_BINARY) + " " + args + " 2>&1";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Invariant factors x^k as dense coefficient vectors.
DensePoly x_power(unsigned k) {
  DensePoly p(k + 1, Scalar(0));
  p[k] = Scalar(1);
  return p;
}

// Smith invariants expected for F^free plus the given x^k torsion summands.
SmithInvariants expected_smith(std::size_t free, std::vector<unsigned> ks) {
  std::sort(ks.begin(), ks.end());
  SmithInvariants s;
  s.rank = free;
  for (unsigned k : ks) s.factors.push_back(x_power(k));
  return s;
}

unsigned x_order(const DensePoly& p) {
  unsigned k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  return k;
}

// ---------------------------------------------------------------------------

Outcome affine_line_rings() {
  Check c;
  auto r = qx();
  DivisorSpec spec(r, {"x"});
  Precision prec(8, 64);
  auto laurent = make_ring({"x", "t_x"}, Field::rationals(), {"t_x*x - 1"});

  auto open = chain_ring(spec, {0}, prec);
  c.expect(open->body_ring()->same_presentation(*laurent), "R_Y is not k[x,t]/(tx - 1)");
  c.expect(open->truncated() == 0 && open->poles() == 0, "R_Y carries a truncation");
  c.expect(open->describe_symbolic() == "k[x,1/x]", "R_Y symbol: " + open->describe_symbolic());

  auto closed = chain_ring(spec, {1}, prec);
  c.expect(closed->body_ring()->same_presentation(*r), "R_D body is not k[x]");
  c.expect(closed->truncated() == 1 && closed->poles() == 0, "R_D is not truncated without poles");
  const auto& tower = closed->deepest().tower();
  c.expect(tower.has_value(), "R_D has no tower");
  if (tower) {
    for (int l = 1; l <= prec.level; ++l) {
      auto want = make_ring({"x"}, Field::rationals(), {"x^" + std::to_string(l)});
      c.expect(closed->deepest().level(l)->same_presentation(*want), "R_D level " + std::to_string(l));
    }
  }
  c.expect(closed->describe_symbolic() == "k[[x]]", "R_D symbol: " + closed->describe_symbolic());

  auto mixed = chain_ring(spec, {0, 1}, prec);
  c.expect(mixed->body_ring()->same_presentation(*r), "R_{Y,D} body is not k[x]");
  c.expect(mixed->truncated() == 1 && mixed->poles() == 1, "R_{Y,D} should be truncated with a pole at x");
  auto x = mixed->parse("x");
  auto xi = mixed->parse("x^-1");
  c.expect((x * xi).equals(mixed->one()), "x is not a unit in R_{Y,D}");
  c.expect(x.inverse().equals(xi), "inverse of x");
  c.expect(mixed->describe_symbolic() == "k[[x]][1/x]", "R_{Y,D} symbol: " + mixed->describe_symbolic());
  // x^8 vanishes in the body but x^-1 * x^8 = x^7 survives the pole bookkeeping.
  c.expect(!(mixed->parse("x^7")).is_zero(), "x^7 vanished in R_{Y,D}");
  return c.outcome("rings of A^1 match");
}

Outcome bl_exactness() {
  Check c;
  auto one = check_bl_sequence(qx(), "x", Precision(16, 64), 10);
  c.expect(one.exact(), "Q[x] sequence not exact" + (one.witnesses.empty() ? "" : ": " + one.witnesses[0].detail));
  auto two = check_bl_sequence(qxy(), "x", Precision(8, 64), 6);
  c.expect(two.exact(), "Q[x,y] sequence not exact" + (two.witnesses.empty() ? "" : ": " + two.witnesses[0].detail));
  c.expect(one.witnesses.empty() && two.witnesses.empty(), "counterexamples reported");
  return c.outcome("exact sequences");
}

Outcome roundtrip_line() {
  Check c;
  auto r = qx();
  DivisorSpec spec(r, {"x"});
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> nf(0, 3), nt(0, 3);
  std::uniform_int_distribution<unsigned> kd(1, 5);
  for (int i = 0; i < 25; ++i) {
    const std::size_t f = nf(rng), t = nt(rng);
    std::vector<unsigned> ks;
    std::vector<PolyVec> rels;
    for (std::size_t j = 0; j < t; ++j) {
      ks.push_back(kd(rng));
      PolyVec col(f + t, r->zero());
      col[f + j] = r->var(0).pow(ks.back());
      rels.push_back(col);
    }
    PresentedModule m(r, f + t, rels);
    const std::string tag = "module " + std::to_string(i) + " " + m.describe();
    try {
      auto rep = verify_roundtrip(m, spec, Precision(8, 64));
      c.expect(rep.ok(), tag + " did not round trip");
      const auto want = expected_smith(f, ks);
      c.expect(rep.glue.result.has_value() && smith_invariants(*rep.glue.result) == want,
               tag + " glued to different invariants");
    } catch (const Error& e) {
      c.expect(false, tag + ": " + e.what());
    }
  }
  return c.outcome("random Q[x] modules");
}

Outcome roundtrip_crossing() {
  Check c;
  auto r = qxy();
  DivisorSpec spec(r, {"x", "y"});
  const std::vector<std::pair<std::string, PresentedModule>> cases = {
      {"R^1", PresentedModule::free(r, 1)},
      {"R^2", PresentedModule::free(r, 2)},
      {"R/(x)", PresentedModule(r, 1, {{P(r, "x")}})},
  };
  for (const auto& [name, m] : cases) {
    try {
      auto rep = verify_roundtrip(m, spec, Precision(8, 16));
      c.expect(rep.ok(), name + " did not round trip");
    } catch (const Error& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  return c.outcome("Q[x,y] modules along xy");
}

// Counts chains of each length by walking all sequences of subsets.
std::vector<std::size_t> brute_census(int n) {
  const unsigned s = 1u << n;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n + 1), 0);
  std::function<void(std::vector<unsigned>&)> extend = [&](std::vector<unsigned>& chain) {
    ++counts[chain.size() - 1];
    for (unsigned b = 0; b < s; ++b) {
      const unsigned a = chain.back();
      if (b != a && (a & b) == a) {
        chain.push_back(b);
        extend(chain);
        chain.pop_back();
      }
    }
  };
  for (unsigned a = 0; a < s; ++a) {
    std::vector<unsigned> chain{a};
    extend(chain);
  }
  return counts;
}

Outcome nerve_census() {
  Check c;
  const std::vector<std::vector<std::size_t>> stated = {{2, 1, 0}, {4, 5, 2}, {8, 19, 18}};
  for (int n = 1; n <= 3; ++n) {
    auto nv = nerve(strata_poset(n));
    auto brute = brute_census(n);
    for (int m = 1; m <= 3; ++m) {
      const std::size_t got = nv.count(m);
      const std::size_t want = m <= n + 1 ? brute[static_cast<std::size_t>(m - 1)] : 0;
      c.expect(got == want, "n=" + std::to_string(n) + " S_" + std::to_string(m) + " brute force");
      c.expect(got == stated[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(m - 1)],
               "n=" + std::to_string(n) + " S_" + std::to_string(m) + " count");
    }
  }
  return c.outcome("chain counts");
}

// Identity transitions between the given levels.
TowerModule identity_tower(const CompletionTower& tower, std::vector<PresentedModule> levels) {
  std::vector<Matrix> tr;
  for (int n = 1; n < tower.depth(); ++n)
    tr.push_back(Matrix::identity(tower.level(n), levels[static_cast<std::size_t>(n - 1)].n_gens()));
  return TowerModule(tower, std::move(levels), std::move(tr));
}

Outcome tower_criterion() {
  Check c;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, 3);
  std::uniform_int_distribution<std::size_t> nrel(0, 3);
  for (int i = 0; i < 20; ++i) {
    auto r = i % 2 ? qxy() : qx();
    auto tower = completion_tower(r, {r->var("x")}, 6);
    std::vector<PolyVec> rels;
    const std::size_t k = nrel(rng);
    for (std::size_t j = 0; j < k; ++j) {
      PolyVec col;
      for (int g = 0; g < 2; ++g) {
        Polynomial p = r->zero();
        for (int t = 0; t < 2; ++t) {
          const unsigned d = deg(rng);
          Polynomial term = r->one().scaled(Scalar(coeff(rng)));
          for (unsigned e = 0; e < d; ++e) term = term * r->var(static_cast<std::size_t>(rng() % r->nvars()));
          p += term;
        }
        col.push_back(p);
      }
      rels.push_back(col);
    }
    PresentedModule m(r, 2, rels);
    c.expect(is_cocartesian_tower(module_to_tower(m, tower)).ok, "random module " + std::to_string(i) + " rejected");
  }

  struct Bad {
    std::string name;
    TowerModule tower;
    int k, l;
  };
  std::vector<Bad> bad;
  {
    auto r = qx();
    auto t = completion_tower(r, {r->var("x")}, 2);
    Matrix times_x(t.level(1), 1, 1);
    times_x.at(0, 0) = P(t.level(1), "x");
    bad.push_back({"transition x", TowerModule(t, {PresentedModule::free(t.level(1), 1), PresentedModule::free(t.level(2), 1)},
                                               {times_x}),
                   1, 2});
  }
  {
    auto r = qx();
    auto t = completion_tower(r, {r->var("x")}, 3);
    Matrix proj(t.level(2), 1, 2);
    proj.at(0, 0) = t.level(2)->one();
    proj.at(0, 1) = t.level(2)->zero();
    bad.push_back({"extra summand",
                   TowerModule(t,
                               {PresentedModule::free(t.level(1), 1), PresentedModule::free(t.level(2), 1),
                                PresentedModule::free(t.level(3), 2)},
                               {Matrix::identity(t.level(1), 1), proj}),
                   1, 3});
  }
  {
    auto r = qx();
    auto t = completion_tower(r, {r->var("x")}, 3);
    bad.push_back({"collapsed middle",
                   identity_tower(t, {PresentedModule::free(t.level(1), 1),
                                      PresentedModule(t.level(2), 1, {{P(t.level(2), "x")}}),
                                      PresentedModule::free(t.level(3), 1)}),
                   2, 3});
  }
  {
    auto r = qx();
    auto t = completion_tower(r, {r->var("x")}, 4);
    bad.push_back({"x^2 at level 3",
                   identity_tower(t, {PresentedModule::free(t.level(1), 1), PresentedModule::free(t.level(2), 1),
                                      PresentedModule(t.level(3), 1, {{P(t.level(3), "x^2")}}),
                                      PresentedModule::free(t.level(4), 1)}),
                   3, 4});
  }
  {
    auto r = qxy();
    auto t = completion_tower(r, {r->var("x"), r->var("y")}, 3);
    bad.push_back({"y killed at level 2",
                   identity_tower(t, {PresentedModule::free(t.level(1), 1),
                                      PresentedModule(t.level(2), 1, {{P(t.level(2), "y")}}),
                                      PresentedModule::free(t.level(3), 1)}),
                   2, 3});
  }
  for (const auto& b : bad) {
    auto v = is_cocartesian_tower(b.tower);
    c.expect(!v.ok, b.name + " accepted");
    c.expect(v.k == b.k && v.l == b.l, b.name + " witness (" + std::to_string(v.k) + ", " + std::to_string(v.l) +
                                           "), expected (" + std::to_string(b.k) + ", " + std::to_string(b.l) + ")");
  }
  return c.outcome("tower verdicts");
}

Outcome negative_controls() {
  Check c;
  const std::string fx = SNC_FIXTURES;
  auto cocycle = run_binary("run " + fx + "/broken_cocycle.snc");
  c.expect(cocycle.first == 1, "broken cocycle exit " + std::to_string(cocycle.first));
  c.expect(cocycle.second.find("triple (Y{} > Y{x} > Y{x,y})") != std::string::npos, "no witness triple");
  auto lib = run_input(read_file(fx + "/broken_cocycle.snc"), RunConfig{});
  c.expect(lib.status == RunStatus::VerificationFailed, "library status for the broken cocycle");

  auto hidden = run_binary("run " + fx + "/hidden_torsion.snc");
  c.expect(hidden.first == 3, "hidden torsion exit " + std::to_string(hidden.first));
  auto r = qx();
  bool threw = false;
  try {
    tower_stabilized_presentation(
        module_to_tower(PresentedModule(r, 1, {{P(r, "x^3")}}), completion_tower(r, {r->var("x")}, 2)));
  } catch (const NoStabilization&) {
    threw = true;
  }
  c.expect(threw, "depth-2 tower stabilized");
  return c.outcome("controls");
}

Outcome tensor_limit() {
  Check c;
  auto r = qx();
  auto tower = completion_tower(r, {r->var("x")}, 8);
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<unsigned> deg(0, 6);
  std::uniform_int_distribution<std::size_t> nrel(0, 3);
  for (int i = 0; i < 10; ++i) {
    const std::size_t gens = 1 + static_cast<std::size_t>(i % 3);
    std::vector<PolyVec> rels;
    const std::size_t k = nrel(rng);
    for (std::size_t j = 0; j < k; ++j) {
      PolyVec col;
      for (std::size_t g = 0; g < gens; ++g) {
        // x^e times a unit-or-not factor, so the x-adic orders vary.
        Polynomial p = r->var(0).pow(deg(rng)) * (r->one().scaled(Scalar(coeff(rng))) + r->var(0).scaled(Scalar(coeff(rng))));
        col.push_back(p);
      }
      rels.push_back(col);
    }
    PresentedModule m(r, gens, rels);
    const auto sm = smith_invariants(m);
    auto t = module_to_tower(m, tower);
    for (int n = 1; n <= tower.depth(); ++n) {
      const std::string tag = "module " + std::to_string(i) + " level " + std::to_string(n);
      // Direct base change agrees with the tower level.
      auto bc = base_change(m, tower.from_base(n));
      c.expect(is_module_iso(ModuleMap(bc, t.level(n), Matrix::identity(tower.level(n), gens))), tag + " base change");
      // Oracle: M/x^n M from the invariant factors of M.
      std::vector<unsigned> ks;
      for (std::size_t f = 0; f < sm.rank; ++f) ks.push_back(static_cast<unsigned>(n));
      for (const auto& f : sm.factors) {
        const unsigned o = std::min(x_order(f), static_cast<unsigned>(n));
        if (o > 0) ks.push_back(o);
      }
      // The level module, pulled back to Q[x] with x^n added.
      std::vector<PolyVec> lifted;
      for (const auto& col : t.level(n).relations()) {
        PolyVec v;
        for (const auto& p : col) v.push_back(r->normal_form(p.rebased(r->ambient())));
        lifted.push_back(v);
      }
      for (std::size_t g = 0; g < gens; ++g) {
        PolyVec v(gens, r->zero());
        v[g] = r->var(0).pow(static_cast<unsigned>(n));
        lifted.push_back(v);
      }
      c.expect(smith_invariants(PresentedModule(r, gens, lifted)) == expected_smith(0, ks), tag + " invariants");
    }
  }
  return c.outcome("levels");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional criterion numbers restrict the run.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "A^1 stratum and chain rings", 1, affine_line_rings},
      {2, "Beauville-Laszlo exactness", 10, bl_exactness},
      {3, "round trip over Q[x] (25 modules)", 60, roundtrip_line},
      {4, "round trip over Q[x,y] along xy", 300, roundtrip_crossing},
      {5, "nerve census", 1, nerve_census},
      {6, "coCartesian tower criterion", 60, tower_criterion},
      {7, "negative controls", 60, negative_controls},
      {8, "tensor-limit levelwise equality", 60, tensor_limit},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    if (secs > c.budget_s) {
      pass = false;
      o.detail += "; over the time budget";
    }
    if (!pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << timing << "): " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
