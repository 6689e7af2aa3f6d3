#include "snc/runner.hpp"

#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "snc/descent.hpp"
#include "snc/errors.hpp"
#include "snc/input.hpp"
#include "snc/parse.hpp"
#include "snc/towers.hpp"

namespace snc {

using nlohmann::json;

void RunConfig::validate() const {
  if (prec < 2) throw StructuralError("precision level must be at least 2");
  if (prec_cap < prec) throw StructuralError("precision cap must not be below the level");
  if (degree < 1) throw StructuralError("degree bound must be at least 1");
  parse_field(field);
}

namespace {

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::VerificationFailed: return "verification_failed";
    case RunStatus::InputError: return "input_error";
    case RunStatus::PrecisionExhausted: return "precision_exhausted";
    case RunStatus::Internal: return "internal_error";
  }
  return "internal_error";
}

// Severity order used when several runs disagree.
int severity(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return 0;
    case RunStatus::VerificationFailed: return 1;
    case RunStatus::PrecisionExhausted: return 2;
    case RunStatus::InputError: return 3;
    case RunStatus::Internal: return 4;
  }
  return 4;
}

// Accumulates text lines and a JSON mirror of every run.
class Report {
 public:
  explicit Report(const RunConfig& cfg) : cfg_(cfg) {
    root_["format"] = "sncdescent-report";
    root_["version"] = 1;
    root_["config"] = {{"field", cfg.field},
                       {"precision", {{"level", cfg.prec}, {"cap", cfg.prec_cap}}},
                       {"degree", cfg.degree},
                       {"seed", cfg.seed}};
    root_["runs"] = json::array();
  }

  void line(const std::string& s) { text_ << s << "\n"; }
  void add(json run, RunStatus s) {
    run["status"] = status_name(s);
    root_["runs"].push_back(std::move(run));
    note(s);
  }
  void note(RunStatus s) {
    if (severity(s) > severity(status_)) status_ = s;
  }
  void fail(RunStatus s, const std::string& msg) {
    note(s);
    if (error_.empty()) error_ = msg;
  }

  RunResult finish() {
    root_["status"] = status_name(status_);
    root_["exit_code"] = static_cast<int>(status_);
    if (!error_.empty()) root_["error"] = error_;
    RunResult r;
    r.status = status_;
    r.error = error_;
    if (cfg_.structured) {
      r.output = root_.dump(2) + "\n";
    } else {
      text_ << "status: " << status_name(status_) << "\n";
      r.output = text_.str();
    }
    return r;
  }

 private:
  RunConfig cfg_;
  json root_;
  std::ostringstream text_;
  RunStatus status_ = RunStatus::Ok;
  std::string error_;
};

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string attempts_text(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + std::to_string(a[i]);
  return s;
}

bool univariate_rational(const RingPtr& r) { return r->nvars() == 1 && !r->field().is_prime() && !r->has_relations(); }

// Runs `body`, mapping engine errors onto report statuses.
void guarded(Report& rep, json& run, const std::function<RunStatus()>& body) {
  RunStatus s;
  try {
    s = body();
  } catch (const PrecisionExhausted& e) {
    rep.line(std::string("precision exhausted: ") + e.what());
    run["error"] = e.what();
    rep.fail(RunStatus::PrecisionExhausted, e.what());
    s = RunStatus::PrecisionExhausted;
  } catch (const NoStabilization& e) {
    rep.line(std::string("no stabilization: ") + e.what());
    run["error"] = e.what();
    rep.fail(RunStatus::PrecisionExhausted, e.what());
    s = RunStatus::PrecisionExhausted;
  } catch (const CocycleInvalid& e) {
    rep.line(std::string("cocycle invalid: ") + e.what());
    run["error"] = e.what();
    rep.fail(RunStatus::VerificationFailed, e.what());
    s = RunStatus::VerificationFailed;
  } catch (const ParseError& e) {
    rep.line(std::string("input error: ") + e.what());
    run["error"] = e.what();
    rep.fail(RunStatus::InputError, e.what());
    s = RunStatus::InputError;
  } catch (const Error& e) {
    rep.line(std::string("input error: ") + e.what());
    run["error"] = e.what();
    rep.fail(RunStatus::InputError, e.what());
    s = RunStatus::InputError;
  }
  rep.add(std::move(run), s);
}

json glue_json(const GlueReport& g, const DivisorSpec& spec) {
  json strata = json::array();
  for (const auto& s : g.strata) {
    json e = {{"stratum", s.name}, {"counit", s.counit}};
    if (s.stratum != 0) e["stabilization"] = s.stabilization;
    strata.push_back(e);
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"pair", "Y" + spec.stratum_name(e.pair.first) + " > Y" + spec.stratum_name(e.pair.second)},
                     {"onto", e.surjective}});
  }
  return {{"precision_used", g.precision}, {"attempts", g.attempts}, {"strata", strata}, {"edges", edges}};
}

void glue_lines(Report& rep, const GlueReport& g, const DivisorSpec& spec) {
  rep.line("precision used: " + std::to_string(g.precision) + " (attempts: " + attempts_text(g.attempts) + ")");
  for (const auto& s : g.strata) {
    std::string l = "  stratum " + s.name + ": counit " + pass(s.counit);
    if (s.stratum != 0) {
      l += ", tower stabilizes at " + (s.stabilization < 0 ? std::string("undecided") : std::to_string(s.stabilization));
    }
    rep.line(l);
  }
  for (const auto& e : g.edges) {
    rep.line("  edge Y" + spec.stratum_name(e.pair.first) + " > Y" + spec.stratum_name(e.pair.second) +
             ": difference map onto " + pass(e.surjective));
  }
}

RunStatus do_roundtrip(Report& rep, json& run, const PresentedModule& m, const DivisorSpec& spec,
                       const Precision& prec) {
  rep.line("input: " + m.describe());
  const RoundtripReport rt = verify_roundtrip(m, spec, prec);
  run.update(glue_json(rt.glue, spec));
  run["input"] = m.describe();
  run["iso"] = rt.iso;
  glue_lines(rep, rt.glue, spec);
  if (rt.glue.result) {
    const PresentedModule g = prune(*rt.glue.result);
    run["glued"] = g.describe();
    rep.line("glued: " + g.describe());
  }
  rep.line("isomorphic to input: " + std::string(rt.iso ? "true" : "false"));
  if (rt.input_smith) {
    const std::string a = rt.input_smith->describe();
    const std::string b = rt.output_smith ? rt.output_smith->describe() : "unavailable";
    run["smith"] = {{"input", a}, {"output", b}, {"match", rt.smith_match()}};
    rep.line("smith invariants: input " + a + " | glued " + b);
  }
  rep.line("verdict: " + pass(rt.ok()));
  run["verdict"] = rt.ok();
  return rt.ok() ? RunStatus::Ok : RunStatus::VerificationFailed;
}

RunStatus do_glue(Report& rep, json& run, const DescentDatum& d) {
  const DivisorSpec& spec = d.spec();
  const Verdict comp = check_comparisons(d);
  run["comparisons"] = {{"ok", comp.ok}, {"witness", comp.witness}};
  rep.line("comparisons are isomorphisms: " + pass(comp.ok) + (comp.ok ? "" : " (" + comp.witness + ")"));
  const Verdict coc = check_cocycle(d);
  run["cocycle"] = {{"ok", coc.ok}, {"witness", coc.witness}};
  rep.line("cocycle: " + pass(coc.ok) + (coc.ok ? "" : " (witness " + coc.witness + ")"));
  if (!comp.ok || !coc.ok) {
    run["verdict"] = false;
    rep.line("verdict: FAIL");
    rep.fail(RunStatus::VerificationFailed, comp.ok ? "cocycle fails at " + coc.witness : comp.witness);
    return RunStatus::VerificationFailed;
  }
  const GlueReport g = glue(d);
  run.update(glue_json(g, spec));
  glue_lines(rep, g, spec);
  if (g.result) {
    const PresentedModule n = prune(*g.result);
    run["result"] = n.describe();
    rep.line("result: " + n.describe());
    if (univariate_rational(n.ring())) {
      const std::string s = smith_invariants(n).describe();
      run["invariants"] = s;
      rep.line("result " + s);
    }
  }
  run["verdict"] = g.ok();
  rep.line("verdict: " + pass(g.ok()));
  return g.ok() ? RunStatus::Ok : RunStatus::VerificationFailed;
}

RunStatus do_cocycle(Report& rep, json& run, const DescentDatum& d) {
  const Verdict coc = check_cocycle(d);
  run["verdict"] = coc.ok;
  run["witness"] = coc.witness;
  rep.line("cocycle: " + pass(coc.ok) + (coc.ok ? "" : " (witness " + coc.witness + ")"));
  if (!coc.ok) rep.fail(RunStatus::VerificationFailed, "cocycle fails at " + coc.witness);
  return coc.ok ? RunStatus::Ok : RunStatus::VerificationFailed;
}

RunStatus do_stabilize(Report& rep, json& run, const PresentedModule& m, const DivisorSpec& spec, int depth) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < spec.n(); ++i) gens.push_back(spec.component(i));
  const CompletionTower tower = completion_tower(spec.ring(), gens, depth);
  const TowerModule tm = module_to_tower(m, tower);
  run["depth"] = depth;
  const TowerVerdict tv = is_cocartesian_tower(tm);
  run["cocartesian"] = tv.ok;
  rep.line("tower of depth " + std::to_string(depth) + " coCartesian: " + pass(tv.ok));
  const StabilizedPresentation sp = tower_stabilized_presentation(tm);
  run["level"] = sp.level;
  run["presentation"] = sp.module.describe();
  rep.line("stabilizes at level " + std::to_string(sp.level) + ": " + sp.module.describe());
  return RunStatus::Ok;
}

std::vector<std::size_t> census(int n) {
  const Nerve nv = nerve(strata_poset(n));
  return {nv.count(1), nv.count(2), nv.count(3)};
}

// Independent count of strict chains of subsets of length m.
std::size_t brute_chains(int n, int m) {
  const unsigned s = 1u << n;
  std::function<std::size_t(unsigned, int)> go = [&](unsigned last, int left) -> std::size_t {
    if (left == 0) return 1;
    std::size_t c = 0;
    for (unsigned t = 0; t < s; ++t)
      if (t != last && (t & last) == last) c += go(t, left - 1);
    return c;
  };
  std::size_t total = 0;
  for (unsigned t = 0; t < s; ++t) total += go(t, m - 1);
  return total;
}

RunStatus do_strata(Report& rep, json& run, const DivisorSpec* spec, int n) {
  const Nerve nv = nerve(strata_poset(n));
  const IntSCategory cat = grothendieck_construction(nv);
  json counts = json::array();
  for (int m = 1; m <= nv.max_length(); ++m) counts.push_back(nv.count(m));
  run["n"] = n;
  run["chain_counts"] = counts;
  run["objects"] = cat.objects().size();
  run["non_identity_morphisms"] = cat.non_identity_count();
  rep.line(describe_nerve(nv, spec));
  rep.line(describe_int_s(cat, spec));
  return RunStatus::Ok;
}

Precision precision_of(const RunConfig& cfg) { return Precision(cfg.prec, cfg.prec_cap); }

RunResult input_failure(const RunConfig& cfg, const std::string& msg) {
  Report rep(cfg);
  rep.line("input error: " + msg);
  rep.fail(RunStatus::InputError, msg);
  return rep.finish();
}

}  // namespace

RunResult run_input(const std::string& text, const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  InputFile in;
  try {
    in = parse_input(text, parse_field(cfg.field));
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  const Precision prec = in.precision.value_or(precision_of(cfg));
  Report rep(cfg);
  std::optional<DescentDatum> datum;
  for (const auto& r : in.runs) {
    json run = {{"command", r.command}, {"line", r.line}};
    rep.line("== " + r.command + " (line " + std::to_string(r.line) + ")");
    guarded(rep, run, [&]() -> RunStatus {
      if (r.command == "roundtrip") return do_roundtrip(rep, run, *in.module, *in.divisor, prec);
      if (r.command == "stabilize") return do_stabilize(rep, run, *in.module, *in.divisor, r.depth);
      if (r.command == "strata") return do_strata(rep, run, &*in.divisor, static_cast<int>(in.divisor->n()));
      if (!datum) datum.emplace(build_datum(in, prec));
      if (r.command == "glue") return do_glue(rep, run, *datum);
      return do_cocycle(rep, run, *datum);
    });
  }
  return rep.finish();
}

namespace {

RunResult demo_a1(const RunConfig& cfg) {
  Report rep(cfg);
  const Precision prec = precision_of(cfg);
  const RingPtr r = make_ring({"x"}, parse_field(cfg.field));
  const DivisorSpec spec(r, {"x"});
  const auto diagram = ring_diagram(spec, prec);
  const IntSCategory& cat = diagram->index();
  rep.line("X = A^1, D = {x = 0}");
  const std::string ry = diagram->ring(cat.object_index({0}))->describe_symbolic();
  const std::string rd = diagram->ring(cat.object_index({1}))->describe_symbolic();
  const std::string ryd = diagram->ring(cat.object_index({0, 1}))->describe_symbolic();
  rep.line("R_Y = " + ry);
  rep.line("R_D = " + rd);
  rep.line("R_{Y,D} = " + ryd);
  rep.add({{"command", "rings"}, {"R_Y", ry}, {"R_D", rd}, {"R_YD", ryd}}, RunStatus::Ok);

  auto P = [&](const std::string& s) { return parse_polynomial(s, r->ambient()); };
  std::vector<std::pair<std::string, PresentedModule>> suite = {
      {"R^1", PresentedModule::free(r, 1)},
      {"R/(x^2)", PresentedModule(r, 1, {{P("x^2")}})},
      {"R + R/(x^2)", PresentedModule(r, 2, {{r->zero(), P("x^2")}})},
      {"R/(x^3) + R/(x)", PresentedModule(r, 2, {{P("x^3"), r->zero()}, {r->zero(), P("x")}})},
      {"0", PresentedModule::zero(r)},
  };
  std::mt19937 rng(static_cast<std::mt19937::result_type>(cfg.seed));
  std::uniform_int_distribution<int> nf(0, 2), nt(0, 2), kd(1, 4);
  for (int i = 0; i < 3; ++i) {
    const int f = nf(rng), t = nt(rng);
    std::vector<PolyVec> rels;
    std::string name = "R^" + std::to_string(f);
    for (int j = 0; j < t; ++j) {
      const int k = kd(rng);
      PolyVec col(static_cast<std::size_t>(f + t), r->zero());
      col[static_cast<std::size_t>(f + j)] = r->var(0).pow(static_cast<unsigned>(k));
      rels.push_back(col);
      name += " + R/(x^" + std::to_string(k) + ")";
    }
    suite.emplace_back("random: " + name, PresentedModule(r, static_cast<std::size_t>(f + t), rels));
  }
  for (const auto& [name, m] : suite) {
    json run = {{"command", "roundtrip"}, {"module", name}};
    rep.line("== roundtrip " + name);
    guarded(rep, run, [&] { return do_roundtrip(rep, run, m, spec, prec); });
  }

  // Two data that do not come from a module over R directly.
  const ChainRingPtr& ryd_ring = diagram->ring(cat.object_index({0, 1}));
  const RingPtr ly = diagram->ring(cat.object_index({0}))->body_ring();
  const RingPtr ld = diagram->ring(cat.object_index({1}))->body_ring();
  auto one_by_one = [&](const std::string& e) {
    LaurentMatrix m;
    m.rows = 1;
    m.columns = {{ryd_ring->parse(e)}};
    return m;
  };
  {
    json run = {{"command", "glue"}, {"datum", "rho = x^2 on R_f and R^"}};
    rep.line("== glue rho = x^2");
    guarded(rep, run, [&] {
      DescentDatum d(diagram, {{0, PresentedModule::free(ly, 1)}, {1, PresentedModule::free(ld, 1)}},
                     {{{0, 1}, one_by_one("x^2")}});
      return do_glue(rep, run, d);
    });
  }
  {
    json run = {{"command", "glue"}, {"datum", "M_Y = 0, M_D = R^/(x^3), rho = 0"}};
    rep.line("== glue torsion datum");
    guarded(rep, run, [&] {
      LaurentMatrix zero;
      zero.rows = 1;
      zero.columns = {};
      DescentDatum d(diagram,
                     {{0, PresentedModule::zero(ly)},
                      {1, PresentedModule(ld, 1, {{parse_polynomial("x^3", ld->ambient())}})}},
                     {{{0, 1}, zero}});
      return do_glue(rep, run, d);
    });
  }
  return rep.finish();
}

RunResult demo_a2(const RunConfig& cfg) {
  Report rep(cfg);
  const Precision prec = precision_of(cfg);
  const RingPtr r = make_ring({"x", "y"}, parse_field(cfg.field));
  const DivisorSpec spec(r, {"x", "y"});
  const auto diagram = ring_diagram(spec, prec);
  rep.line("X = A^2, D = {x*y = 0}");
  json rings = json::object();
  for (std::size_t o = 0; o < diagram->index().objects().size(); ++o) {
    const Chain& c = diagram->index().objects()[o].chain;
    std::string name = "R_{";
    for (std::size_t i = 0; i < c.size(); ++i) name += (i ? "," : "") + std::string("Y") + spec.stratum_name(c[i]);
    name += "}";
    const std::string d = diagram->ring(o)->describe_symbolic();
    rep.line(name + " = " + d);
    rings[name] = d;
  }
  std::string why;
  const bool functorial = diagram->functorial(&why);
  rep.line("ring diagram functorial: " + pass(functorial) + (functorial ? "" : " (" + why + ")"));
  rep.add({{"command", "rings"}, {"rings", rings}, {"functorial", functorial}},
          functorial ? RunStatus::Ok : RunStatus::VerificationFailed);
  if (!functorial) rep.fail(RunStatus::VerificationFailed, why);

  auto P = [&](const std::string& s) { return parse_polynomial(s, r->ambient()); };
  const std::vector<std::pair<std::string, PresentedModule>> suite = {
      {"R^1", PresentedModule::free(r, 1)},
      {"R^2", PresentedModule::free(r, 2)},
      {"R/(x)", PresentedModule(r, 1, {{P("x")}})},
  };
  for (const auto& [name, m] : suite) {
    json run = {{"command", "roundtrip"}, {"module", name}};
    rep.line("== roundtrip " + name);
    guarded(rep, run, [&] { return do_roundtrip(rep, run, m, spec, prec); });
  }
  return rep.finish();
}

RunResult demo_census(const RunConfig& cfg) {
  Report rep(cfg);
  rep.line("n: |S_1| |S_2| |S_3|");
  bool all = true;
  json rows = json::array();
  for (int n = 1; n <= 4; ++n) {
    const auto c = census(n);
    bool ok = true;
    for (int m = 1; m <= 3; ++m) ok = ok && c[static_cast<std::size_t>(m - 1)] == brute_chains(n, m);
    all = all && ok;
    rep.line("n=" + std::to_string(n) + ": " + std::to_string(c[0]) + " " + std::to_string(c[1]) + " " +
             std::to_string(c[2]) + (ok ? "" : "  (disagrees with brute force)"));
    rows.push_back({{"n", n}, {"counts", c}, {"brute_force_agrees", ok}});
  }
  rep.add({{"command", "nerve-census"}, {"rows", rows}}, all ? RunStatus::Ok : RunStatus::VerificationFailed);
  if (!all) rep.fail(RunStatus::VerificationFailed, "nerve counts disagree with brute force");
  return rep.finish();
}

void bl_run(Report& rep, const RingPtr& r, const std::string& f, const Precision& prec, int degree) {
  json run = {{"command", "bl-sequence"}, {"ring", r->describe()}, {"f", f}, {"precision", prec.level},
              {"degree", degree}};
  rep.line("== " + r->describe() + ", f = " + f + ", precision " + std::to_string(prec.level) + ", degree " +
           std::to_string(degree));
  guarded(rep, run, [&] {
    const BlReport b = check_bl_sequence(r, f, prec, degree);
    run["injective"] = b.injective;
    run["middle_exact"] = b.middle_exact;
    run["surjective"] = b.surjective;
    run["exact"] = b.exact();
    run["dimensions"] = {{"source", b.source_dim}, {"kernel", b.kernel_dim}, {"target", b.target_dim}};
    json w = json::array();
    for (const auto& x : b.witnesses) w.push_back({{"stage", x.stage}, {"detail", x.detail}});
    run["witnesses"] = w;
    rep.line("injective: " + std::string(b.injective ? "true" : "false") +
             ", middle exact: " + (b.middle_exact ? "true" : "false") +
             ", surjective: " + (b.surjective ? "true" : "false"));
    rep.line("exact: " + std::string(b.exact() ? "true" : "false"));
    for (const auto& x : b.witnesses) rep.line("  " + x.stage + ": " + x.detail);
    if (!b.exact()) rep.fail(RunStatus::VerificationFailed, "sequence is not exact");
    return b.exact() ? RunStatus::Ok : RunStatus::VerificationFailed;
  });
}

RunResult demo_bl(const RunConfig& cfg) {
  Report rep(cfg);
  const Field field = parse_field(cfg.field);
  bl_run(rep, make_ring({"x"}, field), "x", precision_of(cfg), cfg.degree);
  bl_run(rep, make_ring({"x", "y"}, field), "x", precision_of(cfg), std::min(cfg.degree, 6));
  return rep.finish();
}

}  // namespace

RunResult run_demo(const std::string& name, const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  try {
    if (name == "a1") return demo_a1(cfg);
    if (name == "a2-crossing") return demo_a2(cfg);
    if (name == "nerve-census") return demo_census(cfg);
    if (name == "bl-sequence") return demo_bl(cfg);
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  return input_failure(cfg, "unknown demo '" + name + "' (expected a1, a2-crossing, nerve-census or bl-sequence)");
}

RunResult run_strata(int n, const RunConfig& cfg) {
  Report rep(cfg);
  json run = {{"command", "strata"}};
  guarded(rep, run, [&] { return do_strata(rep, run, nullptr, n); });
  return rep.finish();
}

RunResult run_bl(const std::string& vars, const std::string& f, const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  Report rep(cfg);
  std::vector<std::string> names;
  std::stringstream ss(vars);
  for (std::string v; std::getline(ss, v, ',');) names.push_back(v);
  try {
    bl_run(rep, make_ring(names, parse_field(cfg.field)), f, precision_of(cfg), cfg.degree);
  } catch (const Error& e) {
    return input_failure(cfg, e.what());
  }
  return rep.finish();
}

RunResult reformat_report(const std::string& text) {
  RunResult r;
  try {
    const json j = json::parse(text);
    r.output = j.dump(2) + "\n";
  } catch (const json::exception& e) {
    r.status = RunStatus::InputError;
    r.error = e.what();
  }
  return r;
}

}  // namespace snc
