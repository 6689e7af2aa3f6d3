#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <vector>
#include <string>

#include <json.hpp>

#ifndef SNC_BINARY
#error "SNC_BINARY must point at the snc executable"
#endif
#ifndef SNC_FIXTURES
#error "SNC_FIXTURES must point at the fixture directory"
#endif

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SNC_BINARY + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) o.out.append(buf.data(), n);
  const int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string fixture(const std::string& name) { return std::string(SNC_FIXTURES) + "/" + name; }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("demos") {
  auto a1 = run("demo a1");
  CHECK(a1.code == 0);
  CHECK(has(a1.out, "R_Y = k[x,1/x]"));
  auto census = run("demo nerve-census");
  CHECK(census.code == 0);
  CHECK(has(census.out, "n=2: 4 5 2"));
  auto bl = run("demo bl-sequence");
  CHECK(bl.code == 0);
  CHECK(has(bl.out, "exact: true"));
  CHECK(run("demo a2-crossing").code == 0);
  CHECK(run("demo nonsense").code == 2);
}

TEST_CASE("exit codes on fixtures") {
  auto ok = run("run " + fixture("torsion_glue.snc"));
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "invariant factors: x^3"));
  auto broken = run("run " + fixture("broken_cocycle.snc"));
  CHECK(broken.code == 1);
  CHECK(has(broken.out, "triple (Y{} > Y{x} > Y{x,y})"));
  CHECK(run("run " + fixture("empty.snc")).code == 2);
  auto bad = run("run " + fixture("bad_syntax.snc"));
  CHECK(bad.code == 2);
  CHECK(has(bad.out, "line 5, column 7"));
  CHECK(run("run " + fixture("hidden_torsion.snc")).code == 3);
  CHECK(run("run " + fixture("underprecise_rho.snc")).code == 3);
  CHECK(run("run " + fixture("roundtrip_mixed.snc")).code == 0);
  CHECK(run("run " + fixture("roundtrip_crossing.snc")).code == 0);
  CHECK(run("run " + fixture("twisted_x2.snc")).code == 0);
  CHECK(run("run " + fixture("does_not_exist.snc")).code == 2);
}

TEST_CASE("flags and environment") {
  CHECK(run("--prec 1 demo a1").code == 2);
  CHECK(run("--format xml demo a1").code == 2);
  CHECK(run("--field 4 demo a1").code == 2);
  auto env = run("demo nerve-census", "SNC_FORMAT=json");
  CHECK(env.code == 0);
  auto j = nlohmann::json::parse(env.out);
  CHECK(j["config"]["precision"]["level"] == 8);
  auto p = nlohmann::json::parse(run("--format json demo nerve-census", "SNC_PREC=12").out);
  CHECK(p["config"]["precision"]["level"] == 12);
  auto gf = run("--field 101 run " + fixture("torsion_glue.snc"));
  CHECK(gf.code == 0);
  CHECK(has(gf.out, "GF(101)"));
}

TEST_CASE("structured output round-trips") {
  for (const std::string& args : std::vector<std::string>{"--format json run " + fixture("torsion_glue.snc"),
                                 "--format json run " + fixture("broken_cocycle.snc"),
                                 "--format json demo a1", "--format json strata 2"}) {
    auto first = run(args);
    auto j = nlohmann::json::parse(first.out);
    CHECK(j["exit_code"] == first.code);
    CHECK(j.dump(2) + "\n" == first.out);
    const std::string path = "roundtrip_report.json";
    {
      std::ofstream f(path, std::ios::binary);
      f << first.out;
    }
    auto again = run("reformat " + path);
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
    std::remove(path.c_str());
  }
  auto broken = nlohmann::json::parse(run("--format json run " + fixture("broken_cocycle.snc")).out);
  CHECK(broken["runs"][0]["witness"].get<std::string>().find("triple (Y{} > Y{x} > Y{x,y})") == 0);
}

TEST_CASE("determinism") {
  CHECK(run("--seed 5 demo a1").out == run("--seed 5 demo a1").out);
  CHECK(run("--format json run " + fixture("roundtrip_crossing.snc")).out ==
        run("--format json run " + fixture("roundtrip_crossing.snc")).out);
}
