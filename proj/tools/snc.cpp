// Command line front end. Talks to the engine only through the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "snc/sncdescent.h"

namespace {

int finish(snc_status s, snc_result* r) {
  if (r) {
    std::fputs(snc_result_output(r), stdout);
    const char* err = snc_result_error(r);
    if (err && *err) std::fprintf(stderr, "snc: %s\n", err);
    snc_result_free(r);
  }
  if (s == SNC_INVALID_ARGUMENT) return 2;
  return static_cast<int>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descent for modules along a strict normal crossings divisor"};
  app.require_subcommand(1);

  std::string field = "Q", format = "text";
  int prec = 8, cap = 64, deg = 10;
  unsigned long seed = 0;
  app.add_option("--field", field, "Coefficient field: Q or a prime")->envname("SNC_FIELD")->capture_default_str();
  app.add_option("--prec", prec, "Starting precision level")->envname("SNC_PREC")->capture_default_str();
  app.add_option("--prec-cap", cap, "Precision cap for escalation")->envname("SNC_PREC_CAP")->capture_default_str();
  app.add_option("--deg", deg, "Degree bound for linear-algebra checks")->envname("SNC_DEG")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized suites")->envname("SNC_SEED")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->envname("SNC_FORMAT")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Run a built-in demo: a1, a2-crossing, nerve-census, bl-sequence");
  demo->add_option("name", demo_name, "Demo name")->required();

  std::string path;
  auto* run = app.add_subcommand("run", "Run an input file");
  run->add_option("file", path, "Input file")->required();

  int n = 2;
  auto* strata = app.add_subcommand("strata", "List the nerve and its Grothendieck construction");
  strata->add_option("n", n, "Number of divisor components (1..5)")->required();

  std::string vars = "x", f = "x";
  auto* bl = app.add_subcommand("bl", "Check exactness of 0 -> R -> R_f + R^ -> R^_f");
  bl->add_option("--vars", vars, "Ring variables, comma separated")->capture_default_str();
  bl->add_option("--f", f, "The variable f")->capture_default_str();

  std::string report;
  auto* reformat = app.add_subcommand("reformat", "Re-emit a JSON report");
  reformat->add_option("file", report, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  snc_config* cfg = snc_config_new();
  if (!cfg) return 4;
  const std::pair<const char*, std::string> settings[] = {
      {"field", field},       {"prec", std::to_string(prec)}, {"prec-cap", std::to_string(cap)},
      {"deg", std::to_string(deg)}, {"seed", std::to_string(seed)}, {"format", format},
  };
  for (const auto& [key, value] : settings) {
    if (snc_config_set(cfg, key, value.c_str()) != SNC_OK) {
      std::fprintf(stderr, "snc: invalid value '%s' for --%s\n", value.c_str(), key);
      snc_config_free(cfg);
      return 2;
    }
  }

  snc_result* r = nullptr;
  snc_status s = SNC_INTERNAL;
  if (*demo) {
    s = snc_run_demo(cfg, demo_name.c_str(), &r);
    if (s == SNC_INPUT_ERROR) std::fputs(app.help().c_str(), stderr);
  } else if (*run) {
    s = snc_run_file(cfg, path.c_str(), &r);
  } else if (*strata) {
    s = snc_run_strata(cfg, n, &r);
  } else if (*bl) {
    s = snc_run_bl(cfg, vars.c_str(), f.c_str(), &r);
  } else if (*reformat) {
    std::ifstream in(report, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "snc: cannot open %s\n", report.c_str());
      snc_config_free(cfg);
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    s = snc_reformat_report(ss.str().c_str(), &r);
  }
  snc_config_free(cfg);
  return finish(s, r);
}
