#pragma once

#include <string>

#include "snc/field.hpp"

namespace snc {

struct RunConfig {
  std::string field = "Q";
  int prec = 8;
  int prec_cap = 64;
  int degree = 10;
  unsigned long seed = 0;
  bool structured = false;

  // Throws StructuralError on a value out of range.
  void validate() const;
};

// Exit codes shared by the library and the command line tool.
enum class RunStatus : int {
  Ok = 0,
  VerificationFailed = 1,
  InputError = 2,
  PrecisionExhausted = 3,
  Internal = 4,
};

struct RunResult {
  RunStatus status = RunStatus::Ok;
  std::string output;  // the report, text or JSON
  std::string error;   // one-line diagnostic when status is not Ok
};

RunResult run_input(const std::string& text, const RunConfig& cfg);
RunResult run_demo(const std::string& name, const RunConfig& cfg);
RunResult run_strata(int n, const RunConfig& cfg);
RunResult run_bl(const std::string& vars, const std::string& f, const RunConfig& cfg);
// Parses a structured report and emits it again.
RunResult reformat_report(const std::string& json);

}  // namespace snc
