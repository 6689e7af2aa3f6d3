#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snc/descent.hpp"

namespace snc {

// Line-oriented input:
//
//   SNCDESCENT 1
//   RING x, y
//   FIELD Q                     (optional)
//   DIVISOR x, y
//   PRECISION 8 64              (optional)
//   MODULE 2                    then COL lines, one relation each
//   DATUM                       then STRATUM/RHO blocks
//   STRATUM {x} 1               then COL lines over the stratum ring
//   RHO {} {x} [PRECISION 12]   then ROW lines over the chain ring
//   RUN glue | roundtrip | cocycle | stabilize <depth> | strata
//
// '#' starts a comment. Entries within COL and ROW are separated by commas.

struct Located {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based column of the first character
};

struct StratumBlock {
  std::string name;
  Stratum stratum = 0;
  std::size_t gens = 0;
  std::vector<std::vector<Located>> columns;
  int line = 0;
};

struct RhoBlock {
  Stratum y = 0;
  Stratum z = 0;
  std::optional<int> precision;
  std::vector<std::vector<Located>> rows;
  int line = 0;
};

struct RunDirective {
  std::string command;
  int depth = 0;
  int line = 0;
};

struct InputFile {
  RingPtr ring;
  std::optional<DivisorSpec> divisor;
  std::optional<Precision> precision;
  std::optional<PresentedModule> module;
  bool has_datum = false;
  std::vector<StratumBlock> strata;
  std::vector<RhoBlock> rhos;
  std::vector<RunDirective> runs;
};

// `default_field` applies when the file has no FIELD line. Throws ParseError.
InputFile parse_input(const std::string& text, const Field& default_field);

// Builds the datum at the given precision; entries are checked against their
// chain rings. Throws ParseError pointing at the offending entry.
DescentDatum build_datum(const InputFile& in, const Precision& prec);

// Parses "{}" or "{x,y}" against the divisor's components.
Stratum parse_stratum(const DivisorSpec& spec, const std::string& text, int line, int column);

}  // namespace snc
