#include "snc/input.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "snc/errors.hpp"
#include "snc/parse.hpp"

namespace snc {

namespace {

struct Cursor {
  std::string line;
  int number = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits at commas, keeping the column of each piece.
std::vector<Located> split_entries(const std::string& text, int line, int column) {
  std::vector<Located> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t lead = 0;
    while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
    out.push_back({trim(piece), line, column + static_cast<int>(start + lead)});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_names(const std::string& text, int line, int column) {
  std::vector<std::string> out;
  for (const auto& e : split_entries(text, line, column)) {
    if (e.text.empty()) throw ParseError("empty name", line, e.column);
    for (char c : e.text)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw ParseError("bad name '" + e.text + "'", line, e.column);
      }
    out.push_back(e.text);
  }
  return out;
}

int parse_int(const std::string& s, int line, int column, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected " + what + ", got '" + s + "'", line, column);
  if (s.size() > 6) throw ParseError(what + " is too large", line, column);
  return std::stoi(s);
}

// Words of a line with their 1-based columns; a {...} group is one word.
std::vector<Located> words(const std::string& text, int line) {
  std::vector<Located> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (text[i] == '{') {
      const std::size_t close = text.find('}', i);
      if (close == std::string::npos) throw ParseError("unterminated '{'", line, static_cast<int>(i) + 1);
      i = close + 1;
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    out.push_back({text.substr(start, i - start), line, static_cast<int>(start) + 1});
  }
  return out;
}

}  // namespace

Stratum parse_stratum(const DivisorSpec& spec, const std::string& text, int line, int column) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError("expected a stratum like {} or {x,y}", line, column);
  }
  const std::string inner = text.substr(1, text.size() - 2);
  Stratum t = 0;
  if (trim(inner).empty()) return t;
  for (const auto& e : split_entries(inner, line, column + 1)) {
    auto it = std::find(spec.components().begin(), spec.components().end(), e.text);
    if (it == spec.components().end()) throw ParseError("'" + e.text + "' is not a divisor component", line, e.column);
    const Stratum bit = Stratum{1} << (it - spec.components().begin());
    if (t & bit) throw ParseError("component listed twice", line, e.column);
    t |= bit;
  }
  return t;
}

InputFile parse_input(const std::string& text, const Field& default_field) {
  std::vector<Cursor> lines;
  {
    std::istringstream is(text);
    std::string l;
    int n = 0;
    while (std::getline(is, l)) {
      ++n;
      const std::size_t hash = l.find('#');
      if (hash != std::string::npos) l = l.substr(0, hash);
      if (!l.empty() && l.back() == '\r') l.pop_back();
      if (trim(l).empty()) continue;
      lines.push_back({l, n});
    }
  }
  if (lines.empty()) throw ParseError("empty input: expected the header 'SNCDESCENT 1'", 1, 1);
  {
    auto w = words(lines[0].line, lines[0].number);
    if (w.size() != 2 || w[0].text != "SNCDESCENT") {
      throw ParseError("expected the header 'SNCDESCENT 1'", lines[0].number, w.empty() ? 1 : w[0].column);
    }
    if (w[1].text != "1") throw ParseError("unsupported format version " + w[1].text, lines[0].number, w[1].column);
  }

  InputFile in;
  std::vector<std::string> ring_vars;
  std::optional<Field> field;
  int ring_line = 0;
  std::vector<std::string> divisor;
  int divisor_line = 0;
  std::optional<std::size_t> module_gens;
  std::vector<std::vector<Located>> module_cols;
  enum class Block { None, Module, Stratum, Rho } block = Block::None;

  auto rest_after = [](const std::string& l, const Located& kw) {
    return l.substr(static_cast<std::size_t>(kw.column - 1 + static_cast<int>(kw.text.size())));
  };
  auto rest_column = [](const Located& kw) { return kw.column + static_cast<int>(kw.text.size()); };

  auto ensure_ring = [&](int line, int column) {
    if (in.ring) return;
    if (ring_vars.empty()) throw ParseError("RING must come first", line, column);
    in.ring = make_ring(ring_vars, field.value_or(default_field));
    if (!divisor.empty()) {
      try {
        in.divisor.emplace(in.ring, divisor);
      } catch (const Error& e) {
        throw ParseError(e.what(), divisor_line, 1);
      }
    }
  };
  auto need_divisor = [&](int line, int column) {
    ensure_ring(line, column);
    if (!in.divisor) throw ParseError("DIVISOR is required before this line", line, column);
  };

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string& l = lines[k].line;
    const int ln = lines[k].number;
    const auto w = words(l, ln);
    const Located& kw = w[0];
    const std::string rest = rest_after(l, kw);
    if (kw.text == "RING") {
      if (!ring_vars.empty()) throw ParseError("RING given twice", ln, kw.column);
      ring_vars = split_names(rest, ln, rest_column(kw));
      if (ring_vars.size() > 8) throw ParseError("at most 8 ring variables are supported", ln, kw.column);
      ring_line = ln;
    } else if (kw.text == "FIELD") {
      if (in.ring) throw ParseError("FIELD must precede any use of the ring", ln, kw.column);
      if (w.size() != 2) throw ParseError("expected FIELD Q or FIELD <prime>", ln, kw.column);
      try {
        field = parse_field(w[1].text);
      } catch (const Error& e) {
        throw ParseError(e.what(), ln, w[1].column);
      }
    } else if (kw.text == "DIVISOR") {
      if (!divisor.empty()) throw ParseError("DIVISOR given twice", ln, kw.column);
      divisor = split_names(rest, ln, rest_column(kw));
      divisor_line = ln;
      if (in.ring) {
        try {
          in.divisor.emplace(in.ring, divisor);
        } catch (const Error& e) {
          throw ParseError(e.what(), ln, kw.column);
        }
      }
    } else if (kw.text == "PRECISION") {
      if (w.size() != 3) throw ParseError("expected PRECISION <level> <cap>", ln, kw.column);
      const int level = parse_int(w[1].text, ln, w[1].column, "a precision level");
      const int cap = parse_int(w[2].text, ln, w[2].column, "a precision cap");
      try {
        in.precision = Precision(level, cap);
      } catch (const Error& e) {
        throw ParseError(e.what(), ln, w[1].column);
      }
    } else if (kw.text == "MODULE") {
      ensure_ring(ln, kw.column);
      if (module_gens) throw ParseError("MODULE given twice", ln, kw.column);
      if (w.size() != 2) throw ParseError("expected MODULE <generators>", ln, kw.column);
      module_gens = static_cast<std::size_t>(parse_int(w[1].text, ln, w[1].column, "a generator count"));
      block = Block::Module;
    } else if (kw.text == "DATUM") {
      need_divisor(ln, kw.column);
      in.has_datum = true;
      block = Block::None;
    } else if (kw.text == "STRATUM") {
      need_divisor(ln, kw.column);
      if (!in.has_datum) throw ParseError("STRATUM outside a DATUM section", ln, kw.column);
      if (w.size() != 3) throw ParseError("expected STRATUM {..} <generators>", ln, kw.column);
      StratumBlock sb;
      sb.name = w[1].text;
      sb.stratum = parse_stratum(*in.divisor, w[1].text, ln, w[1].column);
      sb.gens = static_cast<std::size_t>(parse_int(w[2].text, ln, w[2].column, "a generator count"));
      sb.line = ln;
      for (const auto& o : in.strata)
        if (o.stratum == sb.stratum) throw ParseError("stratum " + sb.name + " given twice", ln, w[1].column);
      in.strata.push_back(std::move(sb));
      block = Block::Stratum;
    } else if (kw.text == "RHO") {
      need_divisor(ln, kw.column);
      if (!in.has_datum) throw ParseError("RHO outside a DATUM section", ln, kw.column);
      if (w.size() != 3 && w.size() != 5) throw ParseError("expected RHO {..} {..} [PRECISION p]", ln, kw.column);
      RhoBlock rb;
      rb.y = parse_stratum(*in.divisor, w[1].text, ln, w[1].column);
      rb.z = parse_stratum(*in.divisor, w[2].text, ln, w[2].column);
      if (rb.y == rb.z || !contains(rb.z, rb.y)) {
        throw ParseError("RHO needs a strict pair: the first stratum's set inside the second's", ln, w[1].column);
      }
      if (w.size() == 5) {
        if (w[3].text != "PRECISION") throw ParseError("expected PRECISION", ln, w[3].column);
        rb.precision = parse_int(w[4].text, ln, w[4].column, "a precision");
        if (*rb.precision < 1) throw ParseError("precision must be positive", ln, w[4].column);
      }
      rb.line = ln;
      for (const auto& o : in.rhos)
        if (o.y == rb.y && o.z == rb.z) throw ParseError("comparison given twice", ln, kw.column);
      in.rhos.push_back(std::move(rb));
      block = Block::Rho;
    } else if (kw.text == "COL") {
      auto entries = split_entries(rest, ln, rest_column(kw));
      if (block == Block::Module) {
        if (entries.size() != *module_gens) throw ParseError("COL needs one entry per generator", ln, kw.column);
        module_cols.push_back(std::move(entries));
      } else if (block == Block::Stratum) {
        if (entries.size() != in.strata.back().gens) {
          throw ParseError("COL needs one entry per generator", ln, kw.column);
        }
        in.strata.back().columns.push_back(std::move(entries));
      } else {
        throw ParseError("COL outside a MODULE or STRATUM block", ln, kw.column);
      }
    } else if (kw.text == "ROW") {
      if (block != Block::Rho) throw ParseError("ROW outside a RHO block", ln, kw.column);
      in.rhos.back().rows.push_back(split_entries(rest, ln, rest_column(kw)));
    } else if (kw.text == "RUN") {
      if (w.size() < 2) throw ParseError("expected RUN <command>", ln, kw.column);
      RunDirective rd{w[1].text, 0, ln};
      static const std::vector<std::string> known = {"glue", "roundtrip", "cocycle", "stabilize", "strata"};
      if (std::find(known.begin(), known.end(), rd.command) == known.end()) {
        throw ParseError("unknown command '" + rd.command + "'", ln, w[1].column);
      }
      if (rd.command == "stabilize") {
        if (w.size() != 3) throw ParseError("expected RUN stabilize <depth>", ln, w[1].column);
        rd.depth = parse_int(w[2].text, ln, w[2].column, "a tower depth");
        if (rd.depth < 1) throw ParseError("tower depth must be positive", ln, w[2].column);
      } else if (w.size() != 2) {
        throw ParseError("unexpected argument", ln, w[2].column);
      }
      in.runs.push_back(rd);
      block = Block::None;
    } else {
      throw ParseError("unknown keyword '" + kw.text + "'", ln, kw.column);
    }
  }
  if (ring_vars.empty()) throw ParseError("missing RING line", lines.back().number, 1);
  ensure_ring(ring_line, 1);
  if (module_gens) {
    std::vector<PolyVec> rels;
    for (const auto& col : module_cols) {
      PolyVec v;
      for (const auto& e : col) {
        if (e.text.empty()) throw ParseError("empty entry", e.line, e.column);
        v.push_back(parse_polynomial(e.text, in.ring->ambient(), e.line, e.column - 1));
      }
      rels.push_back(std::move(v));
    }
    in.module = PresentedModule(in.ring, *module_gens, rels);
  }
  if (in.runs.empty()) throw ParseError("no RUN directive", lines.back().number, 1);
  for (const auto& r : in.runs) {
    if ((r.command == "roundtrip" || r.command == "stabilize") && !in.module) {
      throw ParseError("RUN " + r.command + " needs a MODULE", r.line, 1);
    }
    if ((r.command == "glue" || r.command == "cocycle") && !in.has_datum) {
      throw ParseError("RUN " + r.command + " needs a DATUM", r.line, 1);
    }
    if (r.command != "glue" && r.command != "cocycle" && !in.divisor) {
      throw ParseError("RUN " + r.command + " needs a DIVISOR", r.line, 1);
    }
  }
  return in;
}

namespace {

LaurentElement parse_entry(const ChainRing& ring, const Located& e) {
  if (e.text.empty()) throw ParseError("empty entry", e.line, e.column);
  try {
    return ring.parse(e.text, e.line, e.column - 1);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what(), e.line, e.column);
  }
}

}  // namespace

DescentDatum build_datum(const InputFile& in, const Precision& prec) {
  if (!in.has_datum || !in.divisor) throw StructuralError("input has no datum");
  const DivisorSpec& spec = *in.divisor;
  RingDiagramPtr diagram = ring_diagram(spec, prec);
  const IntSCategory& cat = diagram->index();

  std::map<Stratum, PresentedModule> modules;
  for (const auto& sb : in.strata) {
    const ChainRingPtr& ring = diagram->ring(cat.object_index({sb.stratum}));
    std::vector<PolyVec> rels;
    for (const auto& col : sb.columns) {
      PolyVec v;
      for (const auto& e : col) {
        LaurentElement x = parse_entry(*ring, e);
        v.push_back(x.body());
      }
      rels.push_back(std::move(v));
    }
    modules.emplace(sb.stratum, PresentedModule(ring->body_ring(), sb.gens, rels));
  }
  for (Stratum t = 0; t <= spec.full(); ++t) {
    if (!modules.count(t)) {
      throw ParseError("DATUM has no STRATUM " + spec.stratum_name(t), in.strata.empty() ? 1 : in.strata.back().line, 1);
    }
  }
  std::map<StratumPair, LaurentMatrix> rho;
  for (const auto& rb : in.rhos) {
    const ChainRingPtr& ring = diagram->ring(cat.object_index({rb.y, rb.z}));
    const std::size_t rows = modules.at(rb.z).n_gens();
    const std::size_t cols = modules.at(rb.y).n_gens();
    if (rb.rows.size() != rows) {
      throw ParseError("RHO needs " + std::to_string(rows) + " ROW line(s)", rb.line, 1);
    }
    LaurentMatrix m;
    m.rows = rows;
    m.columns.assign(cols, LaurentVec(rows, ring->zero()));
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& row = rb.rows[i];
      const bool empty_row = row.size() == 1 && row[0].text.empty();
      if (!(cols == 0 && empty_row) && row.size() != cols) {
        throw ParseError("ROW needs " + std::to_string(cols) + " entries", row.front().line, row.front().column);
      }
      for (std::size_t j = 0; j < cols; ++j) {
        LaurentElement x = parse_entry(*ring, row[j]);
        if (rb.precision) x = x.with_precision(*rb.precision);
        m.columns[j][i] = x;
      }
    }
    rho.emplace(StratumPair{rb.y, rb.z}, std::move(m));
  }
  for (Stratum y = 0; y <= spec.full(); ++y)
    for (Stratum z = 0; z <= spec.full(); ++z) {
      if (y == z || !contains(z, y) || rho.count({y, z})) continue;
      throw ParseError("DATUM has no RHO " + spec.stratum_name(y) + " " + spec.stratum_name(z),
                       in.rhos.empty() ? 1 : in.rhos.back().line, 1);
    }
  return DescentDatum(diagram, std::move(modules), std::move(rho));
}

}  // namespace snc
