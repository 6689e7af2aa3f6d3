#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

#include "snc/descent.hpp"
#include "snc/errors.hpp"
#include "snc/parse.hpp"
#include "snc/runner.hpp"
#include "snc/sncdescent.h"

struct snc_config {
  snc::RunConfig cfg;
};

struct snc_result {
  snc::RunResult result;
};

struct snc_ring {
  snc::RingPtr ring;
};

struct snc_module {
  snc::PresentedModule module;
};

namespace {

snc_status to_status(snc::RunStatus s) { return static_cast<snc_status>(static_cast<int>(s)); }

// Stores r in *out and returns its status.
snc_status deliver(snc::RunResult r, snc_result** out) {
  const snc_status s = to_status(r.status);
  *out = new (std::nothrow) snc_result{std::move(r)};
  return *out ? s : SNC_INTERNAL;
}

template <typename F>
snc_status guarded(snc_result** out, F&& f) {
  if (!out) return SNC_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    return deliver(f(), out);
  } catch (const std::exception& e) {
    snc::RunResult r;
    r.status = snc::RunStatus::Internal;
    r.error = e.what();
    return deliver(std::move(r), out);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? std::string() : item.substr(a, b - a + 1));
  }
  return out;
}

bool parse_int(const char* v, long lo, long hi, long& out) {
  char* end = nullptr;
  errno = 0;
  const long x = std::strtol(v, &end, 10);
  if (errno || end == v || *end || x < lo || x > hi) return false;
  out = x;
  return true;
}

}  // namespace

extern "C" {

const char* snc_version(void) { return "1.0.0"; }

const char* snc_status_name(snc_status status) {
  switch (status) {
    case SNC_OK: return "ok";
    case SNC_VERIFICATION_FAILED: return "verification_failed";
    case SNC_INPUT_ERROR: return "input_error";
    case SNC_PRECISION_EXHAUSTED: return "precision_exhausted";
    case SNC_INTERNAL: return "internal_error";
    case SNC_INVALID_ARGUMENT: return "invalid_argument";
  }
  return "unknown";
}

snc_config* snc_config_new(void) { return new (std::nothrow) snc_config{}; }
void snc_config_free(snc_config* cfg) { delete cfg; }

snc_status snc_config_set(snc_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return SNC_INVALID_ARGUMENT;
  const std::string k = key;
  long x = 0;
  if (k == "field") {
    try {
      snc::parse_field(value);
    } catch (const snc::Error&) {
      return SNC_INVALID_ARGUMENT;
    }
    cfg->cfg.field = value;
  } else if (k == "prec") {
    if (!parse_int(value, 2, 4096, x)) return SNC_INVALID_ARGUMENT;
    cfg->cfg.prec = static_cast<int>(x);
  } else if (k == "prec-cap") {
    if (!parse_int(value, 2, 4096, x)) return SNC_INVALID_ARGUMENT;
    cfg->cfg.prec_cap = static_cast<int>(x);
  } else if (k == "deg") {
    if (!parse_int(value, 1, 1000, x)) return SNC_INVALID_ARGUMENT;
    cfg->cfg.degree = static_cast<int>(x);
  } else if (k == "seed") {
    if (!parse_int(value, 0, 2147483647L, x)) return SNC_INVALID_ARGUMENT;
    cfg->cfg.seed = static_cast<unsigned long>(x);
  } else if (k == "format") {
    const std::string v = value;
    if (v != "text" && v != "json") return SNC_INVALID_ARGUMENT;
    cfg->cfg.structured = v == "json";
  } else {
    return SNC_INVALID_ARGUMENT;
  }
  return SNC_OK;
}

snc_status snc_run_text(const snc_config* cfg, const char* text, snc_result** out) {
  if (!cfg || !text) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] { return snc::run_input(text, cfg->cfg); });
}

snc_status snc_run_file(const snc_config* cfg, const char* path, snc_result** out) {
  if (!cfg || !path) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      snc::RunResult r;
      r.status = snc::RunStatus::InputError;
      r.error = std::string("cannot open ") + path;
      return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return snc::run_input(ss.str(), cfg->cfg);
  });
}

snc_status snc_run_demo(const snc_config* cfg, const char* name, snc_result** out) {
  if (!cfg || !name) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] { return snc::run_demo(name, cfg->cfg); });
}

snc_status snc_run_strata(const snc_config* cfg, int n, snc_result** out) {
  if (!cfg) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] { return snc::run_strata(n, cfg->cfg); });
}

snc_status snc_run_bl(const snc_config* cfg, const char* vars, const char* f, snc_result** out) {
  if (!cfg || !vars || !f) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] { return snc::run_bl(vars, f, cfg->cfg); });
}

snc_status snc_reformat_report(const char* json, snc_result** out) {
  if (!json) return SNC_INVALID_ARGUMENT;
  return guarded(out, [&] { return snc::reformat_report(json); });
}

const char* snc_result_output(const snc_result* r) { return r ? r->result.output.c_str() : ""; }
const char* snc_result_error(const snc_result* r) { return r ? r->result.error.c_str() : ""; }
snc_status snc_result_status(const snc_result* r) { return r ? to_status(r->result.status) : SNC_INVALID_ARGUMENT; }
void snc_result_free(snc_result* r) { delete r; }

snc_status snc_ring_new(const char* vars, const char* field, snc_ring** out) {
  if (!vars || !field || !out) return SNC_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    auto names = split(vars, ',');
    *out = new snc_ring{snc::make_ring(names, snc::parse_field(field))};
    return SNC_OK;
  } catch (const snc::Error&) {
    return SNC_INPUT_ERROR;
  } catch (const std::exception&) {
    return SNC_INTERNAL;
  }
}

void snc_ring_free(snc_ring* r) { delete r; }

snc_status snc_module_new(const snc_ring* ring, size_t gens, const char* relations, snc_module** out) {
  if (!ring || !relations || !out) return SNC_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    std::vector<snc::PolyVec> rels;
    if (std::strlen(relations) > 0) {
      for (const auto& col : split(relations, ';')) {
        snc::PolyVec v;
        for (const auto& e : split(col, ',')) v.push_back(snc::parse_polynomial(e, ring->ring->ambient()));
        if (v.size() != gens) return SNC_INPUT_ERROR;
        rels.push_back(std::move(v));
      }
    }
    *out = new snc_module{snc::PresentedModule(ring->ring, gens, rels)};
    return SNC_OK;
  } catch (const snc::Error&) {
    return SNC_INPUT_ERROR;
  } catch (const std::exception&) {
    return SNC_INTERNAL;
  }
}

void snc_module_free(snc_module* m) { delete m; }

snc_status snc_module_describe(const snc_module* m, char* buf, size_t len, size_t* needed) {
  if (!m) return SNC_INVALID_ARGUMENT;
  const std::string s = m->module.describe();
  if (needed) *needed = s.size() + 1;
  if (buf && len) {
    const std::size_t n = std::min(len - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return SNC_OK;
}

snc_status snc_module_roundtrip(const snc_module* m, const char* divisor, int level, int cap, int* iso) {
  if (!m || !divisor || !iso) return SNC_INVALID_ARGUMENT;
  try {
    snc::DivisorSpec spec(m->module.ring(), split(divisor, ','));
    const auto rep = snc::verify_roundtrip(m->module, spec, snc::Precision(level, cap));
    *iso = rep.ok() ? 1 : 0;
    return rep.ok() ? SNC_OK : SNC_VERIFICATION_FAILED;
  } catch (const snc::PrecisionExhausted&) {
    return SNC_PRECISION_EXHAUSTED;
  } catch (const snc::Error&) {
    return SNC_INPUT_ERROR;
  } catch (const std::exception&) {
    return SNC_INTERNAL;
  }
}

}  // extern "C"
