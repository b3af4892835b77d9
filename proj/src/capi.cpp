#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "nctorus.h"
#include "nctorus/axioms.hpp"
#include "nctorus/error.hpp"
#include "nctorus/run.hpp"
#include "nctorus/triple.hpp"

struct nct_config {
  nct::RunConfig cfg;
};

struct nct_triple {
  explicit nct_triple(const nct::TripleConfig& c) : triple(c) {}
  nct::AssembledTriple triple;
};

namespace {

thread_local std::string last_error;

nct_status to_status(nct::ErrorCode c) {
  switch (c) {
    case nct::ErrorCode::InvalidArgument: return NCT_ERR_INVALID_ARGUMENT;
    case nct::ErrorCode::PreconditionViolation: return NCT_ERR_PRECONDITION;
    case nct::ErrorCode::UnsupportedDimension: return NCT_ERR_UNSUPPORTED_DIMENSION;
    case nct::ErrorCode::InvalidConfig: return NCT_ERR_INVALID_CONFIG;
    case nct::ErrorCode::InvalidChain: return NCT_ERR_INVALID_CHAIN;
    case nct::ErrorCode::IndexError: return NCT_ERR_INDEX;
    case nct::ErrorCode::IoError: return NCT_ERR_IO;
  }
  return NCT_ERR_INTERNAL;
}

template <class F>
nct_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return NCT_OK;
  } catch (const nct::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return NCT_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) nct::fail(nct::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* nct_version(void) { return "0.1.0"; }

const char* nct_last_error(void) { return last_error.c_str(); }

void nct_string_free(char* s) { std::free(s); }

nct_status nct_config_parse(const char* json, nct_config** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    *out = nullptr;
    auto c = std::make_unique<nct_config>();
    c->cfg = nct::parse_config(json);
    *out = c.release();
  });
}

void nct_config_free(nct_config* cfg) { delete cfg; }

nct_status nct_config_set_cutoff(nct_config* cfg, int cutoff) {
  return guard([&] {
    require(cfg, "cfg");
    if (cutoff < 1) nct::fail(nct::ErrorCode::InvalidConfig, "cutoff must be positive");
    cfg->cfg.triple.cutoff = cutoff;
  });
}

nct_status nct_config_set_seed(nct_config* cfg, uint64_t seed) {
  return guard([&] {
    require(cfg, "cfg");
    cfg->cfg.seed = seed;
  });
}

nct_status nct_config_set_tolerance(nct_config* cfg, const char* name, double value) {
  return guard([&] {
    require(cfg, "cfg");
    require(name, "name");
    cfg->cfg.tol.set(name, value);
  });
}

nct_status nct_config_to_json(const nct_config* cfg, char** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = dup(nct::config_json(cfg->cfg));
  });
}

nct_status nct_triple_assemble(const nct_config* cfg, nct_triple** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = nullptr;
    *out = new nct_triple(cfg->cfg.triple);
  });
}

void nct_triple_free(nct_triple* t) { delete t; }

nct_status nct_triple_info(const nct_triple* t, int* n, size_t* sites, size_t* spinor_dim) {
  return guard([&] {
    require(t, "triple");
    if (n) *n = t->triple.n();
    if (sites) *sites = t->triple.lattice().site_count();
    if (spinor_dim) *spinor_dim = t->triple.lattice().spinor_mult();
  });
}

nct_status nct_triple_spectrum(const nct_triple* t, double* out, size_t capacity, size_t* count) {
  return guard([&] {
    require(t, "triple");
    require(count, "count");
    *count = t->triple.lattice().dimension();
    if (!out) return;
    if (capacity < *count) nct::fail(nct::ErrorCode::InvalidArgument, "spectrum buffer too small");
    const auto s = nct::full_spectrum(t->triple);
    std::copy(s.begin(), s.end(), out);
  });
}

nct_status nct_triple_kernel_dimension(const nct_triple* t, double tol, size_t* out) {
  return guard([&] {
    require(t, "triple");
    require(out, "out");
    *out = nct::kernel_dimension(t->triple, tol);
  });
}

nct_status nct_triple_spectral_dimension(const nct_triple* t, double* slope) {
  return guard([&] {
    require(t, "triple");
    require(slope, "slope");
    *slope = nct::spectral_dimension(t->triple);
  });
}

nct_status nct_triple_apply_J(const nct_triple* t, const double* in, double* out, size_t length) {
  return guard([&] {
    require(t, "triple");
    require(in, "in");
    require(out, "out");
    const size_t dim = t->triple.lattice().dimension();
    if (length != 2 * dim) nct::fail(nct::ErrorCode::InvalidArgument, "vector length must be 2 * sites * spinor_dim");
    std::vector<nct::cplx> v(dim);
    for (size_t k = 0; k < dim; ++k) v[k] = {in[2 * k], in[2 * k + 1]};
    const auto w = nct::apply_J(t->triple, v);
    for (size_t k = 0; k < dim; ++k) out[2 * k] = w[k].real(), out[2 * k + 1] = w[k].imag();
  });
}

nct_status nct_triple_summary(const nct_triple* t, double kernel_tol, char** json) {
  return guard([&] {
    require(t, "triple");
    require(json, "json");
    *json = dup(nct::spectrum_summary_json(t->triple, nct::full_spectrum(t->triple), kernel_tol));
  });
}

nct_status nct_verify(const nct_config* cfg, char** report_json, int* overall_pass) {
  return guard([&] {
    require(cfg, "cfg");
    require(report_json, "report_json");
    bool ok = false;
    *report_json = dup(nct::verify_json(cfg->cfg, ok));
    if (overall_pass) *overall_pass = ok ? 1 : 0;
  });
}

nct_status nct_orbits(int n, char** json) {
  return guard([&] {
    require(json, "json");
    *json = dup(nct::orbits_json(n));
  });
}

nct_status nct_clifford_check(const char* matrices_json, uint64_t seed, char** verdict_json, int* overall_pass) {
  return guard([&] {
    require(matrices_json, "matrices_json");
    require(verdict_json, "verdict_json");
    bool ok = false;
    *verdict_json = dup(nct::clifford_check_json(nct::parse_matrices(matrices_json), seed, ok));
    if (overall_pass) *overall_pass = ok ? 1 : 0;
  });
}

nct_status nct_c_space(int n, char** json) {
  return guard([&] {
    require(json, "json");
    *json = dup(nct::c_space_json(n));
  });
}

}  // extern "C"
