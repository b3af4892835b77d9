/* C interface to the noncommutative-torus spectral triple library. */
#ifndef NCTORUS_H
#define NCTORUS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nct_status {
  NCT_OK = 0,
  NCT_ERR_INVALID_ARGUMENT = 1,
  NCT_ERR_PRECONDITION = 2,
  NCT_ERR_UNSUPPORTED_DIMENSION = 3,
  NCT_ERR_INVALID_CONFIG = 4,
  NCT_ERR_INVALID_CHAIN = 5,
  NCT_ERR_INDEX = 6,
  NCT_ERR_IO = 7,
  NCT_ERR_INTERNAL = 99
} nct_status;

typedef struct nct_config nct_config;
typedef struct nct_triple nct_triple;

const char* nct_version(void);
/* Message for the last failing call on this thread; never NULL. */
const char* nct_last_error(void);
/* Frees strings returned through char** out-parameters. */
void nct_string_free(char* s);

nct_status nct_config_parse(const char* json, nct_config** out);
void nct_config_free(nct_config* cfg);
nct_status nct_config_set_cutoff(nct_config* cfg, int cutoff);
nct_status nct_config_set_seed(nct_config* cfg, uint64_t seed);
nct_status nct_config_set_tolerance(nct_config* cfg, const char* name, double value);
nct_status nct_config_to_json(const nct_config* cfg, char** out);

nct_status nct_triple_assemble(const nct_config* cfg, nct_triple** out);
void nct_triple_free(nct_triple* t);
nct_status nct_triple_info(const nct_triple* t, int* n, size_t* sites, size_t* spinor_dim);
/* With out == NULL only *count is set. Order: site-major, ascending per block. */
nct_status nct_triple_spectrum(const nct_triple* t, double* out, size_t capacity, size_t* count);
nct_status nct_triple_kernel_dimension(const nct_triple* t, double tol, size_t* out);
nct_status nct_triple_spectral_dimension(const nct_triple* t, double* slope);
/* Vectors are interleaved (re, im) pairs of length 2 * sites * spinor_dim. */
nct_status nct_triple_apply_J(const nct_triple* t, const double* in, double* out, size_t length);
nct_status nct_triple_summary(const nct_triple* t, double kernel_tol, char** json);

nct_status nct_verify(const nct_config* cfg, char** report_json, int* overall_pass);
nct_status nct_orbits(int n, char** json);
nct_status nct_clifford_check(const char* matrices_json, uint64_t seed, char** verdict_json, int* overall_pass);
nct_status nct_c_space(int n, char** json);

#ifdef __cplusplus
}
#endif

#endif
