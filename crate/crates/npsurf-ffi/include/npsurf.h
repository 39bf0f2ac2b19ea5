#ifndef NPSURF_H
#define NPSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum {
  NPSURF_STATUS_OK = 0,
  NPSURF_STATUS_NULL_ARGUMENT = 1,
  NPSURF_STATUS_INVALID_UTF8 = 2,
  NPSURF_STATUS_PARSE_ERROR = 3,
  NPSURF_STATUS_WINDOW_ERROR = 4,
  NPSURF_STATUS_KIND_MISMATCH = 5,
  NPSURF_STATUS_MISSING_FLAG = 6,
  NPSURF_STATUS_UNSUPPORTED = 7,
  NPSURF_STATUS_INVALID_ARGUMENT = 8,
  NPSURF_STATUS_PANIC = 9,
} NpsurfStatus;

/**
 * Opaque handle to a graded module table.
 */
typedef struct NpsurfModule NpsurfModule;

/**
 * Opaque handle to a polarized surface.
 */
typedef struct NpsurfSurface NpsurfSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last error on this thread; valid until the next
 * failing call on the same thread.
 */
const char *npsurf_last_error_message(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 * `s` must come from an npsurf out-pointer and not already be freed.
 */
void npsurf_string_free(char *s);

/**
 * Parses a module-table JSON document into a handle.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be a valid pointer.
 */
NpsurfStatus npsurf_module_parse(const char *json, NpsurfModule **out);

/**
 * Builds the rational-normal-curve fixture of degree `d`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
NpsurfStatus npsurf_module_rnc(uint32_t d, int64_t q_max, NpsurfModule **out);

/**
 * # Safety
 * `module` must come from a module constructor and not already be freed.
 */
void npsurf_module_free(NpsurfModule *module);

/**
 * dim K_{p,q} of the module.
 *
 * # Safety
 * `module` must be a live handle; `out` must be valid.
 */
NpsurfStatus npsurf_koszul_dim(const NpsurfModule *module, uint32_t p, int64_t q, uint64_t *out);

/**
 * Property (N_p) over 2 <= q <= q_bound. On failure `*witness_p` and
 * `*witness_q` receive the first nonzero cell.
 *
 * # Safety
 * `module` must be a live handle; out-pointers must be valid.
 */
NpsurfStatus npsurf_check_np(const NpsurfModule *module,
                             int64_t p,
                             int64_t q_bound,
                             bool *holds,
                             bool *has_witness,
                             uint32_t *witness_p,
                             int64_t *witness_q);

/**
 * Parses a surface JSON document into a handle.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be a valid pointer.
 */
NpsurfStatus npsurf_surface_parse(const char *json, NpsurfSurface **out);

/**
 * # Safety
 * `surface` must come from `npsurf_surface_parse` and not already be freed.
 */
void npsurf_surface_free(NpsurfSurface *surface);

/**
 * phi(L); `*is_finite` is false when the lattice has no isotropic classes,
 * in which case `*value` is not written.
 *
 * # Safety
 * `surface` must be a live handle; out-pointers must be valid.
 */
NpsurfStatus npsurf_surface_phi(const NpsurfSurface *surface, int64_t *value, bool *is_finite);

/**
 * Clifford index of a general curve in |L| on an Enriques surface.
 *
 * # Safety
 * `surface` must be a live handle; `out` must be valid.
 */
NpsurfStatus npsurf_surface_clifford_index(const NpsurfSurface *surface, int64_t *out);

/**
 * Serialized verdict for the named decision procedure: "a" (degree-5
 * threshold on K3/abelian), "k3" (sharp thresholds with the genus-two
 * resolution), or "enriques".
 *
 * # Safety
 * `surface` must be a live handle; `theorem` NUL-terminated; `out` valid.
 */
NpsurfStatus npsurf_surface_verdict_json(const NpsurfSurface *surface,
                                         const char *theorem,
                                         uint32_t p,
                                         char **out);

/**
 * Serialized verdict for the multiple m*L on a K3 surface.
 *
 * # Safety
 * `surface` must be a live handle; `out` must be valid.
 */
NpsurfStatus npsurf_surface_mukai_json(const NpsurfSurface *surface,
                                       uint32_t m,
                                       uint32_t p,
                                       char **out);

/**
 * Seshadri certificate at a very general point: `*certified` is the
 * outcome; on success the certified strict lower bound p+2 is written to
 * `*exceeds`.
 *
 * # Safety
 * `surface` must be a live handle; out-pointers must be valid.
 */
NpsurfStatus npsurf_surface_seshadri(const NpsurfSurface *surface,
                                     uint32_t p,
                                     bool *certified,
                                     int64_t *exceeds);

/**
 * Degree of `coords` against the polarization, plus its self-intersection.
 *
 * # Safety
 * `surface` must be a live handle; `coords` must point to `len` values;
 * out-pointers must be valid.
 */
NpsurfStatus npsurf_surface_pair_with_polarization(const NpsurfSurface *surface,
                                                   const int64_t *coords,
                                                   uintptr_t len,
                                                   int64_t *degree,
                                                   int64_t *self_int);

/**
 * Surface kind as a small integer: 0 = K3, 1 = abelian, 2 = Enriques.
 *
 * # Safety
 * `surface` must be a live handle; `out` must be valid.
 */
NpsurfStatus npsurf_surface_kind(const NpsurfSurface *surface, uint32_t *out);

/**
 * -(F^2) for a chain of (-2)-curves with the given multiplicities.
 *
 * # Safety
 * `multiplicities` must point to `len` values; `out` must be valid.
 */
NpsurfStatus npsurf_chain_self_intersection(const int64_t *multiplicities,
                                            uintptr_t len,
                                            int64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NPSURF_H */
