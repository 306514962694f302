#ifndef MIXVOL_H
#define MIXVOL_H

/* Generated by cbindgen from src/lib.rs; rebuild with --features gen-header. */

#include <stddef.h>
#include <stdint.h>

/**
 * How mixed volumes of pairs are evaluated.
 */
typedef enum {
  MV_METHOD_FACE_FORMULA = 0,
  MV_METHOD_POLARIZATION = 1,
  MV_METHOD_TRUNCATION = 2,
} MvMethod;

/**
 * Result of every call.
 */
typedef enum {
  MV_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  MV_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input is well formed but violates a hypothesis of the operation.
   */
  MV_STATUS_PRECONDITION = 2,
  /**
   * The input is malformed: bad JSON, unknown fields, invalid UTF-8.
   */
  MV_STATUS_SCHEMA = 3,
  /**
   * An internal failure was contained at the boundary.
   */
  MV_STATUS_INTERNAL = 4,
} MvStatus;

/**
 * Opaque handle for a pair of polyhedra with bounded difference.
 */
typedef struct MvPair MvPair;

/**
 * Opaque polyhedron handle.
 */
typedef struct MvPolyhedron MvPolyhedron;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, empty after a
 * successful call. Valid until the next call on the same thread.
 */
const char *mv_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void mv_string_free(char *s);

/**
 * Parses a JSON polyhedron literal or `newton` shorthand.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
MvStatus mv_polyhedron_from_json(const char *json, MvPolyhedron **out);

/**
 * `conv(exponents) + R^dim_+`; `exponents` holds `count` rows of `dim`
 * integers.
 *
 * # Safety
 * `exponents` must point to `count * dim` integers; `out` must be writable.
 */
MvStatus mv_polyhedron_newton(size_t dim,
                              const int64_t *exponents,
                              size_t count,
                              MvPolyhedron **out);

/**
 * # Safety
 * `p` must come from this library and must not be used afterwards.
 */
void mv_polyhedron_free(MvPolyhedron *p);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t mv_polyhedron_dim(const MvPolyhedron *p);

/**
 * Lattice-normalized volume of a bounded polyhedron.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
MvStatus mv_polyhedron_volume(const MvPolyhedron *p, char **out);

/**
 * Pair of copies of `a` and `b`; the inputs stay owned by the caller.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
MvStatus mv_pair_new(const MvPolyhedron *a, const MvPolyhedron *b, MvPair **out);

/**
 * # Safety
 * `p` must come from this library and must not be used afterwards.
 */
void mv_pair_free(MvPair *p);

/**
 * `vol(A minus B) - vol(B minus A)`.
 *
 * # Safety
 * `pair` must be a live handle; `out` must be writable.
 */
MvStatus mv_pair_volume(const MvPair *pair, char **out);

/**
 * Mixed volume of `count` pairs in dimension `count`.
 *
 * # Safety
 * `pairs` must point to `count` live handles; `out` must be writable.
 */
MvStatus mv_mixed_volume_pairs(const MvPair *const *pairs,
                               size_t count,
                               MvMethod method,
                               char **out);

/**
 * Milnor number of a generic complete intersection with the given Newton
 * polyhedra.
 *
 * # Safety
 * `newton` must point to `count` live handles; `out` must be writable.
 */
MvStatus mv_milnor_number(const MvPolyhedron *const *newton, size_t count, char **out);

/**
 * Runs a problem file `{"command", "payload", "options"}`. On success and on
 * computation failures `out_json` receives the same JSON the command line
 * prints; after a null argument or an internal failure it receives null.
 *
 * # Safety
 * `problem` must be a nul-terminated string; `out_json` must be writable.
 */
MvStatus mv_run_json(const char *problem, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXVOL_H */
