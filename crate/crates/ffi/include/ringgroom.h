#ifndef RINGGROOM_H
#define RINGGROOM_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum RgStatus {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_INVALID_INSTANCE = 2,
  RG_STATUS_UNSUPPORTED = 3,
  RG_STATUS_CONSTRUCTION_FAILED = 4,
  RG_STATUS_PARSE_ERROR = 5,
  RG_STATUS_BUDGET_EXHAUSTED = 6,
  RG_STATUS_INTERNAL = 7,
} RgStatus;

/**
 * A decomposition owned by the library.
 */
typedef struct RgDecomposition RgDecomposition;

typedef struct RgReport {
  bool valid;
  size_t violations;
  size_t drop_cost;
  size_t wavecost;
  size_t triangles;
} RgReport;

typedef struct RgTriangleBound {
  /**
   * `L(v,w)` times 6.
   */
  int64_t l_num;
  uint64_t delta_min;
  uint64_t residue;
  uint64_t slack_ceiling;
} RgTriangleBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *rg_last_error(void);

/**
 * Builds an optimal `N(n,v;4,cprime)`; with `mon` the wavelength count is
 * minimised too. On success `*out` owns a new handle.
 *
 * # Safety
 * `out` must be null or point to writable storage for a pointer.
 */
enum RgStatus rg_build(uint32_t n,
                       uint32_t v,
                       uint32_t cprime,
                       bool mon,
                       uint64_t seed,
                       struct RgDecomposition **out);

/**
 * Parses decomposition JSON.
 *
 * # Safety
 * `json` must be null or a nul-terminated string; `out` as for [`rg_build`].
 */
enum RgStatus rg_decomposition_from_json(const char *json, struct RgDecomposition **out);

/**
 * Serializes a decomposition. The string is released with [`rg_string_free`].
 *
 * # Safety
 * `d` must be null or a live handle; `out` must be null or writable.
 */
enum RgStatus rg_decomposition_to_json(const struct RgDecomposition *d, char **out);

/**
 * Checks a decomposition and fills `*report`.
 *
 * # Safety
 * `d` must be null or a live handle; `report` must be null or writable.
 */
enum RgStatus rg_decomposition_verify(const struct RgDecomposition *d, struct RgReport *report);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `d` must be null or a handle not yet freed.
 */
void rg_decomposition_free(struct RgDecomposition *d);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void rg_string_free(char *s);

/**
 * Optimal drop cost from the closed form.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum RgStatus rg_cost_two_period(uint32_t n, uint32_t v, uint32_t cprime, uint64_t *out);

/**
 * Fewest wavelengths over cost-optimal groomings, from the closed form.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum RgStatus rg_wavecost_mon(uint32_t n, uint32_t v, uint32_t cprime, uint64_t *out);

/**
 * Triangle bound for `C' = 3`.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum RgStatus rg_triangle_lower_bound(uint32_t v, uint32_t w, struct RgTriangleBound *out);

/**
 * Exact minimum drop cost by search, `n <= 8`. `nodes = 0` uses the
 * default budget. On `BudgetExhausted`, `*out` holds an upper bound.
 *
 * # Safety
 * `out` must be null or writable.
 */
enum RgStatus rg_oracle_min_cost(uint32_t n,
                                 uint32_t v,
                                 uint32_t cprime,
                                 uint64_t nodes,
                                 uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINGGROOM_H */
