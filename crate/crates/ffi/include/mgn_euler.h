#ifndef MGN_EULER_H
#define MGN_EULER_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define MGN_KIND_CHI_OPEN 0

#define MGN_KIND_CHI_BAR 1

#define MGN_KIND_E_OPEN 2

#define MGN_KIND_E_BAR 3

/*
 Selects the first route of the requested quantity.
 */
#define MGN_ROUTE_DEFAULT 0

#define MGN_ROUTE_FORMULA 1

#define MGN_ROUTE_GRAPHSUM 2

#define MGN_ROUTE_WICK 3

#define MGN_ROUTE_BRANCH_DATA 4

#define MGN_ROUTE_DIRECT 5

#define MGN_ROUTE_GENFUN 6

#define MGN_FORMAT_CSV 0

#define MGN_FORMAT_JSON 1

#define MGN_FORMAT_MD 2

#define MGN_VERIFY_QUICK 0

#define MGN_VERIFY_FULL 1

/*
 Result of every fallible call.
 */
typedef enum MgnStatus {
  MGN_STATUS_OK = 0,
  MGN_STATUS_NULL_POINTER = 1,
  MGN_STATUS_INVALID_ARGUMENT = 2,
  MGN_STATUS_WINDOW_EXCEEDED = 3,
  MGN_STATUS_NOT_INVERTIBLE = 4,
  MGN_STATUS_NO_CONVERGENCE = 5,
  MGN_STATUS_NON_INTEGRAL = 6,
  MGN_STATUS_CONSISTENCY = 7,
  MGN_STATUS_FIXTURE = 8,
  MGN_STATUS_CACHE = 9,
  MGN_STATUS_IO = 10,
  MGN_STATUS_PANIC = 11,
} MgnStatus;

/*
 Opaque engine handle.
 */
typedef struct MgnEngine MgnEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Engine version as a static string; never free it.
 */
const char *mgn_version(void);

/*
 Creates an engine with the default windows. Returns null only if
 allocation panics.
 */
struct MgnEngine *mgn_engine_new(void);

/*
 Creates an engine with explicit series windows.

 # Safety
 `out` must be valid for one pointer write.
 */
enum MgnStatus mgn_engine_new_with_windows(uintptr_t xmax,
                                           uintptr_t hmax,
                                           uintptr_t lmax,
                                           uintptr_t ymax,
                                           struct MgnEngine **out);

/*
 Releases an engine. Null is ignored.

 # Safety
 `e` must be null or a handle from this library not yet freed.
 */
void mgn_engine_free(struct MgnEngine *e);

/*
 Enables the on-disk result cache in `dir`, or disables it when `dir` is
 null.

 # Safety
 `e` must be a live handle; `dir` null or a NUL-terminated string.
 */
enum MgnStatus mgn_engine_set_cache_dir(struct MgnEngine *e, const char *dir);

/*
 Computes one quantity (`MGN_KIND_*`) by one route (`MGN_ROUTE_*`) and
 writes its exact value (`"p/q"` or an integer) to `out`.

 # Safety
 `e` must be a live handle; `out` valid for one pointer write.
 */
enum MgnStatus mgn_compute(const struct MgnEngine *e,
                           uint32_t kind,
                           uint32_t route,
                           uint32_t g,
                           uint32_t n,
                           char **out);

/*
 Computes one quantity by every route and writes a JSON report to `out`.
 A disagreement between routes returns `MGN_STATUS_CONSISTENCY`.

 # Safety
 `e` must be a live handle; `out` valid for one pointer write.
 */
enum MgnStatus mgn_compute_all_routes(const struct MgnEngine *e,
                                      uint32_t kind,
                                      uint32_t g,
                                      uint32_t n,
                                      char **out);

/*
 Renders reference table 1 or 2 in a `MGN_FORMAT_*` and reports how many
 cells differ from the embedded fixture.

 # Safety
 `e` must be a live handle; `out` and `diffs` valid for one write each.
 */
enum MgnStatus mgn_table(const struct MgnEngine *e,
                         uint32_t which,
                         uint32_t format,
                         char **out,
                         uintptr_t *diffs);

/*
 Runs the verification suite (`MGN_VERIFY_*`), writing the JSON report to
 `out` and whether every check passed to `passed`.

 # Safety
 `e` must be a live handle; `out` and `passed` valid for one write each.
 */
enum MgnStatus mgn_verify(const struct MgnEngine *e, uint32_t level, char **out, bool *passed);

/*
 Message of the last failed call on this thread, or null. The caller owns
 the returned string.
 */
char *mgn_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must be null or a string from this library not yet freed.
 */
void mgn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MGN_EULER_H */
