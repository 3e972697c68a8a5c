#ifndef ISOLAB_H
#define ISOLAB_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IsolabStatus {
  ISOLAB_STATUS_OK = 0,
  ISOLAB_STATUS_NULL_POINTER = 1,
  ISOLAB_STATUS_INVALID_UTF8 = 2,
  ISOLAB_STATUS_VALIDATION = 3,
  ISOLAB_STATUS_PRECISION = 4,
  ISOLAB_STATUS_UNSUPPORTED = 5,
  ISOLAB_STATUS_PANIC = 6,
} IsolabStatus;

/**
 * Outcome of comparing two polygons in the specialization order, where
 * `a ≺ b` means that `b` lies on or below `a`.
 */
typedef enum IsolabOrder {
  ISOLAB_ORDER_EQUAL = 0,
  ISOLAB_ORDER_PRECEDES = 1,
  ISOLAB_ORDER_FOLLOWS = 2,
  ISOLAB_ORDER_INCOMPARABLE = 3,
  ISOLAB_ORDER_DIFFERENT_ENDPOINTS = 4,
} IsolabOrder;

/**
 * Opaque Newton polygon.
 */
typedef struct IsolabPolygon IsolabPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *isolab_last_error_message(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void isolab_string_free(char *s);

/**
 * Parses a polygon such as `"2*(1,0)+(2,1)"` into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum IsolabStatus isolab_polygon_parse(const char *text, struct IsolabPolygon **out);

/**
 * Releases a polygon handle.
 *
 * # Safety
 * `poly` must be null or a handle from this library that was not yet freed.
 */
void isolab_polygon_free(struct IsolabPolygon *poly);

/**
 * Height `h`, the x-coordinate of the endpoint.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_height(const struct IsolabPolygon *poly, uint64_t *out);

/**
 * Dimension `d`, the y-coordinate of the endpoint.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_dimension(const struct IsolabPolygon *poly, uint64_t *out);

/**
 * Dimension of the open stratum of the polygon.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_dim(const struct IsolabPolygon *poly, uint64_t *out);

/**
 * Dimension of the stratum in the principally polarized moduli space;
 * fails for non-symmetric polygons.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_sdim(const struct IsolabPolygon *poly, uint64_t *out);

/**
 * Multiplicity of slope 0.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_p_rank(const struct IsolabPolygon *poly, uint64_t *out);

/**
 * The dual polygon as a new handle.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IsolabStatus isolab_polygon_dual(const struct IsolabPolygon *poly, struct IsolabPolygon **out);

/**
 * Compares `a` with `b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum IsolabStatus isolab_polygon_compare(const struct IsolabPolygon *a,
                                         const struct IsolabPolygon *b,
                                         enum IsolabOrder *out);

/**
 * Canonical text of the polygon; free with [`isolab_string_free`].
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
char *isolab_polygon_to_string(const struct IsolabPolygon *poly);

/**
 * Runs the command line given as a JSON array of strings (without the
 * program name), e.g. `["np","dim","--pairs","(2,1)"]`. Standard output and
 * standard error are returned as new strings and `exit_code` receives the
 * exit status the binary would have. The status is `Ok` whenever the
 * command ran, whatever its exit code.
 *
 * # Safety
 * `argv_json` must be a NUL-terminated string; the three output pointers
 * must be writable.
 */
enum IsolabStatus isolab_run(const char *argv_json,
                             int32_t *exit_code,
                             char **stdout_out,
                             char **stderr_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOLAB_H */
