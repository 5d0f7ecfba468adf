#ifndef QTOP_H
#define QTOP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum QtopStatus {
  QTOP_STATUS_OK = 0,
  QTOP_STATUS_NULL_POINTER = 1,
  QTOP_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or a document that fails validation.
   */
  QTOP_STATUS_INVALID_INPUT = 3,
  /**
   * Valid input outside what the operation supports.
   */
  QTOP_STATUS_UNSUPPORTED = 4,
  QTOP_STATUS_OUT_OF_RANGE = 5,
  QTOP_STATUS_PANIC = 6,
} QtopStatus;

typedef enum QtopRotund {
  QTOP_ROTUND_POINT = 0,
  QTOP_ROTUND_SET = 1,
  QTOP_ROTUND_DELTA = 2,
  QTOP_ROTUND_FULL = 3,
} QtopRotund;

typedef enum QtopStrategy {
  QTOP_STRATEGY_COARSEST = 0,
  QTOP_STRATEGY_FINEST = 1,
} QtopStrategy;

/**
 * Which premetric of a bundle to read.
 */
typedef enum QtopPremetric {
  QTOP_PREMETRIC_PLAIN = 0,
  QTOP_PREMETRIC_REGULARIZED = 1,
  QTOP_PREMETRIC_SEMIREGULARIZED = 2,
} QtopPremetric;

typedef struct QtopBase QtopBase;

typedef struct QtopBundle QtopBundle;

typedef struct QtopMonoid QtopMonoid;

typedef struct QtopSpace QtopSpace;

/**
 * A dyadic rational `num / 2^exp`.
 */
typedef struct QtopDyadic {
  uint64_t num;
  uint32_t exp;
} QtopDyadic;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qtop_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qtop_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void qtop_string_free(char *s);

/**
 * Parses `{"n": .., "opens": [..]}`. With `strict` the family must already
 * be closed under unions and intersections.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QtopStatus qtop_space_from_json(const char *json, bool strict, struct QtopSpace **out);

/**
 * # Safety
 * `space` must be null or a live handle; it is invalid afterwards.
 */
void qtop_space_free(struct QtopSpace *space);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t qtop_space_size(const struct QtopSpace *space);

/**
 * Separation flags as a JSON object.
 *
 * # Safety
 * `space` must be a live handle; `out` must be writable.
 */
enum QtopStatus qtop_space_classify_json(const struct QtopSpace *space, char **out);

/**
 * Number of labeled topologies on `n` points (`1 ≤ n ≤ 5`).
 *
 * # Safety
 * `out` must be writable.
 */
enum QtopStatus qtop_topology_count(size_t n, size_t *out);

/**
 * Parses `{"n": .., "members": [..]}`. With `strict` the members must
 * already be in canonical order.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QtopStatus qtop_base_from_json(const char *json, bool strict, struct QtopBase **out);

/**
 * # Safety
 * `base` must be null or a live handle; it is invalid afterwards.
 */
void qtop_base_free(struct QtopBase *base);

/**
 * Number of members in canonical order, or 0 for a null handle.
 *
 * # Safety
 * `base` must be null or a live handle.
 */
size_t qtop_base_member_count(const struct QtopBase *base);

/**
 * Rotundness of the multiplicative closure of the base in its induced
 * topology.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum QtopStatus qtop_base_is_rotund(const struct QtopBase *base, enum QtopRotund kind, bool *out);

/**
 * Builds the bundle for the base member at `member` in the induced
 * topology and runs its checks.
 *
 * # Safety
 * `base` must be a live handle; `out` must be writable.
 */
enum QtopStatus qtop_bundle_synthesize(const struct QtopBase *base,
                                       size_t member,
                                       enum QtopStrategy strategy,
                                       struct QtopBundle **out);

/**
 * # Safety
 * `bundle` must be null or a live handle; it is invalid afterwards.
 */
void qtop_bundle_free(struct QtopBundle *bundle);

/**
 * Whether every applicable check passed; false for a null handle.
 *
 * # Safety
 * `bundle` must be null or a live handle.
 */
bool qtop_bundle_all_passed(const struct QtopBundle *bundle);

/**
 * The value `p(x, y)` of the selected premetric.
 *
 * # Safety
 * `bundle` must be a live handle; `out` must be writable.
 */
enum QtopStatus qtop_bundle_distance(const struct QtopBundle *bundle,
                                     enum QtopPremetric which,
                                     size_t x,
                                     size_t y,
                                     struct QtopDyadic *out);

/**
 * The whole bundle, checks included, as JSON.
 *
 * # Safety
 * `bundle` must be a live handle; `out` must be writable.
 */
enum QtopStatus qtop_bundle_to_json(const struct QtopBundle *bundle, char **out);

/**
 * Parses `{"space": .., "mul": [[..]], "unit": .., "unit_side": ..}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QtopStatus qtop_monoid_from_json(const char *json, bool strict, struct QtopMonoid **out);

/**
 * # Safety
 * `monoid` must be null or a live handle; it is invalid afterwards.
 */
void qtop_monoid_free(struct QtopMonoid *monoid);

/**
 * Left (`left = true`) or right subinvariant bundle for the open unit
 * neighbourhood given by `points[0..len]`, as JSON.
 *
 * # Safety
 * `monoid` must be a live handle, `points` must hold `len` readable
 * values, and `out` must be writable.
 */
enum QtopStatus qtop_monoid_synthesize_json(const struct QtopMonoid *monoid,
                                            bool left,
                                            const size_t *points,
                                            size_t len,
                                            char **out);

/**
 * Runs a suite (`claims`, `separations`, `monoids`, `rotund`) over a scope
 * (`catalog` or `enumerated:N`), writing the JSON report and whether it
 * passed.
 *
 * # Safety
 * `name` and `scope` must be NUL-terminated strings; `out` and `passed`
 * must be writable.
 */
enum QtopStatus qtop_suite_run_json(const char *name,
                                    const char *scope,
                                    size_t workers,
                                    uint64_t seed,
                                    char **out,
                                    bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTOP_H */
