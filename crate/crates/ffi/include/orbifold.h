#ifndef ORBIFOLD_H
#define ORBIFOLD_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OrbifoldStatus {
  ORBIFOLD_STATUS_OK = 0,
  ORBIFOLD_STATUS_NULL_POINTER = 1,
  ORBIFOLD_STATUS_INVALID_UTF8 = 2,
  ORBIFOLD_STATUS_PARSE = 3,
  ORBIFOLD_STATUS_ORDER_CAP = 4,
  ORBIFOLD_STATUS_NOT_NORMAL = 5,
  ORBIFOLD_STATUS_BAD_SELECTOR = 6,
  ORBIFOLD_STATUS_DEGENERATE = 7,
  ORBIFOLD_STATUS_NUMERICAL = 8,
  ORBIFOLD_STATUS_FALSIFIED = 9,
  ORBIFOLD_STATUS_BUFFER_TOO_SMALL = 10,
  ORBIFOLD_STATUS_INVALID = 11,
  ORBIFOLD_STATUS_PANIC = 12,
} OrbifoldStatus;

// A resolved (M, N) pair with its equivariantized category.
typedef struct OrbifoldInstance OrbifoldInstance;

// Result of a verification run.
typedef struct OrbifoldReport OrbifoldReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next call into this library from the same thread.
const char *orbifold_last_error(void);

// Static version string.
const char *orbifold_version(void);

// Resolve "<group>/<selector>" and build its orbifold data.
//
// # Safety
// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
enum OrbifoldStatus orbifold_instance_new(const char *spec,
                                          bool allow_degenerate,
                                          uint64_t seed,
                                          struct OrbifoldInstance **out);

// # Safety
// `h` must be null or a handle from [`orbifold_instance_new`] not yet freed.
void orbifold_instance_free(struct OrbifoldInstance *h);

// Orders of M and N.
//
// # Safety
// All pointers must be valid.
enum OrbifoldStatus orbifold_instance_orders(const struct OrbifoldInstance *h,
                                             uintptr_t *group_order,
                                             uintptr_t *subgroup_order);

// Number of simple objects of Rep A.
//
// # Safety
// All pointers must be valid.
enum OrbifoldStatus orbifold_instance_num_labels(const struct OrbifoldInstance *h, uintptr_t *out);

// Dimensions of the simples of the equivariantization. When `buf` is null
// or `cap` is too small, only `len` is written.
//
// # Safety
// `buf` must be null or point to `cap` writable elements; other pointers valid.
enum OrbifoldStatus orbifold_instance_simple_dims(const struct OrbifoldInstance *h,
                                                  uintptr_t *buf,
                                                  uintptr_t cap,
                                                  uintptr_t *len);

// Whether the simples match those of D(M); the D(M) data is cached on the handle.
//
// # Safety
// All pointers must be valid.
enum OrbifoldStatus orbifold_instance_matches_double(struct OrbifoldInstance *h, bool *out);

// Run the verification suite on `count` instance specs, or on the default
// catalog when `count` is 0.
//
// # Safety
// `specs` must point to `count` valid NUL-terminated strings (may be null
// when `count` is 0); `out` must be valid.
enum OrbifoldStatus orbifold_verify(const char *const *specs,
                                    uintptr_t count,
                                    uint64_t seed,
                                    struct OrbifoldReport **out);

// # Safety
// `r` must be a valid report handle.
bool orbifold_report_passed(const struct OrbifoldReport *r);

// Canonical JSON of a report; free the string with [`orbifold_string_free`].
//
// # Safety
// `r` must be a valid report handle and `out` a valid pointer.
enum OrbifoldStatus orbifold_report_json(const struct OrbifoldReport *r, char **out);

// # Safety
// `r` must be null or a handle from [`orbifold_verify`] not yet freed.
void orbifold_report_free(struct OrbifoldReport *r);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void orbifold_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBIFOLD_H */
