#ifndef RELAYCAP_H
#define RELAYCAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RelaycapSetKind {
  RELAYCAP_SET_KIND_CAP = 0,
  RELAYCAP_SET_KIND_BAND = 1,
  RELAYCAP_SET_KIND_TWO_CAPS = 2,
} RelaycapSetKind;

typedef enum RelaycapStatus {
  RELAYCAP_STATUS_OK = 0,
  RELAYCAP_STATUS_DOMAIN = 1,
  RELAYCAP_STATUS_INVALID_INPUT = 2,
  RELAYCAP_STATUS_NUMERICAL = 3,
  RELAYCAP_STATUS_UNSUPPORTED_SET = 4,
  RELAYCAP_STATUS_NULL_POINTER = 5,
  RELAYCAP_STATUS_OUT_OF_RANGE = 6,
  RELAYCAP_STATUS_PANIC = 7,
} RelaycapStatus;

typedef enum RelaycapVerdict {
  RELAYCAP_VERDICT_PASS = 0,
  RELAYCAP_VERDICT_FAIL = 1,
  RELAYCAP_VERDICT_INCONCLUSIVE = 2,
} RelaycapVerdict;

// Channel with source power `P` and per-link noise `N`.
typedef struct RelaycapChannel RelaycapChannel;

// Rows of a bound sweep over a C0 grid.
typedef struct RelaycapSweep RelaycapSweep;

typedef struct RelaycapGapCertificate {
  double theta0;
  double delta1;
  double derivative_at_pi_half;
  double gap_lower_bound;
  double certified_bound;
} RelaycapGapCertificate;

typedef struct RelaycapSweepRow {
  double c0;
  double cutset;
  double new_bound;
  double cf_rate;
  double c_infinity;
} RelaycapSweepRow;

typedef struct RelaycapMcReport {
  double estimate;
  double std_error;
  uint64_t n_used;
  double threshold;
  enum RelaycapVerdict verdict;
  uint64_t seed;
} RelaycapMcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a
// successful call. Valid until the next call into this library on the
// same thread.
const char *relaycap_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *relaycap_version(void);

// # Safety
// `out` must be valid for writes.
enum RelaycapStatus relaycap_channel_new(double power, double noise, struct RelaycapChannel **out);

// # Safety
// `channel` must come from `relaycap_channel_new` and not be freed twice.
void relaycap_channel_free(struct RelaycapChannel *channel);

// `C(0)` in bits.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_capacity_no_relay(const struct RelaycapChannel *channel, double *out);

// `C(inf)` in bits.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_capacity_full_cooperation(const struct RelaycapChannel *channel,
                                                       double *out);

// Link capacity at which the cut-set bound reaches `C(inf)`.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_cutset_c0_threshold(const struct RelaycapChannel *channel,
                                                 double *out);

// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_cutset_bound(const struct RelaycapChannel *channel,
                                          double c0,
                                          double *out);

// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_new_upper_bound(const struct RelaycapChannel *channel,
                                             double c0,
                                             double tol,
                                             double *out);

// Compress-and-forward achievable rate.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_cf_rate(const struct RelaycapChannel *channel, double c0, double *out);

// The bound kernel `h_theta(omega)`, angles in radians within `[0, pi/2]`.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_h_theta(const struct RelaycapChannel *channel,
                                     double theta,
                                     double omega,
                                     double *out);

// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_gap_certificate(const struct RelaycapChannel *channel,
                                             double c0,
                                             struct RelaycapGapCertificate *out);

// Evaluates every bound on `steps` evenly spaced link capacities.
//
// # Safety
// `channel` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_sweep_new(const struct RelaycapChannel *channel,
                                       double c0_min,
                                       double c0_max,
                                       size_t steps,
                                       double tol,
                                       struct RelaycapSweep **out);

// Number of rows, or 0 for a null handle.
//
// # Safety
// `sweep` must be null or a live handle.
size_t relaycap_sweep_len(const struct RelaycapSweep *sweep);

// # Safety
// `sweep` must be a live handle and `out` valid for writes.
enum RelaycapStatus relaycap_sweep_row(const struct RelaycapSweep *sweep,
                                       size_t index,
                                       struct RelaycapSweepRow *out);

// # Safety
// `sweep` must come from `relaycap_sweep_new` and not be freed twice.
void relaycap_sweep_free(struct RelaycapSweep *sweep);

// `log2` area of a cap of angle `theta` on the sphere of radius `sqrt(m n_scale)`.
//
// # Safety
// `out` must be valid for writes.
enum RelaycapStatus relaycap_log_cap_area(size_t m, double n_scale, double theta, double *out);

// `log2` area of the intersection of two caps with orthogonal poles.
//
// # Safety
// `out` must be valid for writes.
enum RelaycapStatus relaycap_log_cap_intersection(size_t m,
                                                  double n_scale,
                                                  double theta1,
                                                  double theta2,
                                                  double *out);

// Regularized incomplete beta `I_x(a, b)`.
//
// # Safety
// `out` must be valid for writes.
enum RelaycapStatus relaycap_reg_inc_beta(double x, double a, double b, double *out);

// Extended isoperimetry on the unit-scale sphere for a set of effective
// angle `theta`. Angles in radians.
//
// # Safety
// `out` must be valid for writes.
enum RelaycapStatus relaycap_mc_isoperimetry_sphere(size_t m,
                                                    enum RelaycapSetKind set,
                                                    double theta,
                                                    double omega,
                                                    uint64_t seed,
                                                    size_t samples,
                                                    size_t trials,
                                                    double epsilon,
                                                    struct RelaycapMcReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELAYCAP_H */
