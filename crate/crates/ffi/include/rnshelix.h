#ifndef RNSHELIX_H
#define RNSHELIX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of an FFI call.
 */
typedef enum RnsStatus {
  RNS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  RNS_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  RNS_STATUS_INVALID_UTF8 = 2,
  /**
   * The input was rejected (malformed document, bad settings).
   */
  RNS_STATUS_VALIDATION = 3,
  /**
   * The computation failed (degenerate geometry, integration blow-up).
   */
  RNS_STATUS_NUMERICAL = 4,
  /**
   * Reading or writing files failed.
   */
  RNS_STATUS_IO = 5,
  /**
   * The requested value does not exist for this analysis.
   */
  RNS_STATUS_NOT_AVAILABLE = 6,
  /**
   * An index was past the end.
   */
  RNS_STATUS_OUT_OF_RANGE = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  RNS_STATUS_PANIC = 8,
} RnsStatus;

typedef enum RnsCausal {
  RNS_CAUSAL_SPACELIKE = 0,
  RNS_CAUSAL_TIMELIKE = 1,
  RNS_CAUSAL_LIGHTLIKE = 2,
} RnsCausal;

typedef enum RnsAngleKind {
  RNS_ANGLE_KIND_COS_SPACELIKE_PLANE = 0,
  RNS_ANGLE_KIND_COSH_TIMELIKE_PLANE = 1,
  RNS_ANGLE_KIND_SINH_MIXED = 2,
  RNS_ANGLE_KIND_COSH_SAME_CONE = 3,
} RnsAngleKind;

/**
 * Opaque result of one analysis.
 */
typedef struct RnsAnalysis RnsAnalysis;

/**
 * One row of the sample table; NaN marks a value that does not exist.
 */
typedef struct RnsSample {
  double s;
  double kappa_g;
  double kappa_n;
  double tau_g;
  double sigma;
  double d1;
  double d2;
  double d3;
} RnsSample;

/**
 * A vector (x1, x2, x3) of Minkowski 3-space.
 */
typedef struct RnsVec3 {
  double x1;
  double x2;
  double x3;
} RnsVec3;

typedef struct RnsAngle {
  double value;
  enum RnsAngleKind kind;
} RnsAngle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or "" if none.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *rns_last_error_message(void);

/**
 * Analyze a JSON document (curve or profile). `tol` is the constancy
 * tolerance; pass 0 or a negative value for the default. On success
 * `*out` receives a handle to release with `rns_analysis_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RnsStatus rns_analyze_json(const char *json, double tol, struct RnsAnalysis **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from `rns_analyze_json` and not be used afterwards.
 */
void rns_analysis_free(struct RnsAnalysis *a);

/**
 * The full report as JSON, owned by the handle.
 *
 * # Safety
 * `a` must be a live handle or null (which yields null).
 */
const char *rns_analysis_report_json(const struct RnsAnalysis *a);

/**
 * Whether the curve is a relatively normal-slant helix.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum RnsStatus rns_analysis_rns_verdict(const struct RnsAnalysis *a, bool *out);

/**
 * Whether the curve is a slant helix.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum RnsStatus rns_analysis_slant_verdict(const struct RnsAnalysis *a, bool *out);

/**
 * The characterization constant; `NotAvailable` when there is no helix.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum RnsStatus rns_analysis_rns_constant(const struct RnsAnalysis *a, double *out);

/**
 * Number of rows in the sample table (0 for a null handle).
 *
 * # Safety
 * `a` must be a live handle or null.
 */
size_t rns_analysis_sample_count(const struct RnsAnalysis *a);

/**
 * Row `index` of the sample table.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum RnsStatus rns_analysis_sample(const struct RnsAnalysis *a,
                                   size_t index,
                                   struct RnsSample *out);

/**
 * Write report.json and samples.csv into directory `dir`.
 *
 * # Safety
 * `a` must be a live handle and `dir` a NUL-terminated string.
 */
enum RnsStatus rns_analysis_write(const struct RnsAnalysis *a, const char *dir);

/**
 * Minkowski inner product −x1y1 + x2y2 + x3y3.
 */
double rns_mdot(struct RnsVec3 x, struct RnsVec3 y);

/**
 * Minkowski cross product.
 */
struct RnsVec3 rns_mcross(struct RnsVec3 x, struct RnsVec3 y);

/**
 * Causal character of `v` with null-cone tolerance `eps`.
 */
enum RnsCausal rns_causal_character(struct RnsVec3 v, double eps);

/**
 * Lorentzian angle between two non-null vectors.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RnsStatus rns_lorentz_angle(struct RnsVec3 v,
                                 struct RnsVec3 w,
                                 double eps,
                                 struct RnsAngle *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RNSHELIX_H */
