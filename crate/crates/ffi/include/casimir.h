#ifndef CASIMIR_H
#define CASIMIR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CASIMIR_AXIS_A 0

#define CASIMIR_AXIS_B 1

#define CASIMIR_AXIS_C 2

#define CASIMIR_IDENTITY_SCHLOMILCH 0

#define CASIMIR_IDENTITY_ONE_PARTITION 1

#define CASIMIR_IDENTITY_ONE_SUM 2

#define CASIMIR_IDENTITY_TWO_SUM 3

#define CASIMIR_IDENTITY_TWO_PARTITION 4

#define CASIMIR_IDENTITY_THREE_SUM 5

#define CASIMIR_IDENTITY_THREE_PARTITION 6

#define CASIMIR_IDENTITY_THREE_PARTITION_PLUS 7

typedef enum CasimirStatus {
  CASIMIR_STATUS_OK = 0,
  CASIMIR_STATUS_INVALID_ARGUMENT = 1,
  CASIMIR_STATUS_NON_CONVERGENCE = 2,
  CASIMIR_STATUS_NULL_POINTER = 3,
  CASIMIR_STATUS_BRACKET_FAILURE = 4,
  CASIMIR_STATUS_PANIC = 5,
} CasimirStatus;

/**
 * Opaque precision policy.
 */
typedef struct CasimirPolicy CasimirPolicy;

/**
 * A value with its a posteriori error bound.
 */
typedef struct CasimirValue {
  double value;
  double error_bound;
} CasimirValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a policy with the given relative tolerance and per-axis term cap.
 * Returns null if the values are invalid.
 */
struct CasimirPolicy *casimir_policy_new(double rel_tol, uint64_t max_index);

/**
 * Creates the default policy.
 */
struct CasimirPolicy *casimir_policy_default(void);

/**
 * Frees a policy; null is ignored.
 *
 * # Safety
 * `policy` must come from this library and not be used afterwards.
 */
void casimir_policy_free(struct CasimirPolicy *policy);

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *casimir_last_error(void);

/**
 * Library version as a static string.
 */
const char *casimir_version(void);

/**
 * Fermion free energy of the box `a × b × c` at temperature `t` (`t = 0`
 * for the vacuum energy).
 *
 * # Safety
 * `policy` must be null or a live handle; `out` must be writable.
 */
enum CasimirStatus casimir_fermion_energy(const struct CasimirPolicy *policy,
                                          double a,
                                          double b,
                                          double c,
                                          double t,
                                          struct CasimirValue *out);

/**
 * Fermion force on the walls normal to `axis` (one of `CASIMIR_AXIS_*`).
 *
 * # Safety
 * As for [`casimir_fermion_energy`].
 */
enum CasimirStatus casimir_fermion_force(const struct CasimirPolicy *policy,
                                         double a,
                                         double b,
                                         double c,
                                         double t,
                                         uint32_t axis,
                                         struct CasimirValue *out);

/**
 * Fermion waveguide with cross-section `b × c`, per unit length.
 *
 * # Safety
 * `policy` must be null or a live handle; the out pointers must be writable.
 */
enum CasimirStatus casimir_fermion_waveguide(const struct CasimirPolicy *policy,
                                             double b,
                                             double c,
                                             double t,
                                             struct CasimirValue *energy,
                                             struct CasimirValue *force_b,
                                             struct CasimirValue *force_c);

/**
 * Fermion parallel plates at separation `b`, per unit area.
 *
 * # Safety
 * `policy` must be null or a live handle; the out pointers must be writable.
 */
enum CasimirStatus casimir_fermion_plate(const struct CasimirPolicy *policy,
                                         double b,
                                         double t,
                                         struct CasimirValue *energy,
                                         struct CasimirValue *force);

/**
 * Physical electromagnetic free energy of the box; at `t = 0` the
 * renormalized vacuum energy.
 *
 * # Safety
 * As for [`casimir_fermion_energy`].
 */
enum CasimirStatus casimir_em_energy(const struct CasimirPolicy *policy,
                                     double a,
                                     double b,
                                     double c,
                                     double t,
                                     struct CasimirValue *out);

/**
 * Checks one lattice-sum identity (`CASIMIR_IDENTITY_*`) with `n_params`
 * parameters and writes the number of agreeing digits. A null policy uses
 * the verification tolerance.
 *
 * # Safety
 * `params` must point to `n_params` readable doubles; `digits` must be
 * writable.
 */
enum CasimirStatus casimir_verify_identity(const struct CasimirPolicy *policy,
                                           uint32_t kind,
                                           const double *params,
                                           size_t n_params,
                                           int32_t *digits);

/**
 * Cross-section ratio `c/b` at which the zero-temperature waveguide force
 * along `c` changes sign.
 *
 * # Safety
 * `policy` must be null or a live handle; `out` must be writable.
 */
enum CasimirStatus casimir_critical_aspect_t0(const struct CasimirPolicy *policy, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CASIMIR_H */
