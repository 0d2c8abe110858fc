/* C ABI for the median-lab oracle laboratory. */

#ifndef MEDIAN_LAB_H
#define MEDIAN_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every `ml_` call.
 */
typedef enum MlStatus {
  MlOk = 0,
  MlNullPointer = 1,
  MlBadParams = 2,
  MlBadPoint = 3,
  MlSelfQuery = 4,
  MlRepeatedQuery = 5,
  /**
   * Result requested before `ml_session_finish`.
   */
  MlNotFinished = 6,
  /**
   * Query or finish after the session already finished.
   */
  MlAlreadyFinished = 7,
  MlIoError = 8,
  MlBadPath = 9,
  MlInternal = 10,
} MlStatus;

/**
 * Opaque session handle.
 */
typedef struct MlSession MlSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session. `optimized` selects the alternate threshold
 * parameterization when nonzero. On success writes a handle to `out`;
 * release it with `ml_session_free`.
 */
enum MlStatus ml_session_new(uint32_t n,
                             uint32_t h,
                             uint64_t delta_num,
                             uint64_t delta_den,
                             uint32_t optimized,
                             struct MlSession **out);

/**
 * Answers one query; writes the answer in half-units to `answer_half`.
 */
enum MlStatus ml_session_answer(struct MlSession *session,
                                uint32_t a,
                                uint32_t b,
                                uint64_t *answer_half);

/**
 * Declares the output `z`: pads its remaining pairs, builds the final
 * metric and runs every check. Afterwards the result getters work.
 */
enum MlStatus ml_session_finish(struct MlSession *session, uint32_t z);

/**
 * Number of answered queries so far, padding included.
 */
enum MlStatus ml_session_q_used(const struct MlSession *session, uint64_t *out);

/**
 * Costs of the declared output and the planted center, in half-units.
 */
enum MlStatus ml_session_costs(const struct MlSession *session,
                               uint64_t *cost_z_half,
                               uint64_t *cost_alpha_half);

/**
 * Achieved ratio cost(z)/cost(center) as a reduced fraction.
 */
enum MlStatus ml_session_ratio(const struct MlSession *session, uint64_t *num, uint64_t *den);

/**
 * Check counts by status.
 */
enum MlStatus ml_session_check_counts(const struct MlSession *session,
                                      uint64_t *passed,
                                      uint64_t *failed,
                                      uint64_t *skipped);

/**
 * Full certificate report as a JSON string. Free with `ml_string_free`.
 */
enum MlStatus ml_session_report_json(const struct MlSession *session, char **out);

/**
 * Writes the final metric in the text matrix format (full matrices only).
 */
enum MlStatus ml_session_export_matrix(const struct MlSession *session, const char *path);

/**
 * Frees a string returned by this library.
 */
void ml_string_free(char *s);

/**
 * Frees a session handle.
 */
void ml_session_free(struct MlSession *session);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MEDIAN_LAB_H */
