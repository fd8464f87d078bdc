/*
 * mehlerkit - exact verification and numerical evaluation of Mehler-type
 * Hermite generating-function identities.
 *
 * C interface of the shared library.  All work goes through a single entry
 * point that takes a JSON configuration and yields an opaque result handle;
 * reports are available as canonical JSON or plain text.
 *
 * Configuration object:
 *   {
 *     "command":   "verify" | "bench" | "bargmann-check",
 *     "family":    "mehler" | "carlitz-bilinear" | "carlitz-trilinear" |
 *                  "srivastava" | "gcmf" | "theorem" | "cayley" | "all",
 *     "shifts":    [r1, r2, ...]            (optional, family-dependent arity)
 *     "order":     N                         (optional truncation order)
 *     "variant":   "all" or a variant name   (optional)
 *     "seed":      integer                   (optional, default 1)
 *     "budget_terms":   integer              (optional)
 *     "budget_seconds": number               (optional, 0 = unlimited)
 *     "nodes":     quadrature nodes per axis (optional, >= 16)
 *     "tolerance": number                    (optional)
 *     "roundtrip_tolerance": number          (optional)
 *     "workers":   integer                   (optional, 0 = all cores)
 *   }
 *
 * Thread safety: mehlerkit_run may be called concurrently from different
 * threads; each returned handle must be freed exactly once with
 * mehlerkit_result_free.  mehlerkit_last_error is thread-local.
 */

#ifndef MEHLERKIT_H
#define MEHLERKIT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mehlerkit_status {
  MEHLERKIT_OK = 0,            /* run completed; inspect mehlerkit_result_passed */
  MEHLERKIT_ERR_CONFIG = 1,    /* configuration unusable, no result produced */
  MEHLERKIT_ERR_BUDGET = 2,    /* budget exhausted, partial result produced */
  MEHLERKIT_ERR_INTERNAL = 3   /* unexpected failure, no result produced */
} mehlerkit_status;

typedef struct mehlerkit_result mehlerkit_result;

const char* mehlerkit_version(void);
const char* mehlerkit_status_name(mehlerkit_status status);

/* Runs a command described by config_json.  On MEHLERKIT_OK and
 * MEHLERKIT_ERR_BUDGET, *out receives a result handle (caller frees).
 * On error statuses, mehlerkit_last_error() describes the problem. */
mehlerkit_status mehlerkit_run(const char* config_json, mehlerkit_result** out);

/* Canonical JSON report; the pointer stays valid until the handle is freed. */
const char* mehlerkit_result_json(const mehlerkit_result* result);

/* Human-readable report text. */
const char* mehlerkit_result_text(const mehlerkit_result* result);

/* 1 when every check in the run passed, 0 otherwise. */
int mehlerkit_result_passed(const mehlerkit_result* result);

void mehlerkit_result_free(mehlerkit_result* result);

/* Message for the most recent failure on this thread, "" if none. */
const char* mehlerkit_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* MEHLERKIT_H */
