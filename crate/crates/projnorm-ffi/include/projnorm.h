#ifndef PROJNORM_H
#define PROJNORM_H

/* Generated by cbindgen from projnorm-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PnStatus {
  PN_STATUS_OK = 0,
  PN_STATUS_NULL_POINTER = 1,
  PN_STATUS_INVALID_UTF8 = 2,
  PN_STATUS_INVALID_PARAMS = 3,
  PN_STATUS_OUT_OF_DOMAIN = 4,
  PN_STATUS_SINGULAR = 5,
  PN_STATUS_UNKNOWN_NAME = 6,
  PN_STATUS_NUMERICAL = 7,
  PN_STATUS_INDEX_OUT_OF_RANGE = 8,
  PN_STATUS_PANIC = 99,
} PnStatus;

/**
 * A catalog family member.
 */
typedef struct PnEntry PnEntry;

/**
 * A sorted collection of verification reports.
 */
typedef struct PnReport PnReport;

/**
 * Sampling settings; mirrors the command-line flags.
 */
typedef struct PnConfig {
  uint64_t seed;
  size_t points;
  double tol;
  size_t order;
} PnConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the toolkit; static, never freed.
 */
const char *pn_version(void);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *pn_last_error(void);

/**
 * Default sampling settings.
 */
struct PnConfig pn_config_default(void);

/**
 * Builds a family member. `params` may be null for the family's reference parameters.
 *
 * # Safety
 * `family` and non-null `params` must be NUL-terminated strings; `out_entry` must be writable.
 */
enum PnStatus pn_entry_new(const char *family, const char *params, struct PnEntry **out_entry);

/**
 * Releases an entry; null is ignored.
 *
 * # Safety
 * `entry` must come from `pn_entry_new` and not be used afterwards.
 */
void pn_entry_free(struct PnEntry *entry);

/**
 * 1 if `(x, y)` lies in the domain of the entry's metric, 0 otherwise (or on null).
 *
 * # Safety
 * `entry` must be a live handle or null.
 */
int32_t pn_entry_in_domain(const struct PnEntry *entry, double x, double y);

/**
 * Writes `(g11, g12, g22)` of the entry's metric at `(x, y)` into `out_g`.
 *
 * # Safety
 * `entry` must be a live handle; `out_g` must point to three writable doubles.
 */
enum PnStatus pn_entry_metric(const struct PnEntry *entry, double x, double y, double *out_g);

/**
 * Canonical parameter string of the entry; free with `pn_string_free`.
 *
 * # Safety
 * `entry` must be a live handle or null.
 */
char *pn_entry_params(const struct PnEntry *entry);

/**
 * Runs every per-family check on the entry.
 *
 * # Safety
 * `entry` must be a live handle; `out_report` must be writable.
 */
enum PnStatus pn_verify(const struct PnEntry *entry,
                        struct PnConfig config,
                        struct PnReport **out_report);

/**
 * Checks one named isometry lemma.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_report` must be writable.
 */
enum PnStatus pn_lemma(const char *name, struct PnConfig config, struct PnReport **out_report);

/**
 * Runs the full verification suite.
 *
 * # Safety
 * `out_report` must be writable.
 */
enum PnStatus pn_suite(struct PnConfig config, struct PnReport **out_report);

/**
 * 1 if every check in the report passed, 0 otherwise (or on null).
 *
 * # Safety
 * `report` must be a live handle or null.
 */
int32_t pn_report_pass(const struct PnReport *report);

/**
 * Number of individual checks in the report (0 on null).
 *
 * # Safety
 * `report` must be a live handle or null.
 */
size_t pn_report_len(const struct PnReport *report);

/**
 * Outcome and largest residual of check `index`.
 *
 * # Safety
 * `report` must be a live handle; `out_pass` and `out_residual` must be writable.
 */
enum PnStatus pn_report_item(const struct PnReport *report,
                             size_t index,
                             int32_t *out_pass,
                             double *out_residual);

/**
 * The report as JSON, byte-identical to the command-line output; free with `pn_string_free`.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
char *pn_report_json(const struct PnReport *report);

/**
 * Releases a report; null is ignored.
 *
 * # Safety
 * `report` must come from this library and not be used afterwards.
 */
void pn_report_free(struct PnReport *report);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void pn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROJNORM_H */
