#ifndef PIRCON_H
#define PIRCON_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PirconComparison {
  PIRCON_COMPARISON_EQUAL = 0,
  /**
   * `x < y` without being a cover.
   */
  PIRCON_COMPARISON_LESS = 1,
  PIRCON_COMPARISON_GREATER = 2,
  PIRCON_COMPARISON_INCOMPARABLE = 3,
  /**
   * `x` is covered by `y`.
   */
  PIRCON_COMPARISON_COVERED_BY = 4,
  /**
   * `x` covers `y`.
   */
  PIRCON_COMPARISON_COVERS = 5,
} PirconComparison;

typedef enum PirconFamily {
  PIRCON_FAMILY_SYMMETRIC_INVOLUTIONS = 0,
  PIRCON_FAMILY_FPF_INVOLUTIONS = 1,
  PIRCON_FAMILY_SIGNED_INVOLUTIONS = 2,
  PIRCON_FAMILY_FPF_SIGNED_INVOLUTIONS = 3,
} PirconFamily;

typedef enum PirconStatus {
  PIRCON_STATUS_OK = 0,
  PIRCON_STATUS_NULL_POINTER = 1,
  PIRCON_STATUS_INVALID_UTF8 = 2,
  PIRCON_STATUS_INVALID_JSON = 3,
  PIRCON_STATUS_INVALID_POSET = 4,
  PIRCON_STATUS_INDEX_OUT_OF_RANGE = 5,
  PIRCON_STATUS_SIZE_MISMATCH = 6,
  PIRCON_STATUS_MISSING_TOP = 7,
  PIRCON_STATUS_MISSING_BOUND = 8,
  PIRCON_STATUS_BUFFER_TOO_SMALL = 9,
  PIRCON_STATUS_CAP_EXCEEDED = 10,
  PIRCON_STATUS_INVALID_ARGUMENT = 11,
  PIRCON_STATUS_PANIC = 99,
} PirconStatus;

/**
 * Opaque poset handle.
 */
typedef struct PirconPoset PirconPoset;

typedef struct PirconClassification {
  bool pircon;
  /**
   * 1 or 0, or -1 when the special matching search was skipped.
   */
  int32_t zircon;
  size_t ideals_checked;
} PirconClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *pircon_last_error(void);

/**
 * Library version as a static string.
 */
const char *pircon_version(void);

/**
 * Parses a poset from `{"name": ..., "elements": [...], "covers": [[lo, hi], ...]}`.
 */
enum PirconStatus pircon_poset_from_json(const char *json, struct PirconPoset **out);

/**
 * Bruhat order (or its dual) on an involution family.
 */
enum PirconStatus pircon_family_poset(enum PirconFamily family,
                                      size_t n,
                                      bool dual,
                                      struct PirconPoset **out);

/**
 * Fixed-point-free signed involutions of rank `n`.
 */
enum PirconStatus pircon_fpf_signed_poset(size_t n, bool dual, struct PirconPoset **out);

/**
 * Releases a handle. Null is ignored.
 */
void pircon_poset_free(struct PirconPoset *poset);

enum PirconStatus pircon_poset_len(const struct PirconPoset *poset, size_t *out_len);

/**
 * Writes the poset JSON (without a trailing nul) into `buf`.
 */
enum PirconStatus pircon_poset_to_json(const struct PirconPoset *poset,
                                       uint8_t *buf,
                                       size_t cap,
                                       size_t *out_len);

/**
 * Name of element `x` (without a trailing nul) into `buf`.
 */
enum PirconStatus pircon_poset_element_name(const struct PirconPoset *poset,
                                            size_t x,
                                            uint8_t *buf,
                                            size_t cap,
                                            size_t *out_len);

enum PirconStatus pircon_poset_compare(const struct PirconPoset *poset,
                                       size_t x,
                                       size_t y,
                                       enum PirconComparison *out);

/**
 * Searches for an SPM. On success `*out_found` says whether one exists and,
 * if so, `matching[x]` receives `M(x)` for every element.
 */
enum PirconStatus pircon_search_spm(const struct PirconPoset *poset,
                                    bool *out_found,
                                    size_t *matching,
                                    size_t cap,
                                    size_t *out_len);

/**
 * Checks `matching[0..len]` as an SPM (or, with `special`, as a special
 * matching).
 */
enum PirconStatus pircon_check_spm(const struct PirconPoset *poset,
                                   const size_t *matching,
                                   size_t len,
                                   bool special,
                                   bool *out_valid);

enum PirconStatus pircon_classify(const struct PirconPoset *poset,
                                  bool with_zircon,
                                  struct PirconClassification *out);

/**
 * Reduced Z/2 Betti numbers of the order complex, `betti[k]` in degree
 * `k - 1`. With `proper`, the top and bottom are removed first.
 */
enum PirconStatus pircon_order_complex_betti(const struct PirconPoset *poset,
                                             bool proper,
                                             size_t *betti,
                                             size_t cap,
                                             size_t *out_len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PIRCON_H */
