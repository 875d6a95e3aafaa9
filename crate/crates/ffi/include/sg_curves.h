#ifndef SG_CURVES_H
#define SG_CURVES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Values 1 to 5 match the command-line exit codes.
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  // No ordinary curve was found, or a certificate failed verification.
  SG_STATUS_NOT_FOUND = 1,
  // The input violates a precondition, e.g. it lies on a curve of the
  // requested degree.
  SG_STATUS_PRECONDITION = 2,
  // Malformed text input.
  SG_STATUS_FORMAT = 3,
  SG_STATUS_BUDGET_EXCEEDED = 4,
  // A search that cannot fail did; please report the input.
  SG_STATUS_ANOMALY = 5,
  // A null pointer or otherwise unusable argument.
  SG_STATUS_INVALID_ARGUMENT = 6,
  // The library panicked.
  SG_STATUS_PANIC = 7,
} SgStatus;

// Opaque certificate.
typedef struct SgCertificate SgCertificate;

// Opaque point set.
typedef struct SgPointSet SgPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *sg_last_error_message(void);

// Parses a point file (see the command-line documentation for the format).
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SgStatus sg_point_set_parse(const char *text, struct SgPointSet **out);

// Generates a point set of the named kind with default kind-specific
// counts.
//
// # Safety
// `kind` must be a nul-terminated string and `out` a valid pointer.
enum SgStatus sg_point_set_generate(const char *kind,
                                    size_t n,
                                    uint64_t seed,
                                    int64_t bound,
                                    struct SgPointSet **out);

// Number of points; 0 for a null handle.
//
// # Safety
// `set` must be null or a handle from this library.
size_t sg_point_set_len(const struct SgPointSet *set);

// # Safety
// `set` must be null or a handle from this library, not yet freed.
void sg_point_set_free(struct SgPointSet *set);

// Finds an ordinary curve of degree 1, 2 or 3.
//
// # Safety
// `set` must be a live handle and `out` a valid pointer.
enum SgStatus sg_find(const struct SgPointSet *set,
                      uint32_t degree,
                      bool allow_fallback,
                      struct SgCertificate **out);

// Serializes a certificate. Release the string with [`sg_string_free`].
//
// # Safety
// `cert` must be a live handle and `out` a valid pointer.
enum SgStatus sg_certificate_to_string(const struct SgCertificate *cert, char **out);

// Parses a certificate.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SgStatus sg_certificate_from_string(const char *text, struct SgCertificate **out);

// Checks a certificate against a point set. Returns [`SgStatus::Ok`] when
// it is valid and [`SgStatus::NotFound`] with a reason otherwise.
//
// # Safety
// Both handles must be live.
enum SgStatus sg_verify(const struct SgPointSet *set, const struct SgCertificate *cert);

// Degree of the certificate's curve; 0 for a null handle.
//
// # Safety
// `cert` must be null or a live handle.
uint32_t sg_certificate_degree(const struct SgCertificate *cert);

// Copies up to `cap` incident point indices into `buf` and returns how
// many there are in total.
//
// # Safety
// `cert` must be null or a live handle; `buf` must hold `cap` entries
// (it may be null when `cap` is 0).
size_t sg_certificate_incident(const struct SgCertificate *cert, size_t *buf, size_t cap);

// # Safety
// `cert` must be null or a handle from this library, not yet freed.
void sg_certificate_free(struct SgCertificate *cert);

// Projective dimension of the degree-`degree` curves through the set
// (-1 when there are none).
//
// # Safety
// `set` must be a live handle and `out` a valid pointer.
enum SgStatus sg_param_dim(const struct SgPointSet *set, uint32_t degree, int64_t *out);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from this library, not yet freed.
void sg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SG_CURVES_H */
