#ifndef SHANNON_LATTICE_H
#define SHANNON_LATTICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_ARGUMENT = 2,
  SL_STATUS_PARSE_ERROR = 3,
  SL_STATUS_CAP_EXCEEDED = 4,
  SL_STATUS_CHECK_FAILED = 5,
  SL_STATUS_INTERNAL = 6,
} SlStatus;

// A lattice bound certificate.
typedef struct SlCertificate SlCertificate;

// A family member `(n, k, b, r, s)` with its matrices.
typedef struct SlFamily SlFamily;

// An exact rational square matrix.
typedef struct SlMatrix SlMatrix;

// Outcome of a quotient computation.
typedef struct SlQuotientBound {
  uint64_t subgroup_order;
  uint64_t cosets;
  uint64_t quotient_alpha;
  uint64_t bound;
  bool optimal;
  bool verified;
} SlQuotientBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into the library on the same thread.
const char *sl_last_error(void);

// Library version as a static string.
const char *sl_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and must not be used afterwards.
void sl_string_free(char *s);

// Builds an `order × order` integer matrix from row-major entries.
//
// # Safety
// `entries` must point to `order * order` readable values and `out` must
// be writable.
enum SlStatus sl_matrix_from_i64(size_t order, const int64_t *entries, struct SlMatrix **out);

// Parses the plain-text matrix format (order line, then rows).
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum SlStatus sl_matrix_parse(const char *text, struct SlMatrix **out);

// Order of the matrix, or 0 for NULL.
//
// # Safety
// `m` must be NULL or a live handle.
size_t sl_matrix_order(const struct SlMatrix *m);

// Exact determinant rendered as `"n"` or `"n/d"`.
//
// # Safety
// `m` must be a live handle and `out` writable.
enum SlStatus sl_matrix_det(const struct SlMatrix *m, char **out);

// Whether every principal minor is nonnegative. Orders above `cap` fail
// with `CapExceeded`.
//
// # Safety
// `m` must be a live handle and `out` writable.
enum SlStatus sl_matrix_is_p0(const struct SlMatrix *m, size_t cap, bool *out);

// # Safety
// `m` must be NULL or a live handle, not used afterwards.
void sl_matrix_free(struct SlMatrix *m);

// Derives `(a, p, q)` and builds `A`, `B` for `(n, k, b, r, s)`.
//
// # Safety
// `out` must be writable.
enum SlStatus sl_family_build(uint32_t n,
                              uint64_t k,
                              uint64_t b,
                              uint64_t r,
                              uint64_t s,
                              struct SlFamily **out);

// Decimal strings for `p` and `q`.
//
// # Safety
// `fam` must be a live handle; `p_out` and `q_out` writable.
enum SlStatus sl_family_pq(const struct SlFamily *fam, char **p_out, char **q_out);

// New matrix handle holding `A` (`which = 0`) or `B` (`which = 1`).
//
// # Safety
// `fam` must be a live handle and `out` writable.
enum SlStatus sl_family_matrix(const struct SlFamily *fam, uint32_t which, struct SlMatrix **out);

// Runs the full family verification with default caps and writes the
// JSON report. Returns `CheckFailed` (with the report still written) when
// the verdict is INVALID.
//
// # Safety
// `fam` must be a live handle and `out_json` writable.
enum SlStatus sl_family_verify_json(const struct SlFamily *fam, char **out_json);

// # Safety
// `fam` must be NULL or a live handle, not used afterwards.
void sl_family_free(struct SlFamily *fam);

// Certifies `A`, `B` against decimal `p` and `q`. A certificate is
// produced even when it is invalid; inspect it with
// [`sl_certificate_is_valid`].
//
// # Safety
// `a`, `b` must be live handles, `p`, `q` NUL-terminated, `out` writable.
enum SlStatus sl_certify(const struct SlMatrix *a,
                         const struct SlMatrix *b,
                         const char *p,
                         const char *q,
                         struct SlCertificate **out);

// # Safety
// `cert` must be a live handle and `out_json` writable.
enum SlStatus sl_certificate_json(const struct SlCertificate *cert, char **out_json);

// False for NULL.
//
// # Safety
// `cert` must be NULL or a live handle.
bool sl_certificate_is_valid(const struct SlCertificate *cert);

// # Safety
// `cert` must be NULL or a live handle, not used afterwards.
void sl_certificate_free(struct SlCertificate *cert);

// Lower bound on `α(E_{p/q}^⊠n)` from the quotient by the subgroup
// generated by `generator_count` vectors stored row-major in `generators`.
// `max_nodes = 0` means the default node budget.
//
// # Safety
// `generators` must point to `generator_count * n` values and `out` must
// be writable.
enum SlStatus sl_quotient_bound(uint64_t p,
                                uint64_t q,
                                size_t n,
                                const uint64_t *generators,
                                size_t generator_count,
                                uint64_t max_nodes,
                                struct SlQuotientBound *out);

// Largest independent subgroup of `E_{p/q}^⊠n` generated by at most two
// elements.
//
// # Safety
// `out` must be writable.
enum SlStatus sl_alpha_grp(uint64_t p, uint64_t q, size_t n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHANNON_LATTICE_H */
