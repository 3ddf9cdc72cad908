/* tsq.h - C interface to the three-squares toolkit.
 *
 * All numeric arguments are decimal strings (arbitrary precision). Results
 * arrive as JSON documents in freshly allocated buffers; release them with
 * tsq_string_free(). Every entry point returns a tsq_status; on anything but
 * TSQ_OK the output pointer is untouched and tsq_last_error(ctx) holds a
 * message until the next call on the same context.
 *
 * Contexts are opaque and not thread-safe; use one per thread.
 */
#ifndef TSQ_H
#define TSQ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tsq_ctx tsq_ctx;

typedef enum tsq_status {
    TSQ_OK = 0,
    TSQ_EINVAL = 1,       /* malformed arguments */
    TSQ_EPRECOND = 2,     /* a named precondition was violated */
    TSQ_ETOOLARGE = 3,    /* a configured cap was exceeded */
    TSQ_EINTERNAL = 4     /* a state the library proves impossible */
} tsq_status;

tsq_ctx* tsq_ctx_new(void);
void tsq_ctx_free(tsq_ctx* ctx);

const char* tsq_version(void);

/* Message for the most recent failure on this context; empty on success. */
const char* tsq_last_error(const tsq_ctx* ctx);
/* Condition name (e.g. "NotCoprime") for TSQ_EPRECOND failures. */
const char* tsq_last_error_condition(const tsq_ctx* ctx);

/* 0 = use all available cores. */
tsq_status tsq_ctx_set_threads(tsq_ctx* ctx, unsigned threads);

/* Caps, by name: "factor", "sieve", "r3", "r4", "bucket", "bucket-mod",
 * "modulus", "cam", "sum", "scan", "forms", "prime-power". Value is a
 * decimal string. */
tsq_status tsq_ctx_set_cap(tsq_ctx* ctx, const char* name, const char* value);

void tsq_string_free(char* s);

/* ---- operations (JSON results) ---- */

tsq_status tsq_r3(tsq_ctx* ctx, const char* n, char** out_json);
/* method: "jacobi" or "brute" */
tsq_status tsq_r4(tsq_ctx* ctx, const char* n, const char* method, char** out_json);
tsq_status tsq_sigma_star(tsq_ctx* ctx, const char* n, char** out_json);
tsq_status tsq_legendre(tsq_ctx* ctx, const char* n, char** out_json);
tsq_status tsq_cam(tsq_ctx* ctx, const char* a, const char* m, char** out_json);
tsq_status tsq_hurwitz(tsq_ctx* ctx, const char* n, char** out_json);
tsq_status tsq_forms(tsq_ctx* ctx, const char* n, char** out_json);
tsq_status tsq_gauss_check(tsq_ctx* ctx, const char* n, char** out_json);
tsq_status tsq_reduce(tsq_ctx* ctx, const char* a, const char* m, char** out_json);
tsq_status tsq_solve_y(tsq_ctx* ctx, const char* x1, const char* x2,
                       const char* x3, const char* x4, const char* a,
                       const char* m, char** out_json);
tsq_status tsq_binary_form(tsq_ctx* ctx, const char* a1, const char* b1,
                           const char* d, const char* p, const char* e,
                           char** out_json);
tsq_status tsq_build_n(tsq_ctx* ctx, const char* a_prime, const char* modulus,
                       const char* z, char** out_json);
tsq_status tsq_buckets(tsq_ctx* ctx, const char* n, const char* m, char** out_json);
tsq_status tsq_chowla(tsq_ctx* ctx, const char* a, const char* m, const char* z,
                      int skip_reduction, int verify_exact, int with_report,
                      char** out_json);
tsq_status tsq_hurwitz_witness(tsq_ctx* ctx, const char* a, const char* m,
                               const char* z, char** out_json);
/* pairs: "r1:m1,r2:m2,..." */
tsq_status tsq_crt(tsq_ctx* ctx, const char* pairs, char** out_json);
tsq_status tsq_sum_check(tsq_ctx* ctx, const char* x, const char* a,
                         const char* m, char** out_json);

/* Streams one TSV row "n\tr3\tratio\trecord" per class member; returns the
 * record table as JSON. A NULL callback skips the streaming. Returning
 * nonzero from the callback aborts the scan. */
typedef int (*tsq_row_cb)(const char* row, void* user);
tsq_status tsq_scan(tsq_ctx* ctx, const char* a, const char* m,
                    const char* max_n, tsq_row_cb cb, void* user,
                    char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TSQ_H */
