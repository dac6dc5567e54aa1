#ifndef DML_H
#define DML_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Error codes returned by every fallible function.
 */
#define DML_OK 0

#define DML_ERR_NULL_ARGUMENT 1

#define DML_ERR_INVALID_UTF8 2

#define DML_ERR_INVALID_EXPONENT 3

#define DML_ERR_INVALID_ARGUMENT 4

#define DML_ERR_DIMENSION_MISMATCH 5

#define DML_ERR_TOO_LARGE 6

/**
 * Opaque handle to a diagonal multilinear operator.
 */
typedef struct DmlOperator DmlOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dml_version(void);

/**
 * Frees a string returned by any `*_json` function.
 */
void dml_string_free(char *s);

/**
 * Creates a diagonal operator with real diagonal `alpha[0..len]` from
 * `lp^len` to `lq^len`; exponents use the text grammar ("2", "3/2", "inf").
 */
int dml_operator_new(uintptr_t arity,
                     const double *alpha,
                     uintptr_t len,
                     const char *p,
                     const char *q,
                     struct DmlOperator **out);

void dml_operator_free(struct DmlOperator *op);

/**
 * Exact continuous norm of the operator.
 */
int dml_operator_norm(const struct DmlOperator *op, double *out);

/**
 * Full norm certificate for one ideal ('L', 'N', or 'I') as a JSON string.
 */
int dml_operator_norm_json(const struct DmlOperator *op, char ideal, char **out);

/**
 * Classification of (p, q, n) as a JSON string (spaces, strictness, chain).
 */
int dml_classify_json(const char *p, const char *q, uintptr_t n, char **out);

/**
 * Coincidence-table rows for (p, q) as a JSON string.
 */
int dml_table_json(const char *p, const char *q, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DML_H */
