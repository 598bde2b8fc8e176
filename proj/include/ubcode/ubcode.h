/* C interface to the ubcode library.
 *
 * Every function returns a ubc_status; on failure ubc_last_error() holds a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with ubc_string_free. Node arguments are
 * 1-based. Vectors of field elements are flat uint32_t arrays: data is the
 * node-major concatenation of x_1..x_n, a codeword the concatenation of the
 * columns [x_i ; p_i]. */
#ifndef UBCODE_H
#define UBCODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UBC_API __declspec(dllexport)
#else
#define UBC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ubc_status {
    UBC_OK = 0,
    UBC_NOT_PRIME_POWER,
    UBC_TOO_LARGE,
    UBC_DIVISION_BY_ZERO,
    UBC_SINGULAR,
    UBC_INCONSISTENT,
    UBC_UNDERDETERMINED,
    UBC_FIELD_TOO_SMALL,
    UBC_SHAPE_MISMATCH,
    UBC_INVALID_PARAMS,
    UBC_DIVISIBILITY_VIOLATION,
    UBC_TOO_MANY_ERASURES,
    UBC_INTERNAL_RANK_FAILURE,
    UBC_NODE_OUT_OF_RANGE,
    UBC_INVALID_PAIR,
    UBC_INVALID_SPEC,
    UBC_NOT_MDS,
    UBC_IO,
    UBC_NULL_ARGUMENT,
    UBC_INTERNAL
} ubc_status;

typedef struct ubc_code ubc_code;
typedef struct ubc_cluster ubc_cluster;

UBC_API const char* ubc_last_error(void);
UBC_API const char* ubc_status_name(int status);
UBC_API void ubc_string_free(char* s);
UBC_API uint64_t ubc_default_seed(void);

/* Closed forms. m has n entries; gamma is n*n row-major. ubc_bounds
 * reports the bounds and the MR-MUB admissibility verdict, as text or as
 * JSON when json != 0. */
UBC_API int ubc_bounds(size_t n, size_t k, const size_t* m, int json, char** out);
UBC_API int ubc_admissible_json(size_t n, size_t k, const size_t* m, char** out);
UBC_API int ubc_feasible_json(size_t n, size_t k, const size_t* m, const size_t* p, const size_t* gamma, char** out);

/* kind: "mrmub" (all m equal), "mub", "fig1b" or "fig3" (n, k, m ignored).
 * q = 0 picks the default field. */
UBC_API int ubc_code_build(const char* kind, size_t n, size_t k, const size_t* m, uint32_t q, ubc_code** out);
/* rounds of the pairing transformation with the default rotation; g = 0
 * picks the field's primitive element. */
UBC_API int ubc_code_transform(const ubc_code* base, size_t rounds, uint32_t g, ubc_code** out);
UBC_API int ubc_code_pair_transform(const ubc_code* base, size_t a, size_t b, uint32_t g, ubc_code** out);
UBC_API int ubc_code_from_json(const char* json, ubc_code** out);
UBC_API int ubc_code_to_json(const ubc_code* code, char** out);
UBC_API int ubc_code_info_json(const ubc_code* code, char** out);
UBC_API void ubc_code_free(ubc_code* code);

UBC_API size_t ubc_code_n(const ubc_code* code);
UBC_API size_t ubc_code_k(const ubc_code* code);
UBC_API uint32_t ubc_code_q(const ubc_code* code);
UBC_API size_t ubc_code_data_len(const ubc_code* code, size_t node);
UBC_API size_t ubc_code_column_len(const ubc_code* code, size_t node);
UBC_API size_t ubc_code_total_data(const ubc_code* code);
UBC_API size_t ubc_code_total_columns(const ubc_code* code);

UBC_API int ubc_encode(const ubc_code* code, const uint32_t* data, size_t data_len, uint32_t* columns,
                       size_t columns_len);
/* erased has n flags; erased columns' contents are ignored. */
UBC_API int ubc_decode(const ubc_code* code, const uint32_t* columns, size_t columns_len,
                       const unsigned char* erased, uint32_t* out, size_t out_len);
/* Runs the update protocol in place; *sent receives the symbols
 * transferred and *log (nullable) the op,from,to,count lines. */
UBC_API int ubc_update_columns(const ubc_code* code, uint32_t* columns, size_t columns_len, size_t node,
                               const uint32_t* new_data, size_t data_len, size_t* sent, char** log);
/* Drops column `node` and rebuilds it in place; *downloaded receives the
 * symbols fetched from helpers. */
UBC_API int ubc_repair_column(const ubc_code* code, uint32_t* columns, size_t columns_len, size_t node,
                              size_t* downloaded, char** log);
/* MDS check plus the invariant suites, as text or JSON; *passed is 1 when
 * every check holds. */
UBC_API int ubc_verify(const ubc_code* code, uint64_t seed, int json, char** out, int* passed);

/* Hex text form: one vector per line, fixed-width symbols. columns != 0
 * uses the column lengths, otherwise the data lengths. erased (n flags,
 * nullable) marks lines written as "x"; parsing zero-fills them. */
UBC_API int ubc_format_vectors(const ubc_code* code, int columns, const uint32_t* flat, size_t len,
                               const unsigned char* erased, char** out);
UBC_API int ubc_parse_vectors(const ubc_code* code, int columns, const char* text, uint32_t* flat, size_t len,
                              unsigned char* erased);

UBC_API int ubc_cluster_new(const ubc_code* code, uint64_t seed, ubc_cluster** out);
UBC_API int ubc_cluster_update(ubc_cluster* cl, size_t node, const uint32_t* new_data, size_t data_len,
                               size_t* sent, char** log);
UBC_API int ubc_cluster_repair(ubc_cluster* cl, size_t node, size_t* downloaded, char** log);
/* *ok is 1 when stored columns match a fresh encoding; otherwise node and
 * row (1-based) locate the first difference. */
UBC_API int ubc_cluster_audit(const ubc_cluster* cl, int* ok, size_t* node, size_t* row);
UBC_API int ubc_cluster_corrupt(ubc_cluster* cl, size_t node, size_t row);
UBC_API int ubc_cluster_columns(const ubc_cluster* cl, uint32_t* out, size_t len);
UBC_API void ubc_cluster_free(ubc_cluster* cl);

/* Seeded round-robin workload. summary is text, or JSON when json != 0;
 * log (nullable) receives the op,from,to,count lines; *passed is 1 when
 * every repair restored its column and the final audit holds. */
UBC_API int ubc_simulate(const ubc_code* code, size_t updates, size_t repairs, uint64_t seed, int json,
                         char** summary, char** log, int* passed);
/* name: "fig1b" or "fig3". */
UBC_API int ubc_demo(const char* name, char** text, int* passed);

#ifdef __cplusplus
}
#endif

#endif
