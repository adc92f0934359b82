/* C interface to the list-recovery library. All entry points return a
 * lr_status; results come back through out-parameters and opaque handles.
 * Handles must be released with the matching lr_*_free call. The last error
 * message for the calling thread is available via lr_last_error(). */

#ifndef LISTREC_LISTREC_H
#define LISTREC_LISTREC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lr_status {
    LR_OK = 0,
    LR_ERR_INVALID_ARGUMENT,
    LR_ERR_DIVISION_BY_ZERO,
    LR_ERR_INVALID_MODULUS,
    LR_ERR_IRREDUCIBLE_SEARCH_FAILED,
    LR_ERR_DIMENSION_MISMATCH,
    LR_ERR_DEGREE_TOO_HIGH,
    LR_ERR_UNDER_DETERMINED,
    LR_ERR_NOT_CLOSED,
    LR_ERR_CLOSURE_VIOLATION,
    LR_ERR_REGIME_VIOLATION,
    LR_ERR_AGREEMENT_TOO_LOW,
    LR_ERR_TABLE_TOO_LARGE,
    LR_ERR_CONFIG_INVALID,
    LR_ERR_IO,
    LR_ERR_UNKNOWN
} lr_status;

typedef struct lr_code lr_code;         /* code parameters */
typedef struct lr_codeword lr_codeword; /* encoded word */
typedef struct lr_listword lr_listword; /* per-position candidate lists */
typedef struct lr_polylist lr_polylist; /* recovered polynomial list */
typedef struct lr_graph lr_graph;       /* bipartite expander */
typedef struct lr_buffer lr_buffer;     /* owned text buffer */

/* family: 0 = folded Reed-Solomon, 1 = multiplicity */
#define LR_FAMILY_FRS 0
#define LR_FAMILY_MULT 1

const char* lr_last_error(void);
const char* lr_version(void);

/* ---- code parameters ---- */
lr_status lr_code_create(int family, uint32_t q, uint32_t s, uint32_t m, uint32_t n,
                         uint32_t d, lr_code** out);
void lr_code_free(lr_code* code);
lr_status lr_code_stats(const lr_code* code, int64_t* rate_num, int64_t* rate_den,
                        int64_t* dist_num, int64_t* dist_den, int* rate_is_bound);
lr_status lr_find_primitive(uint32_t q, uint32_t* out);

/* ---- encode / channel ---- */
/* coeffs[k] = coefficient of X^k; univariate message polynomial */
lr_status lr_encode(const lr_code* code, const uint32_t* coeffs, size_t coeff_count,
                    lr_codeword** out);
lr_status lr_random_message(const lr_code* code, uint64_t seed, lr_buffer** coeffs_csv);
void lr_codeword_free(lr_codeword* cw);
lr_status lr_corrupt(const lr_code* code, const lr_codeword* cw, int64_t alpha_num,
                     int64_t alpha_den, uint32_t ell, int adversarial, uint64_t seed,
                     lr_listword** out);
void lr_listword_free(lr_listword* lw);

/* ---- list recovery ---- */
typedef struct lr_recover_options {
    int strict;          /* enforce the parameter regime */
    int mode;            /* 0 = frs, 1 = mult small-d, 2 = mult whole-field */
    int64_t eps_num, eps_den; /* capacity gap eps (frs, small-d) or delta */
    uint32_t ell;
    uint32_t r;          /* 0 = default */
    uint32_t tau;        /* 0 = default */
    uint32_t repetitions;/* 0 = default */
    int64_t alpha_num, alpha_den; /* decode radius; den 0 = default */
    uint64_t seed;
} lr_recover_options;

lr_status lr_list_recover(const lr_code* code, const lr_listword* lists,
                          const lr_recover_options* opts, lr_polylist** out);
size_t lr_polylist_count(const lr_polylist* pl);
/* degree+1 coefficients; returns actual count written, 0 on bad index */
size_t lr_polylist_coeffs(const lr_polylist* pl, size_t index, uint32_t* buf, size_t buf_len);
void lr_polylist_free(lr_polylist* pl);

/* ---- serialization ---- */
lr_status lr_codeword_serialize(const lr_code* code, const lr_codeword* cw, lr_buffer** out);
lr_status lr_listword_serialize(const lr_code* code, const lr_listword* lw, lr_buffer** out);
lr_status lr_codeword_parse(int family, const char* text, lr_code** code, lr_codeword** cw);
lr_status lr_listword_parse(int family, const char* text, lr_code** code, lr_listword** lw);
const char* lr_buffer_data(const lr_buffer* buf);
size_t lr_buffer_size(const lr_buffer* buf);
void lr_buffer_free(lr_buffer* buf);

/* ---- expander graphs ---- */
lr_status lr_graph_sample(uint32_t N, uint32_t D, uint64_t seed, lr_graph** out);
lr_status lr_graph_check(const lr_graph* g, int64_t R_num, int64_t R_den, int64_t eps_num,
                         int64_t eps_den, int64_t xi_num, int64_t xi_den, uint32_t trials,
                         uint64_t seed, int* pass, int64_t* max_bad_num, int64_t* max_bad_den);
lr_status lr_graph_serialize(const lr_graph* g, lr_buffer** out);
lr_status lr_graph_parse(const char* text, lr_graph** out);
void lr_graph_free(lr_graph* g);

/* ---- experiments, acceptance, bench ---- */
/* config: flat key=value text with [code] [channel] [decoder] [local] [run]
 * sections; the report is deterministic for a fixed config and seed */
lr_status lr_run_experiment(const char* config_text, lr_buffer** report);
/* ids: optional array of criterion numbers to run (NULL/0 = all).
 * pass_count/total receive the tallies; report holds one line per criterion */
lr_status lr_verify(const int* ids, size_t id_count, lr_buffer** report, int* pass_count,
                    int* total);
lr_status lr_bench(lr_buffer** report);

/* AEL end-to-end demo at the acceptance fixture size; returns a small
 * deterministic report (seeded) */
lr_status lr_ael_demo(uint32_t N, uint32_t D, uint64_t seed, lr_buffer** report);

#ifdef __cplusplus
}
#endif

#endif /* LISTREC_LISTREC_H */
