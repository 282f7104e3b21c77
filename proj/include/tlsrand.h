/* C interface to the TLS solver library: opaque handles, status codes, and
 * thread-local error messages. The CLI is built entirely on this surface. */

#ifndef TLSRAND_H
#define TLSRAND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tlsrand_status {
    TLSRAND_OK = 0,
    TLSRAND_INVALID_ARGUMENT,
    TLSRAND_CONVERGENCE_FAILURE,
    TLSRAND_NOT_POSITIVE_DEFINITE,
    TLSRAND_NON_GENERIC,
    TLSRAND_DEGENERATE_V22,
    TLSRAND_NON_GENERIC_TRUNCATION,
    TLSRAND_RANK_COLLAPSE,
    TLSRAND_BASIS_EXHAUSTED,
    TLSRAND_SIZE_OVERFLOW,
    TLSRAND_ZERO_SOLUTION,
    TLSRAND_ZERO_RESIDUAL,
    TLSRAND_FORMULA_MISMATCH,
    TLSRAND_HYPOTHESIS_VIOLATED,
    TLSRAND_UNKNOWN_PROBLEM,
    TLSRAND_BAD_SIZE,
    TLSRAND_PARSE_ERROR,
    TLSRAND_IO_ERROR,
    TLSRAND_INTERNAL_ERROR
} tlsrand_status;

typedef struct tlsrand_mat tlsrand_mat;
typedef struct tlsrand_problem tlsrand_problem;
typedef struct tlsrand_solution tlsrand_solution;
typedef struct tlsrand_table tlsrand_table;

const char* tlsrand_status_name(tlsrand_status status);
/* Message of the most recent failure on this thread; empty string if none. */
const char* tlsrand_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

tlsrand_status tlsrand_mat_create(size_t rows, size_t cols, const double* row_major,
                                  tlsrand_mat** out);
/* CSV or MatrixMarket array files, detected from the content. */
tlsrand_status tlsrand_mat_load(const char* path, tlsrand_mat** out);
/* format: "csv" or "mm". */
tlsrand_status tlsrand_mat_save(const tlsrand_mat* m, const char* path, const char* format);
size_t tlsrand_mat_rows(const tlsrand_mat* m);
size_t tlsrand_mat_cols(const tlsrand_mat* m);
const double* tlsrand_mat_data(const tlsrand_mat* m);
void tlsrand_mat_free(tlsrand_mat* m);

/* ---- problems ---------------------------------------------------------- */

/* b must be a column (m x 1). */
tlsrand_status tlsrand_problem_from_mats(const tlsrand_mat* a, const tlsrand_mat* b,
                                         tlsrand_problem** out);
/* name: example1 | example2 | prony | shaw | baart | deriv2 | foxgood |
 * gravity | heat | phillips. n, eps_p and sample_period are used where the
 * generator needs them (pass 0 for defaults). */
tlsrand_status tlsrand_problem_generate(const char* name, size_t m, size_t n, double eps_p,
                                        double sample_period, uint64_t seed,
                                        tlsrand_problem** out);
tlsrand_status tlsrand_problem_add_noise(const tlsrand_problem* p, double level, uint64_t seed,
                                         tlsrand_problem** out);
/* which: "A", "b", or "x_true" (fails with TLSRAND_INVALID_ARGUMENT when no
 * true solution is attached). */
tlsrand_status tlsrand_problem_matrix(const tlsrand_problem* p, const char* which,
                                      tlsrand_mat** out);
int tlsrand_problem_has_true_solution(const tlsrand_problem* p);
void tlsrand_problem_free(tlsrand_problem* p);

/* ---- solvers ----------------------------------------------------------- */

typedef struct tlsrand_solve_options {
    size_t trunc_k;       /* 0 keeps the method default */
    size_t samples_l;     /* sketch width, default 10 */
    size_t probes_r;      /* adaptive probe count, default 7 */
    double tolerance_eps; /* adaptive tolerance, default 0.5 */
    uint64_t seed;
} tlsrand_solve_options;

void tlsrand_solve_options_init(tlsrand_solve_options* opts);

/* method: tls | tls_closed | ttls | rtls | rttls | arttls */
tlsrand_status tlsrand_solve(const tlsrand_problem* p, const char* method,
                             const tlsrand_solve_options* opts, tlsrand_solution** out);
size_t tlsrand_solution_size(const tlsrand_solution* s);
const double* tlsrand_solution_x(const tlsrand_solution* s);
const double* tlsrand_solution_residual(const tlsrand_solution* s);
double tlsrand_solution_sigma(const tlsrand_solution* s);
double tlsrand_solution_seconds(const tlsrand_solution* s);
const char* tlsrand_solution_method(const tlsrand_solution* s);
void tlsrand_solution_free(tlsrand_solution* s);

/* ---- experiments -------------------------------------------------------- */

/* config_text is the flat key = value format accepted by the bench command. */
tlsrand_status tlsrand_experiment_run(const char* config_text, tlsrand_table** out);
size_t tlsrand_table_rows(const tlsrand_table* t);
size_t tlsrand_table_cols(const tlsrand_table* t);
const char* tlsrand_table_header(const tlsrand_table* t, size_t col);
/* Returns 1 and fills *out for numeric cells, 0 for empty/text cells. */
int tlsrand_table_cell_number(const tlsrand_table* t, size_t row, size_t col, double* out);
/* Returns the text of a cell ("" for empty; numbers formatted to 17
 * significant digits). The pointer stays valid until the table is freed. */
const char* tlsrand_table_cell_text(const tlsrand_table* t, size_t row, size_t col);
/* format: "csv" or "json". */
tlsrand_status tlsrand_table_write(const tlsrand_table* t, const char* path, const char* format);
void tlsrand_table_free(tlsrand_table* t);

#ifdef __cplusplus
}
#endif

#endif /* TLSRAND_H */
