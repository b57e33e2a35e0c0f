#ifndef PAMLAB_H
#define PAMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(PAMLAB_BUILDING)
#define PAMLAB_API __attribute__((visibility("default")))
#else
#define PAMLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pamlab_status {
    PAMLAB_OK = 0,
    PAMLAB_ERR_CONFIG = 1,   /* invalid parameters or input */
    PAMLAB_ERR_GUARD = 2,    /* request exceeds a size guard */
    PAMLAB_ERR_NULL = 3,     /* null handle or output pointer */
    PAMLAB_ERR_INTERNAL = 4
} pamlab_status;

/* Message of the last failed call on this thread; empty after success. */
PAMLAB_API const char* pamlab_last_error(void);
PAMLAB_API const char* pamlab_version(void);

/* ---- model ---------------------------------------------------------- */

typedef struct pamlab_model pamlab_model;

/* delta is an exact rational string such as "-1", "1/2" or "0.25".
   variant is "sequential_urn", "sequential_direct" or "instantaneous". */
PAMLAB_API pamlab_status pamlab_model_create(int m, const char* delta, const char* variant, pamlab_model** out);
/* delta_1 = 0, delta_k = max(2mc (log k)^-alpha, floor) for k >= 2. */
PAMLAB_API pamlab_status pamlab_model_create_log_decay(int m, double c, double alpha, double floor, const char* variant,
                                                       pamlab_model** out);
/* deltas[k-1] is delta_k. */
PAMLAB_API pamlab_status pamlab_model_create_sequence(int m, const double* deltas, size_t len, const char* variant,
                                                      pamlab_model** out);
PAMLAB_API void pamlab_model_free(pamlab_model* model);

/* Copies a NUL-terminated description into buf; *needed receives the full length plus one. */
PAMLAB_API pamlab_status pamlab_model_describe(const pamlab_model* model, char* buf, size_t cap, size_t* needed);
PAMLAB_API pamlab_status pamlab_model_variant(const pamlab_model* model, char* buf, size_t cap, size_t* needed);
PAMLAB_API pamlab_status pamlab_model_m(const pamlab_model* model, int* out);
PAMLAB_API pamlab_status pamlab_model_beta(const pamlab_model* model, double* out);
PAMLAB_API pamlab_status pamlab_model_gamma(const pamlab_model* model, double* out);

PAMLAB_API pamlab_status pamlab_beta_shape(const pamlab_model* model, int64_t i, double* a, double* b);
PAMLAB_API pamlab_status pamlab_psi_moment(const pamlab_model* model, int64_t i, int k, double* out);
PAMLAB_API pamlab_status pamlab_comp_moment(const pamlab_model* model, int64_t i, int k, double* out);
PAMLAB_API pamlab_status pamlab_scale_s(const pamlab_model* model, int64_t n, double* out);
PAMLAB_API pamlab_status pamlab_scale_s_tilde(const pamlab_model* model, int64_t n, double* out);
/* out[i-1] = b_i for i = 1..count. */
PAMLAB_API pamlab_status pamlab_b_coefficients(const pamlab_model* model, int64_t count, double* out);
PAMLAB_API pamlab_status pamlab_mu_row(const pamlab_model* model, int64_t i, int64_t n, double* out);

/* ---- graphs --------------------------------------------------------- */

typedef struct pamlab_graph pamlab_graph;

typedef struct pamlab_decomposition {
    double delta_n;
    double t1;
    double t2;
    double t3;
    double total;
    double residual;
} pamlab_decomposition;

/* Samples with the model's variant using the generator seeded by seed. */
PAMLAB_API pamlab_status pamlab_graph_sample(const pamlab_model* model, int64_t n, uint64_t seed, pamlab_graph** out);
PAMLAB_API void pamlab_graph_free(pamlab_graph* graph);
PAMLAB_API pamlab_status pamlab_graph_size(const pamlab_graph* graph, int64_t* n, int* m);
/* Target of edge `label` (0-based) of vertex k >= 2. */
PAMLAB_API pamlab_status pamlab_graph_target(const pamlab_graph* graph, int64_t k, int label, int32_t* out);
PAMLAB_API pamlab_status pamlab_graph_triangles(const pamlab_graph* graph, uint64_t* total, uint64_t* simple);
/* out[i-1] = T_{n,i} for i = 1..cap. */
PAMLAB_API pamlab_status pamlab_graph_triangles_by_oldest(const pamlab_graph* graph, int64_t cap, uint64_t* out);
PAMLAB_API pamlab_status pamlab_graph_cycles(const pamlab_graph* graph, int len, uint64_t* simple, uint64_t* weighted);
PAMLAB_API pamlab_status pamlab_graph_cliques(const pamlab_graph* graph, int len, uint64_t* simple, uint64_t* weighted);
/* Urn-variant graphs only (the environment is kept with the graph). */
PAMLAB_API pamlab_status pamlab_graph_decomposition(const pamlab_graph* graph, pamlab_decomposition* out);
PAMLAB_API pamlab_status pamlab_graph_write_edges(const pamlab_graph* graph, const char* path);

/* ---- batch simulation ----------------------------------------------- */

enum {
    PAMLAB_SIM_DECOMPOSITION = 1, /* fill decomposition (urn variant) */
    PAMLAB_SIM_TIMING = 2         /* fill runtime_ms; zero otherwise */
};

typedef struct pamlab_replicate {
    uint64_t seed;
    uint64_t t_total;
    uint64_t t_simple;
    uint64_t t_oldest1;
    uint64_t t_oldest2;
    double runtime_ms;
    pamlab_decomposition decomposition;
} pamlab_replicate;

/* Replicate r uses seed mix64(seed ^ r * 0x9E3779B97F4A7C15); results do not depend on the
   worker count (PAMLAB_THREADS). */
PAMLAB_API pamlab_status pamlab_simulate_batch(const pamlab_model* model, int64_t n, size_t reps, uint64_t seed,
                                               unsigned flags, pamlab_replicate* out);
PAMLAB_API uint64_t pamlab_stream_seed(uint64_t seed, uint64_t r);

/* ---- exact means and phase scans ------------------------------------ */

PAMLAB_API pamlab_status pamlab_exact_mean(const pamlab_model* model, int64_t n, double* out);
PAMLAB_API pamlab_status pamlab_exact_mean_curve(const pamlab_model* model, const int64_t* ns, size_t count, double* out);
PAMLAB_API pamlab_status pamlab_expected_delta_i(const pamlab_model* model, int64_t i, int64_t n, double* out);

enum {
    PAMLAB_TERM_LOG_N = 1,
    PAMLAB_TERM_LOGLOG_N = 2,
    PAMLAB_TERM_LOG_POW = 4, /* (log n)^(1-alpha) */
    PAMLAB_TERM_INV_LOG = 8
};

typedef struct pamlab_growth_fit {
    unsigned basis;
    double log_n;
    double loglog_n;
    double log_pow;
    double inv_log;
    double intercept;
    int64_t fit_from;
    int valid;
} pamlab_growth_fit;

/* means[ci * n_count + ni] for c_list[ci], n_grid[ni]; one fit per c. */
PAMLAB_API pamlab_status pamlab_phase_scan(int m, double alpha, const double* c_list, size_t c_count,
                                           const int64_t* n_grid, size_t n_count, double floor, double* means,
                                           pamlab_growth_fit* fits);

/* ---- asymptotic orders ---------------------------------------------- */

/* edges holds 2*edge_count vertex labels in 1..k. delta is a rational string.
   With max_over_embeddings != 0 the order is maximized over vertex relabelings.
   n_exponent is written as "p/q" or "p". */
PAMLAB_API pamlab_status pamlab_diagram_order(int k, const int* edges, size_t edge_count, int m, const char* delta,
                                              int max_over_embeddings, char* n_exponent, size_t cap, int* log_exponent);
/* Exponents a_j as rational strings. */
PAMLAB_API pamlab_status pamlab_evaluate_F(const char* const* a, size_t k, char* n_exponent, size_t cap,
                                           int* log_exponent);
PAMLAB_API pamlab_status pamlab_numeric_F(const double* a, size_t k, int64_t n, double* out);

/* ---- limit laws ----------------------------------------------------- */

PAMLAB_API pamlab_status pamlab_truncation_plan(const pamlab_model* model, double tol, int64_t* N, double* predicted_error);
/* Draw r uses stream seed r of seed. */
PAMLAB_API pamlab_status pamlab_limit_sample(const pamlab_model* model, int64_t N, size_t count, uint64_t seed, double* out);
/* Entry i (2 <= i <= i_max) of count independent ratio-vector draws. */
PAMLAB_API pamlab_status pamlab_ratio_sample(const pamlab_model* model, int64_t i_max, int64_t i, size_t count,
                                             uint64_t seed, double* out);
/* centered != 0 subtracts E T_n; scale 0 uses s_n, 1 uses the exact double sum. */
PAMLAB_API pamlab_status pamlab_standardize(const pamlab_model* model, int64_t n, int centered, int scale,
                                            const double* in, size_t count, double* out);

/* ---- RGIV ----------------------------------------------------------- */

typedef struct pamlab_rgiv_record {
    int64_t N;
    uint64_t edges;
    uint64_t triangles;
    double S, L, D, R1, R2;
    double Delta, T1, T2, T3;
    double edge_residual;
    double triangle_residual;
} pamlab_rgiv_record;

/* forced_N < 0 draws N ~ Poisson(lambda t). */
PAMLAB_API pamlab_status pamlab_rgiv_batch(double lambda, double t, size_t reps, uint64_t seed, int64_t forced_N,
                                           pamlab_rgiv_record* out);
PAMLAB_API pamlab_status pamlab_rgiv_H(double theta, double* out);
PAMLAB_API pamlab_status pamlab_rgiv_g(double u, double theta, double* out);

/* ---- statistics ----------------------------------------------------- */

PAMLAB_API pamlab_status pamlab_wasserstein1(const double* a, size_t na, const double* b, size_t nb, double* out);
PAMLAB_API pamlab_status pamlab_wasserstein1_normal(const double* a, size_t na, double* out);
PAMLAB_API pamlab_status pamlab_tv_poisson(const uint64_t* counts, size_t n, double mean, double* out);
/* points entries each in q, sample, reference. */
PAMLAB_API pamlab_status pamlab_qq_normal(const double* a, size_t na, int points, double* q, double* sample,
                                          double* reference, double* correlation);
PAMLAB_API pamlab_status pamlab_moments(const double* a, size_t na, double* mean, double* variance, double* stderr_mean);
PAMLAB_API pamlab_status pamlab_fit_growth(const double* xs, const double* ys, size_t count, unsigned basis, double alpha,
                                           pamlab_growth_fit* out);

#ifdef __cplusplus
}
#endif

#endif
