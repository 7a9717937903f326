/*
 * hrrank C API.
 *
 * Explicit minimal-rank decompositions of real n x p x m tensors with
 * p = (m-1)n and of tall n x u x m tensors, sign classification of the
 * determinantal form M(a, Y), closed-form typical-rank tables and a seeded
 * Monte Carlo rank census.
 *
 * Every function returns an hrr_status. On failure, hrr_last_error() holds a
 * message for the calling thread until its next hrr_* call. Handles are
 * opaque, owned by the caller and released with the matching *_destroy
 * function (which accepts NULL). Handles are immutable after creation and
 * may be shared between threads.
 */
#ifndef HRRANK_H
#define HRRANK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HRR_BUILDING_LIBRARY)
#    define HRR_API __declspec(dllexport)
#  else
#    define HRR_API __declspec(dllimport)
#  endif
#else
#  define HRR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hrr_status {
    HRR_OK = 0,
    HRR_ERR_ARGUMENT = 1,         /* null pointer, bad option, invalid permutation */
    HRR_ERR_DIMENSION = 2,        /* shape does not fit the operation */
    HRR_ERR_SINGULAR = 3,         /* numerically singular matrix */
    HRR_ERR_NOT_GENERIC = 4,      /* input on the degenerate set of the construction */
    HRR_ERR_RANK_DEFICIENT = 5,   /* too few independent hypersurface points */
    HRR_ERR_NO_DECOMPOSITION = 6, /* no decomposition at the minimal rank (see report) */
    HRR_ERR_PARSE = 7,            /* malformed file */
    HRR_ERR_VALIDATION = 8,       /* well-formed file violating its invariants */
    HRR_ERR_IO = 9,
    HRR_ERR_INTERNAL = 10
} hrr_status;

HRR_API const char* hrr_version(void);
HRR_API const char* hrr_status_string(hrr_status status);
HRR_API const char* hrr_last_error(void);

typedef struct hrr_tensor_s* hrr_tensor;
typedef struct hrr_decomposition_s* hrr_decomposition;
typedef struct hrr_census_s* hrr_census;

/* ---- rank tables ------------------------------------------------------ */

HRR_API hrr_status hrr_hurwitz_radon(uint64_t n, uint64_t* out);

typedef struct hrr_rank_answer {
    int known;            /* 0: no closed-form answer for this shape */
    uint64_t low, high;   /* typical ranks are the interval [low, high] */
    const char* citation; /* static string naming the case used */
} hrr_rank_answer;

HRR_API hrr_status hrr_typical_ranks(uint64_t m1, uint64_t m2, uint64_t m3, hrr_rank_answer* out);

/* ---- tensors (slice-major: index(i,j,k) = k*d1*d2 + i*d2 + j) ---------- */

HRR_API hrr_status hrr_tensor_create(size_t d1, size_t d2, size_t d3, const double* data, hrr_tensor* out);
HRR_API hrr_status hrr_tensor_random_gaussian(size_t d1, size_t d2, size_t d3, uint64_t seed, hrr_tensor* out);
HRR_API hrr_status hrr_tensor_load(const char* path, hrr_tensor* out);
HRR_API hrr_status hrr_tensor_save(hrr_tensor t, const char* path);
HRR_API hrr_status hrr_tensor_dims(hrr_tensor t, size_t dims[3]);
/* Borrowed pointer, valid while the handle lives. */
HRR_API hrr_status hrr_tensor_data(hrr_tensor t, const double** data, size_t* length);
/* perm[i] is the source mode that becomes mode i of the result. */
HRR_API hrr_status hrr_tensor_permute(hrr_tensor t, const int perm[3], hrr_tensor* out);
HRR_API void hrr_tensor_destroy(hrr_tensor t);

/* ---- decompositions --------------------------------------------------- */

HRR_API hrr_status hrr_decomposition_load(const char* path, hrr_decomposition* out);
HRR_API hrr_status hrr_decomposition_save(hrr_decomposition d, const char* path);
HRR_API hrr_status hrr_decomposition_dims(hrr_decomposition d, size_t dims[3]);
HRR_API hrr_status hrr_decomposition_rank(hrr_decomposition d, size_t* rank);
/* Borrowed pointers to term `index`; lengths are the three dims. */
HRR_API hrr_status hrr_decomposition_term(hrr_decomposition d, size_t index, const double** u, const double** v,
                                          const double** w);
HRR_API hrr_status hrr_decomposition_reconstruct(hrr_decomposition d, hrr_tensor* out);
HRR_API void hrr_decomposition_destroy(hrr_decomposition d);

/* ||T - reconstruct(D)||_F / ||T||_F (0 when both vanish). */
HRR_API hrr_status hrr_relative_residual(hrr_tensor t, hrr_decomposition d, double* out);

typedef enum hrr_mode { HRR_MODE_AUTO = 0, HRR_MODE_TALL = 1, HRR_MODE_GENERIC = 2 } hrr_mode;

typedef enum hrr_outcome {
    HRR_OUTCOME_RANK_P = 0,          /* decomposed at the minimal rank (p, or u for tall shapes) */
    HRR_OUTCOME_RANK_EXCEEDS_P = 1,  /* rank >= p+1, probabilistic evidence only */
    HRR_OUTCOME_NOT_GENERIC = 2,
    HRR_OUTCOME_RANK_DEFICIENT = 3
} hrr_outcome;

typedef enum hrr_verdict {
    HRR_VERDICT_NONE = -1,
    HRR_VERDICT_NEGATIVE_WITNESS = 0,
    HRR_VERDICT_NO_REAL_POINT = 1,
    HRR_VERDICT_REAL_POINTS_NO_WITNESS = 2
} hrr_verdict;

typedef struct hrr_decompose_options {
    hrr_mode mode;
    int orientation_auto; /* nonzero: detect the mode order */
    int orientation[3];   /* used when orientation_auto == 0 */
    size_t budget;        /* max directions; 0: 64p */
    uint64_t seed;
    double tol;           /* reconstruction tolerance */
    int integer_nodes;    /* tall mode: nodes 1..u instead of equispaced */
} hrr_decompose_options;

HRR_API void hrr_decompose_options_init(hrr_decompose_options* opts);

typedef struct hrr_decompose_report {
    hrr_outcome outcome;
    hrr_mode mode_used;
    int orientation[3];
    size_t rank;
    double residual;
    hrr_verdict verdict;     /* HRR_VERDICT_NONE unless a classification was run */
    size_t directions_tried;
    size_t points_found;
} hrr_decompose_report;

/*
 * Returns HRR_OK with *out set on success. For RankExceedsP / RankDeficient
 * returns HRR_ERR_NO_DECOMPOSITION, for non-generic inputs
 * HRR_ERR_NOT_GENERIC; in both cases *report is filled and *out is NULL.
 * `out` may be NULL when only the report is wanted.
 */
HRR_API hrr_status hrr_decompose(hrr_tensor t, const hrr_decompose_options* opts, hrr_decompose_report* report,
                                 hrr_decomposition* out);

typedef struct hrr_classify_report {
    hrr_verdict verdict;
    int input_was_contraction; /* n x n x l input used as Y directly */
    size_t directions_tried;
    size_t points_found;
    double witness_det;        /* det M(a, Y) < 0 for NegativeWitness */
    size_t witness_length;     /* length of a, 0 without a witness */
} hrr_classify_report;

/* `witness` may be NULL; otherwise up to `witness_capacity` entries of a are copied. */
HRR_API hrr_status hrr_classify(hrr_tensor t, size_t directions, uint64_t seed, hrr_classify_report* report,
                                double* witness, size_t witness_capacity);

/* ---- census ----------------------------------------------------------- */

/* threads == 0: hardware concurrency. The report does not depend on it. */
HRR_API hrr_status hrr_census_run(size_t m, size_t n, size_t trials, uint64_t seed, size_t threads, hrr_census* out);
HRR_API hrr_status hrr_census_count(hrr_census c, hrr_outcome outcome, size_t* out);
HRR_API hrr_status hrr_census_fraction(hrr_census c, hrr_outcome outcome, double* out);
HRR_API hrr_status hrr_census_max_residual(hrr_census c, double* out);
/* Borrowed JSON text of the report, valid while the handle lives. */
HRR_API hrr_status hrr_census_json(hrr_census c, const char** json, size_t* length);
HRR_API hrr_status hrr_census_save(hrr_census c, const char* path);
HRR_API void hrr_census_destroy(hrr_census c);

#ifdef __cplusplus
}
#endif

#endif /* HRRANK_H */
