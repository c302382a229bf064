/* qccs: k-component q-deformed charge coherent states.
 *
 * C interface to the qccs core: opaque handles, integer status codes, and
 * plain-double accessors.  Every function returns QCCS_OK on success; on
 * failure qccs_last_error() describes what went wrong (the message is
 * thread-local and valid until the next failing call on the same thread).
 */
#ifndef QCCS_H
#define QCCS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qccs_status {
    QCCS_OK = 0,
    QCCS_ERR_INVALID_ARGUMENT = 1, /* bad handle, range or precondition */
    QCCS_ERR_DOMAIN = 2,           /* parameter outside mathematical domain */
    QCCS_ERR_NO_CONVERGENCE = 3,   /* series or nested sum failed to settle */
    QCCS_ERR_TRUNCATION = 4,       /* requested cutoff cannot host the state */
    QCCS_ERR_IO = 5,
    QCCS_ERR_INTERNAL = 6
} qccs_status;

typedef struct qccs_params qccs_params;
typedef struct qccs_state qccs_state;
typedef struct qccs_report qccs_report;
typedef struct qccs_scan qccs_scan;

const char* qccs_status_name(qccs_status s);
const char* qccs_last_error(void);

/* ---- deformation parameters ------------------------------------------- */

qccs_status qccs_params_create(double q, double tol, qccs_params** out);
void qccs_params_free(qccs_params* p);
qccs_status qccs_params_q(const qccs_params* p, double* out); /* normalized base */

/* ---- q-deformed special functions -------------------------------------- */

qccs_status qccs_q_number(const qccs_params* p, int n, double* out);
qccs_status qccs_q_factorial(const qccs_params* p, int n, double* out);
qccs_status qccs_q_exponential(const qccs_params* p, double x, double* value, int* converged);
qccs_status qccs_largest_zero(const qccs_params* p, double* out);
qccs_status qccs_q_bessel_j(const qccs_params* p, int nu, double x_re, double x_im,
                            double* out_re, double* out_im);
qccs_status qccs_q_bessel_i_like(const qccs_params* p, int nu, double y, double* out);
qccs_status qccs_q_bessel_k(const qccs_params* p, int nu, double x, double* out);

/* Relative error of the Jackson moment identity at indices (p_idx, nu). */
qccs_status qccs_moment_identity_error(const qccs_params* p, int p_idx, int nu, double* rel_err);

/* ---- charge coherent states --------------------------------------------- */

/* n_max = 0 selects the automatic truncation. */
qccs_status qccs_state_build(const qccs_params* p, double xi_re, double xi_im, int qbar, int k,
                             int j, int n_max, qccs_state** out);
/* U(1)-phase-averaged generation from a coherent state (xi1) and a
 * single-mode k-component state (xi2); n_angles = 0 selects the exactness
 * bound 4 (n_max + 1). */
qccs_status qccs_state_generate_averaged(const qccs_params* p, double xi1_re, double xi1_im,
                                         double xi2_re, double xi2_im, int qbar, int k, int j,
                                         int n_angles, qccs_state** out);
void qccs_state_free(qccs_state* s);

qccs_status qccs_state_norm(const qccs_state* s, double* out);
qccs_status qccs_state_mean_numbers(const qccs_state* s, double* n1, double* n2);
qccs_status qccs_state_n_max(const qccs_state* s, int* out);
qccs_status qccs_state_amplitude_count(const qccs_state* s, int* out);
/* Fills up to cap entries; *filled receives the stored count. */
qccs_status qccs_state_amplitudes(const qccs_state* s, int* m, int* n, double* re, double* im,
                                  int cap, int* filled);
/* Text format: header "k qbar j xi_re xi_im q n_max", then "m n re im" rows. */
qccs_status qccs_state_write(const qccs_state* s, const char* path);
qccs_status qccs_state_fidelity(const qccs_state* a, const qccs_state* b, double* out);

/* ---- verification suites ------------------------------------------------ */

typedef struct qccs_verify_options {
    int k;
    int qbar;
    double xi_re, xi_im;
    int n_max;     /* operator-algebra truncation */
    int p_max;     /* moment grid */
    int nu_max;
    double tol_identity;
    double tol_integral;
    double tol_algebra;
} qccs_verify_options;

void qccs_verify_options_init(qccs_verify_options* opt);

/* suite: "algebra", "states", "dalgebra", "moments", "completeness", "all" */
qccs_status qccs_verify(const qccs_params* p, const char* suite,
                        const qccs_verify_options* opt, qccs_report** out);
void qccs_report_free(qccs_report* r);
int qccs_report_size(const qccs_report* r);
const char* qccs_report_name(const qccs_report* r, int i);
double qccs_report_residual(const qccs_report* r, int i);
double qccs_report_bound(const qccs_report* r, int i);
int qccs_report_passed(const qccs_report* r, int i);
int qccs_report_all_passed(const qccs_report* r);

/* ---- correlation degrees and scans -------------------------------------- */

/* g_out must hold k doubles. */
qccs_status qccs_g2(const qccs_params* p, int k, int qbar, double x, double* g_out,
                    double* product);

qccs_status qccs_scan_run(const qccs_params* p, int k, int qbar, const double* xs, int n_xs,
                          qccs_scan** out);
void qccs_scan_free(qccs_scan* s);
int qccs_scan_rows(const qccs_scan* s);
int qccs_scan_k(const qccs_scan* s);
/* g and antibunched must hold k entries each. */
qccs_status qccs_scan_row(const qccs_scan* s, int row, double* x, double* g, int* antibunched);
qccs_status qccs_scan_crossing(const qccs_scan* s, int* found, double* x_star);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QCCS_H */
