#include "qccs/qccs.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "qccs/fockspace.hpp"
#include "qccs/nonclassical.hpp"
#include "qccs/qcalculus.hpp"
#include "qccs/qmath.hpp"
#include "qccs/states.hpp"
#include "qccs/verify.hpp"

struct qccs_params {
    qccs::QParams p;
};

struct qccs_state {
    qccs::fockspace::TwoModeState state;
    qccs::states::KccsParams prm;
};

struct qccs_report {
    std::vector<qccs::verify::CheckResult> checks;
};

struct qccs_scan {
    int k = 0;
    qccs::nonclassical::ScanResult result;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <class F>
qccs_status guarded(F&& f) {
    try {
        return f();
    } catch (const qccs::truncation_error& e) {
        set_error(e.what());
        return QCCS_ERR_TRUNCATION;
    } catch (const qccs::convergence_error& e) {
        set_error(e.what());
        return QCCS_ERR_NO_CONVERGENCE;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return QCCS_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return QCCS_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return QCCS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QCCS_ERR_INTERNAL;
    }
}

qccs_status need(bool cond, const char* msg) {
    if (!cond) {
        set_error(msg);
        return QCCS_ERR_INVALID_ARGUMENT;
    }
    return QCCS_OK;
}

} // namespace

extern "C" {

const char* qccs_status_name(qccs_status s) {
    switch (s) {
        case QCCS_OK: return "ok";
        case QCCS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QCCS_ERR_DOMAIN: return "domain error";
        case QCCS_ERR_NO_CONVERGENCE: return "no convergence";
        case QCCS_ERR_TRUNCATION: return "insufficient truncation";
        case QCCS_ERR_IO: return "io error";
        case QCCS_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* qccs_last_error(void) { return g_last_error.c_str(); }

qccs_status qccs_params_create(double q, double tol, qccs_params** out) {
    if (auto s = need(out != nullptr, "params_create: null output"); s != QCCS_OK) return s;
    return guarded([&] {
        *out = new qccs_params{qccs::QParams(q, tol)};
        return QCCS_OK;
    });
}

void qccs_params_free(qccs_params* p) { delete p; }

qccs_status qccs_params_q(const qccs_params* p, double* out) {
    if (auto s = need(p && out, "params_q: null argument"); s != QCCS_OK) return s;
    *out = p->p.q;
    return QCCS_OK;
}

qccs_status qccs_q_number(const qccs_params* p, int n, double* out) {
    if (auto s = need(p && out, "q_number: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        *out = qccs::qmath::q_number(n, p->p);
        return QCCS_OK;
    });
}

qccs_status qccs_q_factorial(const qccs_params* p, int n, double* out) {
    if (auto s = need(p && out, "q_factorial: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        *out = qccs::qmath::q_factorial(n, p->p);
        return QCCS_OK;
    });
}

qccs_status qccs_q_exponential(const qccs_params* p, double x, double* value, int* converged) {
    if (auto s = need(p && value, "q_exponential: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        const auto sv = qccs::qmath::q_exponential(x, p->p);
        *value = sv.value;
        if (converged) *converged = sv.converged ? 1 : 0;
        return QCCS_OK;
    });
}

qccs_status qccs_largest_zero(const qccs_params* p, double* out) {
    if (auto s = need(p && out, "largest_zero: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        *out = qccs::qmath::largest_zero(p->p);
        return QCCS_OK;
    });
}

qccs_status qccs_q_bessel_j(const qccs_params* p, int nu, double x_re, double x_im,
                            double* out_re, double* out_im) {
    if (auto s = need(p && out_re && out_im, "q_bessel_j: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        const auto v = qccs::qmath::q_bessel_j(nu, {x_re, x_im}, p->p);
        if (!v.converged) {
            set_error("q_bessel_j: series did not settle");
            return QCCS_ERR_NO_CONVERGENCE;
        }
        *out_re = v.value.real();
        *out_im = v.value.imag();
        return QCCS_OK;
    });
}

qccs_status qccs_q_bessel_i_like(const qccs_params* p, int nu, double y, double* out) {
    if (auto s = need(p && out, "q_bessel_i_like: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        const auto v = qccs::qmath::q_bessel_i_like(nu, y, p->p);
        if (!v.converged) {
            set_error("q_bessel_i_like: series did not settle");
            return QCCS_ERR_NO_CONVERGENCE;
        }
        *out = v.value;
        return QCCS_OK;
    });
}

qccs_status qccs_q_bessel_k(const qccs_params* p, int nu, double x, double* out) {
    if (auto s = need(p && out, "q_bessel_k: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        const auto v = qccs::qmath::q_bessel_k(nu, x, p->p);
        if (!v.converged) {
            set_error("q_bessel_k: nested sum did not settle");
            return QCCS_ERR_NO_CONVERGENCE;
        }
        *out = v.value;
        return QCCS_OK;
    });
}

qccs_status qccs_moment_identity_error(const qccs_params* p, int p_idx, int nu, double* rel_err) {
    if (auto s = need(p && rel_err, "moment_identity_error: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        *rel_err = qccs::qcalculus::verify_moment_identity(p_idx, nu, p->p);
        return QCCS_OK;
    });
}

qccs_status qccs_state_build(const qccs_params* p, double xi_re, double xi_im, int qbar, int k,
                             int j, int n_max, qccs_state** out) {
    if (auto s = need(p && out, "state_build: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        qccs::states::KccsParams prm;
        prm.xi = {xi_re, xi_im};
        prm.qbar = qbar;
        prm.k = k;
        prm.j = j;
        prm.p = p->p;
        prm.n_max = n_max;
        auto st = qccs::states::build_kccs(prm);
        prm.n_max = st.trunc.n_max;
        *out = new qccs_state{std::move(st), prm};
        return QCCS_OK;
    });
}

qccs_status qccs_state_generate_averaged(const qccs_params* p, double xi1_re, double xi1_im,
                                         double xi2_re, double xi2_im, int qbar, int k, int j,
                                         int n_angles, qccs_state** out) {
    if (auto s = need(p && out, "state_generate_averaged: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        auto st = qccs::states::generate_by_averaging({xi1_re, xi1_im}, {xi2_re, xi2_im}, qbar, k,
                                                      j, n_angles, p->p, 0);
        qccs::states::KccsParams prm;
        prm.xi = qccs::complex(xi1_re, xi1_im) * qccs::complex(xi2_re, xi2_im);
        prm.qbar = qbar;
        prm.k = k;
        prm.j = j;
        prm.p = p->p;
        prm.n_max = st.trunc.n_max;
        *out = new qccs_state{std::move(st), prm};
        return QCCS_OK;
    });
}

void qccs_state_free(qccs_state* s) { delete s; }

qccs_status qccs_state_norm(const qccs_state* s, double* out) {
    if (auto st = need(s && out, "state_norm: null argument"); st != QCCS_OK) return st;
    *out = s->state.norm();
    return QCCS_OK;
}

qccs_status qccs_state_mean_numbers(const qccs_state* s, double* n1, double* n2) {
    if (auto st = need(s && n1 && n2, "state_mean_numbers: null argument"); st != QCCS_OK) return st;
    const auto mn = qccs::states::mean_number_relation(s->state);
    const double nrm2 = s->state.norm() * s->state.norm();
    *n1 = mn.first / nrm2;
    *n2 = mn.second / nrm2;
    return QCCS_OK;
}

qccs_status qccs_state_n_max(const qccs_state* s, int* out) {
    if (auto st = need(s && out, "state_n_max: null argument"); st != QCCS_OK) return st;
    *out = s->state.trunc.n_max;
    return QCCS_OK;
}

qccs_status qccs_state_amplitude_count(const qccs_state* s, int* out) {
    if (auto st = need(s && out, "state_amplitude_count: null argument"); st != QCCS_OK) return st;
    *out = static_cast<int>(s->state.amps.size());
    return QCCS_OK;
}

qccs_status qccs_state_amplitudes(const qccs_state* s, int* m, int* n, double* re, double* im,
                                  int cap, int* filled) {
    if (auto st = need(s && m && n && re && im, "state_amplitudes: null argument"); st != QCCS_OK)
        return st;
    const int count = static_cast<int>(s->state.amps.size());
    const int take = cap < count ? cap : count;
    for (int i = 0; i < take; ++i) {
        const auto& [mm, nn, a] = s->state.amps[static_cast<size_t>(i)];
        m[i] = mm;
        n[i] = nn;
        re[i] = a.real();
        im[i] = a.imag();
    }
    if (filled) *filled = count;
    return QCCS_OK;
}

qccs_status qccs_state_write(const qccs_state* s, const char* path) {
    if (auto st = need(s && path, "state_write: null argument"); st != QCCS_OK) return st;
    return guarded([&] {
        std::ofstream os(path);
        if (!os) {
            set_error("state_write: cannot open output file");
            return QCCS_ERR_IO;
        }
        qccs::states::write_state(s->state, s->prm, os);
        return os.good() ? QCCS_OK : QCCS_ERR_IO;
    });
}

qccs_status qccs_state_fidelity(const qccs_state* a, const qccs_state* b, double* out) {
    if (auto st = need(a && b && out, "state_fidelity: null argument"); st != QCCS_OK) return st;
    return guarded([&] {
        *out = std::abs(qccs::fockspace::inner(a->state, b->state)) /
               (a->state.norm() * b->state.norm());
        return QCCS_OK;
    });
}

void qccs_verify_options_init(qccs_verify_options* opt) {
    if (!opt) return;
    const qccs::verify::SuiteOptions d;
    opt->k = d.k;
    opt->qbar = d.qbar;
    opt->xi_re = d.xi.real();
    opt->xi_im = d.xi.imag();
    opt->n_max = d.n_max;
    opt->p_max = d.p_max;
    opt->nu_max = d.nu_max;
    opt->tol_identity = d.tol_identity;
    opt->tol_integral = d.tol_integral;
    opt->tol_algebra = d.tol_algebra;
}

qccs_status qccs_verify(const qccs_params* p, const char* suite, const qccs_verify_options* opt,
                        qccs_report** out) {
    if (auto s = need(p && suite && out, "verify: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        qccs::verify::SuiteOptions o;
        if (opt) {
            o.k = opt->k;
            o.qbar = opt->qbar;
            o.xi = {opt->xi_re, opt->xi_im};
            o.n_max = opt->n_max;
            o.p_max = opt->p_max;
            o.nu_max = opt->nu_max;
            o.tol_identity = opt->tol_identity;
            o.tol_integral = opt->tol_integral;
            o.tol_algebra = opt->tol_algebra;
        }
        *out = new qccs_report{qccs::verify::run_suite(suite, p->p, o)};
        return QCCS_OK;
    });
}

void qccs_report_free(qccs_report* r) { delete r; }

int qccs_report_size(const qccs_report* r) { return r ? static_cast<int>(r->checks.size()) : 0; }

const char* qccs_report_name(const qccs_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->checks.size())) return "";
    return r->checks[static_cast<size_t>(i)].name.c_str();
}

double qccs_report_residual(const qccs_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->checks.size())) return -1.0;
    return r->checks[static_cast<size_t>(i)].residual;
}

double qccs_report_bound(const qccs_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->checks.size())) return -1.0;
    return r->checks[static_cast<size_t>(i)].bound;
}

int qccs_report_passed(const qccs_report* r, int i) {
    if (!r || i < 0 || i >= static_cast<int>(r->checks.size())) return 0;
    return r->checks[static_cast<size_t>(i)].passed() ? 1 : 0;
}

int qccs_report_all_passed(const qccs_report* r) {
    if (!r) return 0;
    for (const auto& c : r->checks)
        if (!c.passed()) return 0;
    return 1;
}

qccs_status qccs_g2(const qccs_params* p, int k, int qbar, double x, double* g_out,
                    double* product) {
    if (auto s = need(p && g_out, "g2: null argument"); s != QCCS_OK) return s;
    return guarded([&] {
        const auto rep = qccs::nonclassical::g2_degrees(k, qbar, x, p->p);
        for (int j = 0; j < k; ++j) g_out[j] = rep.g_values[static_cast<size_t>(j)];
        if (product) *product = rep.product;
        return QCCS_OK;
    });
}

qccs_status qccs_scan_run(const qccs_params* p, int k, int qbar, const double* xs, int n_xs,
                          qccs_scan** out) {
    if (auto s = need(p && xs && out && n_xs > 0, "scan_run: null or empty input"); s != QCCS_OK)
        return s;
    return guarded([&] {
        std::vector<double> grid(xs, xs + n_xs);
        auto res = qccs::nonclassical::antibunching_scan(k, qbar, p->p, grid);
        *out = new qccs_scan{k, std::move(res)};
        return QCCS_OK;
    });
}

void qccs_scan_free(qccs_scan* s) { delete s; }

int qccs_scan_rows(const qccs_scan* s) {
    return s ? static_cast<int>(s->result.rows.size()) : 0;
}

int qccs_scan_k(const qccs_scan* s) { return s ? s->k : 0; }

qccs_status qccs_scan_row(const qccs_scan* s, int row, double* x, double* g, int* antibunched) {
    if (auto st = need(s && x && g && antibunched, "scan_row: null argument"); st != QCCS_OK)
        return st;
    if (row < 0 || row >= static_cast<int>(s->result.rows.size())) {
        set_error("scan_row: row out of range");
        return QCCS_ERR_INVALID_ARGUMENT;
    }
    const auto& r = s->result.rows[static_cast<size_t>(row)];
    *x = r.x;
    for (int j = 0; j < s->k; ++j) {
        g[j] = r.g_values[static_cast<size_t>(j)];
        antibunched[j] = r.antibunched[static_cast<size_t>(j)] ? 1 : 0;
    }
    return QCCS_OK;
}

qccs_status qccs_scan_crossing(const qccs_scan* s, int* found, double* x_star) {
    if (auto st = need(s && found, "scan_crossing: null argument"); st != QCCS_OK) return st;
    *found = s->result.g0_crossing.found ? 1 : 0;
    if (x_star) *x_star = s->result.g0_crossing.x_star;
    return QCCS_OK;
}

} // extern "C"
