// qccs command line front end: state construction, verification suites and
// antibunching scans over the shared-library C interface.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qccs/qccs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitNoConvergence = 3;

int status_to_exit(qccs_status s) {
    switch (s) {
        case QCCS_OK: return kExitOk;
        case QCCS_ERR_NO_CONVERGENCE:
        case QCCS_ERR_TRUNCATION: return kExitNoConvergence;
        default: return kExitBadArguments;
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ParamsHandle {
    qccs_params* p = nullptr;
    ~ParamsHandle() { qccs_params_free(p); }
};

struct StateHandle {
    qccs_state* s = nullptr;
    ~StateHandle() { qccs_state_free(s); }
};

struct ScanHandle {
    qccs_scan* s = nullptr;
    ~ScanHandle() { qccs_scan_free(s); }
};

struct ReportHandle {
    qccs_report* r = nullptr;
    ~ReportHandle() { qccs_report_free(r); }
};

int run_state(double q, double tol, int k, int qbar, double xi_re, double xi_im, int j, int n_max,
              const std::string& out_path) {
    ParamsHandle P;
    qccs_status st = qccs_params_create(q, tol, &P.p);
    if (st != QCCS_OK) {
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    StateHandle S;
    st = qccs_state_build(P.p, xi_re, xi_im, qbar, k, j, n_max, &S.s);
    if (st != QCCS_OK) {
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    st = qccs_state_write(S.s, out_path.c_str());
    if (st != QCCS_OK) {
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    double norm = 0.0, n1 = 0.0, n2 = 0.0;
    int nm = 0, count = 0;
    qccs_state_norm(S.s, &norm);
    qccs_state_mean_numbers(S.s, &n1, &n2);
    qccs_state_n_max(S.s, &nm);
    qccs_state_amplitude_count(S.s, &count);
    const bool charge_ok = std::abs(n1 - n2 - qbar) <= 1e-8;
    std::cout << "state written to " << out_path << "\n"
              << "k=" << k << " qbar=" << qbar << " j=" << j << " xi=" << fmt(xi_re) << "+"
              << fmt(xi_im) << "i q=" << fmt(q) << " n_max=" << nm << " amplitudes=" << count
              << "\n"
              << "norm: " << fmt(norm) << "\n"
              << "mean-n1: " << fmt(n1) << "\n"
              << "mean-n2: " << fmt(n2) << "\n"
              << "charge-check: " << (charge_ok ? "pass" : "FAIL") << "\n";
    return charge_ok ? kExitOk : kExitVerifyFailed;
}

int run_verify(double q, double tol, const std::string& suite, const qccs_verify_options& opt,
               const std::string& json_path) {
    ParamsHandle P;
    qccs_status st = qccs_params_create(q, tol, &P.p);
    if (st != QCCS_OK) {
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    ReportHandle R;
    st = qccs_verify(P.p, suite.c_str(), &opt, &R.r);
    if (st != QCCS_OK) {
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    const int n = qccs_report_size(R.r);
    int failed = 0;
    for (int i = 0; i < n; ++i) {
        const bool ok = qccs_report_passed(R.r, i) != 0;
        if (!ok) ++failed;
        std::printf("%-4s  %-55s  residual %-13.6g bound %-10.3g\n", ok ? "ok" : "FAIL",
                    qccs_report_name(R.r, i), qccs_report_residual(R.r, i),
                    qccs_report_bound(R.r, i));
    }
    std::printf("%d checks, %d failed\n", n, failed);

    if (!json_path.empty()) {
        nlohmann::json doc;
        doc["suite"] = suite;
        doc["q"] = q;
        doc["checks"] = nlohmann::json::array();
        for (int i = 0; i < n; ++i) {
            doc["checks"].push_back({{"name", qccs_report_name(R.r, i)},
                                     {"residual", qccs_report_residual(R.r, i)},
                                     {"bound", qccs_report_bound(R.r, i)},
                                     {"passed", qccs_report_passed(R.r, i) != 0}});
        }
        doc["all_passed"] = failed == 0;
        std::ofstream os(json_path);
        if (!os) {
            std::cerr << "error: cannot open " << json_path << "\n";
            return kExitBadArguments;
        }
        os << doc.dump(2) << "\n";
    }
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

int emit_scan_block(std::ostream& os, qccs_params* P, double q, double tol, int k, int qbar,
                    const std::vector<double>& xs) {
    ScanHandle S;
    const qccs_status st = qccs_scan_run(P, k, qbar, xs.data(), static_cast<int>(xs.size()), &S.s);
    if (st != QCCS_OK) {
        os << "# failed k=" << k << " qbar=" << qbar << ": " << qccs_last_error() << "\n";
        std::cerr << "error: " << qccs_last_error() << "\n";
        return status_to_exit(st);
    }
    os << "# k=" << k << " qbar=" << qbar << " q=" << fmt(q) << " tol=" << fmt(tol) << "\n";
    os << "x";
    for (int j = 0; j < k; ++j) os << ",g_" << j;
    for (int j = 0; j < k; ++j) os << ",antibunched_" << j;
    os << "\n";
    std::vector<double> g(static_cast<size_t>(k));
    std::vector<int> flags(static_cast<size_t>(k));
    const int rows = qccs_scan_rows(S.s);
    for (int r = 0; r < rows; ++r) {
        double x = 0.0;
        qccs_scan_row(S.s, r, &x, g.data(), flags.data());
        os << fmt(x);
        for (int j = 0; j < k; ++j) os << "," << fmt(g[static_cast<size_t>(j)]);
        for (int j = 0; j < k; ++j) os << "," << flags[static_cast<size_t>(j)];
        os << "\n";
    }
    int found = 0;
    double x_star = 0.0;
    qccs_scan_crossing(S.s, &found, &x_star);
    if (found)
        os << "# g0 crossing near x=" << fmt(x_star) << "\n";
    else
        os << "# no g0 crossing inside grid\n";
    return kExitOk;
}

std::vector<double> geometric_grid(double x_min, double x_max, int points) {
    std::vector<double> xs;
    if (points < 2 || !(x_min > 0.0) || !(x_max > x_min)) return xs;
    const double ratio = std::pow(x_max / x_min, 1.0 / (points - 1));
    double x = x_min;
    for (int i = 0; i < points; ++i) {
        xs.push_back(x);
        x *= ratio;
    }
    xs.back() = x_max;
    return xs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-component q-deformed charge coherent states toolkit"};
    app.set_config("--config");
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    double q = 0.9, tol = 1e-12;
    app.add_option("--q", q, "deformation parameter (q > 0)")->capture_default_str();
    app.add_option("--tol", tol, "series tolerance")->capture_default_str();

    // state
    auto* state_cmd = app.add_subcommand("state", "build a state, write it and print a summary");
    int s_k = 1, s_qbar = 0, s_j = 0, s_nmax = 0;
    double s_xi = 0.7, s_xi_im = 0.0;
    std::string s_out = "state.txt";
    state_cmd->add_option("--k", s_k, "component count")->capture_default_str();
    state_cmd->add_option("--qbar", s_qbar, "charge number")->capture_default_str();
    state_cmd->add_option("--xi", s_xi, "eigen-parameter (real part)")->capture_default_str();
    state_cmd->add_option("--xi-im", s_xi_im, "eigen-parameter imaginary part")->capture_default_str();
    state_cmd->add_option("--j", s_j, "component index")->capture_default_str();
    state_cmd->add_option("--nmax", s_nmax, "truncation override (0 = automatic)")->capture_default_str();
    state_cmd->add_option("--out", s_out, "output path")->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite = "all", v_json;
    qccs_verify_options vopt;
    qccs_verify_options_init(&vopt);
    verify_cmd->add_option("--suite", v_suite, "algebra|states|dalgebra|moments|completeness|all")
        ->capture_default_str();
    verify_cmd->add_option("--k", vopt.k, "component count")->capture_default_str();
    verify_cmd->add_option("--qbar", vopt.qbar, "charge number")->capture_default_str();
    verify_cmd->add_option("--xi", vopt.xi_re, "eigen-parameter (real part)")->capture_default_str();
    verify_cmd->add_option("--xi-im", vopt.xi_im, "eigen-parameter imaginary part")->capture_default_str();
    verify_cmd->add_option("--nmax", vopt.n_max, "operator truncation")->capture_default_str();
    verify_cmd->add_option("--pmax", vopt.p_max, "moment grid p maximum")->capture_default_str();
    verify_cmd->add_option("--numax", vopt.nu_max, "moment grid nu maximum")->capture_default_str();
    verify_cmd->add_option("--tol-identity", vopt.tol_identity, "identity bound")->capture_default_str();
    verify_cmd->add_option("--tol-integral", vopt.tol_integral, "q-integral bound")->capture_default_str();
    verify_cmd->add_option("--tol-algebra", vopt.tol_algebra, "algebra bound")->capture_default_str();
    verify_cmd->add_option("--json", v_json, "write a machine-readable report here");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "emit correlation-degree scans as CSV");
    int c_k = 3, c_qbar = 2, c_points = 65;
    double c_xmin = 0.25, c_xmax = 64.0;
    std::string c_xs, c_out;
    bool fig1a = false, fig1b = false;
    scan_cmd->add_option("--k", c_k, "component count")->capture_default_str();
    scan_cmd->add_option("--qbar", c_qbar, "charge number")->capture_default_str();
    scan_cmd->add_option("--xs", c_xs, "comma-separated x grid (overrides the geometric grid)");
    scan_cmd->add_option("--xmin", c_xmin, "geometric grid start")->capture_default_str();
    scan_cmd->add_option("--xmax", c_xmax, "geometric grid end")->capture_default_str();
    scan_cmd->add_option("--points", c_points, "geometric grid size")->capture_default_str();
    scan_cmd->add_flag("--fig1a", fig1a, "preset: k in {3,4,5}, qbar = +-2, q = 0.9");
    scan_cmd->add_flag("--fig1b", fig1b, "preset: k in {3,4,5}, qbar = +-3, q = 0.8");
    scan_cmd->add_option("--out", c_out, "output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitBadArguments;
    }

    if (state_cmd->parsed())
        return run_state(q, tol, s_k, s_qbar, s_xi, s_xi_im, s_j, s_nmax, s_out);

    if (verify_cmd->parsed()) return run_verify(q, tol, v_suite, vopt, v_json);

    if (scan_cmd->parsed()) {
        std::vector<double> xs;
        if (!c_xs.empty()) {
            std::stringstream ss(c_xs);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    xs.push_back(std::stod(tok));
                } catch (...) {
                    std::cerr << "error: bad --xs entry '" << tok << "'\n";
                    return kExitBadArguments;
                }
            }
        } else {
            xs = geometric_grid(c_xmin, c_xmax, c_points);
        }
        if (xs.empty()) {
            std::cerr << "error: empty scan grid\n";
            return kExitBadArguments;
        }
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!c_out.empty()) {
            file.open(c_out);
            if (!file) {
                std::cerr << "error: cannot open " << c_out << "\n";
                return kExitBadArguments;
            }
            os = &file;
        }

        double scan_q = q;
        std::vector<std::pair<int, int>> blocks;
        if (fig1a || fig1b) {
            scan_q = fig1a ? 0.9 : 0.8;
            const int m = fig1a ? 2 : 3;
            for (int k : {3, 4, 5}) {
                blocks.emplace_back(k, m);
                blocks.emplace_back(k, -m);
            }
        } else {
            blocks.emplace_back(c_k, c_qbar);
        }

        ParamsHandle P;
        const qccs_status st = qccs_params_create(scan_q, tol, &P.p);
        if (st != QCCS_OK) {
            std::cerr << "error: " << qccs_last_error() << "\n";
            return status_to_exit(st);
        }
        int rc = kExitOk;
        for (const auto& [bk, bq] : blocks) {
            const int r = emit_scan_block(*os, P.p, scan_q, tol, bk, bq, xs);
            if (r != kExitOk) rc = r;
        }
        return rc;
    }
    return kExitBadArguments;
}
