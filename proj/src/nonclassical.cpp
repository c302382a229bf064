#include "qccs/nonclassical.hpp"

#include <algorithm>
#include <cmath>

#include "qccs/qmath.hpp"
#include "qccs/states.hpp"

namespace qccs {
namespace nonclassical {

namespace {

double S_of(int k, int qbar, int j, double x, const QParams& p) {
    return states::norm_series_sum(k, qbar, j, complex(x, 0.0), p).value.real();
}

double re(complex z) { return z.real(); }

} // namespace

QuadratureReport quadrature_report(const TwoModeState& state, const OperatorSet& ops) {
    using fockspace::expectation;
    QuadratureReport r{};

    const complex km = expectation(state, ops.k_minus);
    const complex km2 = expectation(state, ops.k_minus.pow(2));
    const double kpkm = re(expectation(state, ops.k_plus * ops.k_minus));
    const double two_k0 = re(expectation(state, ops.bracket_2k0));

    // X1^2 = (K+^2 + K-^2 + K+K- + K-K+)/4 with K-K+ = K+K- + [2K0]
    // and <K+^n> = conj <K-^n>; no zero-moment shortcut is assumed.
    const double kmkp = kpkm + two_k0;
    r.var_x1 = 0.25 * (2.0 * re(km2) + kpkm + kmkp) - std::pow(re(km), 2);
    r.var_x2 = 0.25 * (-2.0 * re(km2) + kpkm + kmkp) - std::pow(km.imag(), 2);
    r.bound_su11 = 0.25 * std::abs(two_k0);

    const complex a1 = expectation(state, ops.a1);
    const complex a2 = expectation(state, ops.a2);
    const complex a1sq = expectation(state, ops.a1.pow(2));
    const complex a2sq = expectation(state, ops.a2.pow(2));
    const double n1b = re(expectation(state, ops.bracket_n1)); // <a1dag a1>
    const double n2b = re(expectation(state, ops.bracket_n2));
    const double comm1 = re(expectation(state, ops.bracket_n1p1)) - n1b; // <[a1, a1dag]>
    const double comm2 = re(expectation(state, ops.bracket_n2p1)) - n2b;

    // per-mode quadratures: <(a^dag +- a)^2> assembled as above
    r.var_y1 = 0.25 * (2.0 * re(a1sq) + 2.0 * n1b + comm1) - std::pow(re(a1), 2);
    r.var_y2 = 0.25 * (-2.0 * re(a1sq) + 2.0 * n1b + comm1) - std::pow(a1.imag(), 2);
    r.var_z1 = 0.25 * (2.0 * re(a2sq) + 2.0 * n2b + comm2) - std::pow(re(a2), 2);
    r.var_z2 = 0.25 * (-2.0 * re(a2sq) + 2.0 * n2b + comm2) - std::pow(a2.imag(), 2);
    r.bound_mode1 = 0.25 * std::abs(comm1);
    r.bound_mode2 = 0.25 * std::abs(comm2);

    // two-mode quadratures with A = a1 + a2:
    //   <A^2> = <a1^2> + <a2^2> + 2<K->,
    //   <A^dag A> + <A A^dag> = 2<a1dag a1> + 2<a2dag a2> + <[a1,a1dag]>
    //                           + <[a2,a2dag]> + 4 Re <a1dag a2>
    const complex a1d_a2 = expectation(state, ops.a1_dag * ops.a2);
    const complex a_sq = a1sq + a2sq + 2.0 * km;
    const double herm = 2.0 * n1b + 2.0 * n2b + comm1 + comm2 + 4.0 * re(a1d_a2);
    const double mean_w1 = 2.0 * (re(a1) + re(a2)) / std::sqrt(8.0);
    const double mean_w2 = 2.0 * (a1.imag() + a2.imag()) / std::sqrt(8.0);
    r.var_w1 = (2.0 * re(a_sq) + herm) / 8.0 - mean_w1 * mean_w1;
    r.var_w2 = (-2.0 * re(a_sq) + herm) / 8.0 - mean_w2 * mean_w2;
    r.bound_two_mode = std::abs(comm1 + comm2) / 8.0;

    r.mean_k_minus = km;
    r.mean_k_minus_sq = km2;
    r.mean_a1 = a1;
    r.mean_a2 = a2;
    r.mean_a1_sq = a1sq;
    r.mean_a2_sq = a2sq;
    r.mean_a1d_a2 = a1d_a2;
    r.mean_k_plus_k_minus = kpkm;

    const SqueezingFlags f = squeezing_predicates(r);
    r.su11_squeezed = f.su11;
    r.mode1_squeezed = f.mode1;
    r.mode2_squeezed = f.mode2;
    r.two_mode_squeezed = f.two_mode;
    return r;
}

SqueezingFlags squeezing_predicates(const QuadratureReport& r) {
    // strict inequalities with a roundoff guard, so a state sitting exactly
    // at the uncertainty minimum is not reported as squeezed
    auto below = [](double var, double bound) {
        return var < bound - 1e-12 * std::max(1.0, std::abs(bound));
    };
    SqueezingFlags f;
    f.su11 = below(r.var_x1, r.bound_su11) || below(r.var_x2, r.bound_su11);
    f.mode1 = below(r.var_y1, r.bound_mode1) || below(r.var_y2, r.bound_mode1);
    f.mode2 = below(r.var_z1, r.bound_mode2) || below(r.var_z2, r.bound_mode2);
    f.two_mode = below(r.var_w1, r.bound_two_mode) || below(r.var_w2, r.bound_two_mode);
    return f;
}

double moment_k_plus_k_minus(int k, int qbar, int j, double x, const QParams& p) {
    if (!(x > 0.0)) throw std::domain_error("moment_k_plus_k_minus: x must be positive");
    const int jm1 = (j - 1 + k) % k;
    return x * S_of(k, qbar, jm1, x, p) / S_of(k, qbar, j, x, p);
}

double moment_k_plus2_k_minus2(int k, int qbar, int j, double x, const QParams& p) {
    if (!(x > 0.0)) throw std::domain_error("moment_k_plus2_k_minus2: x must be positive");
    const int jm2 = (j - 2 + 2 * k) % k;
    return x * x * S_of(k, qbar, jm2, x, p) / S_of(k, qbar, j, x, p);
}

G2Report g2_degrees(int k, int qbar, double x, const QParams& p) {
    if (k < 1) throw std::domain_error("g2_degrees: k must be >= 1");
    if (!(x > 0.0)) throw std::domain_error("g2_degrees: x must be positive");
    G2Report rep;
    rep.k = k;
    rep.qbar = qbar;
    rep.q = p.q_input;
    rep.x = x;

    std::vector<double> S(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        S[static_cast<size_t>(j)] = S_of(k, qbar, j, x, p);
        if (!(S[static_cast<size_t>(j)] > 0.0))
            throw convergence_error("g2_degrees: normalization series failed");
    }
    rep.product = 1.0;
    for (int j = 0; j < k; ++j) {
        const int jm1 = (j - 1 + k) % k;
        const int jm2 = (j - 2 + 2 * k) % k;
        const double g = S[static_cast<size_t>(jm2)] * S[static_cast<size_t>(j)] /
                         (S[static_cast<size_t>(jm1)] * S[static_cast<size_t>(jm1)]);
        rep.g_values.push_back(g);
        rep.antibunched.push_back(g < 1.0);
        rep.product *= g;
    }
    return rep;
}

ScanResult antibunching_scan(int k, int qbar, const QParams& p, const std::vector<double>& x_grid) {
    if (k < 1) throw std::domain_error("antibunching_scan: k must be >= 1");
    if (x_grid.empty()) throw std::domain_error("antibunching_scan: empty grid");
    for (size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0)) throw std::domain_error("antibunching_scan: grid must be positive");
        if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
            throw std::domain_error("antibunching_scan: grid must be strictly ascending");
    }

    ScanResult res;
    const int aq = std::abs(qbar);
    for (const double x : x_grid) {
        const G2Report g = g2_degrees(k, qbar, x, p);
        res.rows.push_back({x, g.g_values, g.antibunched});
        // small-x sufficient bound for the middle components
        for (int l = 2; l < k; ++l) {
            const double ratio = qmath::q_number(l - 1, p) * qmath::q_number(l - 1 + aq, p) /
                                 (qmath::q_number(l, p) * qmath::q_number(l + aq, p));
            if (std::pow(x, k) <= 1.0 - std::sqrt(ratio) && !(g.g_values[static_cast<size_t>(l)] < 1.0))
                res.bound_violations.emplace_back(x, l);
        }
    }

    // first downward crossing of g_0 through 1, refined by bisection in x
    for (size_t i = 1; i < res.rows.size(); ++i) {
        const double f_lo = res.rows[i - 1].g_values[0] - 1.0;
        const double f_hi = res.rows[i].g_values[0] - 1.0;
        if (f_lo > 0.0 && f_hi < 0.0) {
            double lo = res.rows[i - 1].x, hi = res.rows[i].x;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                if (g2_degrees(k, qbar, mid, p).g_values[0] - 1.0 > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            res.g0_crossing.found = true;
            res.g0_crossing.x_lo = res.rows[i - 1].x;
            res.g0_crossing.x_hi = res.rows[i].x;
            res.g0_crossing.x_star = 0.5 * (lo + hi);
            break;
        }
    }
    return res;
}

} // namespace nonclassical
} // namespace qccs
