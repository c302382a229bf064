#include "qccs/states.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qccs/qmath.hpp"

namespace qccs {
namespace states {

namespace {

constexpr double kTailFloor = 1e-16;

complex int_pow(complex z, int n) {
    complex r(1.0, 0.0);
    if (n >= 0) {
        for (int i = 0; i < n; ++i) r *= z;
    } else {
        for (int i = 0; i < -n; ++i) r /= z;
    }
    return r;
}

void validate(const KccsParams& prm) {
    if (prm.k < 1) throw std::domain_error("kccs: k must be >= 1");
    if (prm.j < 0 || prm.j >= prm.k) throw std::domain_error("kccs: j must lie in [0, k-1]");
    if (prm.xi == complex(0.0, 0.0) && prm.j != 0)
        throw std::domain_error("kccs: xi = 0 admits only the j = 0 component");
}

// Per-term 1/sqrt([s]! [s+aq]!) magnitudes along s = kn+j, by ratio updates.
struct TermLadder {
    double inv_sqrt_fact; // current 1/sqrt([s]![s+aq]!)
    int s;
    int k, aq;
    const QParams* p;

    TermLadder(int k_, int aq_, int j_, const QParams& p_) : k(k_), aq(aq_), p(&p_) {
        s = j_;
        double logf = 0.0;
        for (int i = 1; i <= s; ++i) logf += qmath::log_q_number(i, *p);
        for (int i = 1; i <= s + aq; ++i) logf += qmath::log_q_number(i, *p);
        inv_sqrt_fact = std::exp(-0.5 * logf);
    }
    void advance() { // s -> s + k
        double logf = 0.0;
        for (int i = s + 1; i <= s + k; ++i) logf += qmath::log_q_number(i, *p);
        for (int i = s + aq + 1; i <= s + aq + k; ++i) logf += qmath::log_q_number(i, *p);
        inv_sqrt_fact *= std::exp(-0.5 * logf);
        s += k;
    }
};

} // namespace

ComplexSeriesValue norm_series_sum(int k, int qbar, int j, complex z, const QParams& p) {
    if (k < 1 || j < 0 || j >= k) throw std::domain_error("norm_series_sum: bad (k, j)");
    const int aq = std::abs(qbar);
    ComplexSeriesValue out;
    TermLadder lad(k, aq, j, p);
    complex zpow = int_pow(z, j);
    const complex zstep = int_pow(z, k);
    complex sum(0.0, 0.0);
    int small_run = 0;
    out.converged = false;
    for (int n = 0; n < 4000; ++n) {
        const complex term = zpow * (lad.inv_sqrt_fact * lad.inv_sqrt_fact);
        sum += term;
        ++out.terms_used;
        if (std::abs(term) < p.tol * std::max(1.0, std::abs(sum)) && n >= 2) {
            if (++small_run >= 3) { out.converged = true; break; }
        } else {
            small_run = 0;
        }
        zpow *= zstep;
        lad.advance();
    }
    out.value = sum;
    out.abs_err_estimate = p.tol * std::max(1.0, std::abs(sum));
    return out;
}

NormFactor normalization(int k, int qbar, int j, double x, const QParams& p) {
    if (x < 0.0) throw std::domain_error("normalization: x must be >= 0");
    if (x == 0.0 && j > 0)
        throw std::domain_error("normalization: degenerate at x = 0 for j > 0");
    const ComplexSeriesValue s = norm_series_sum(k, qbar, j, complex(x, 0.0), p);
    NormFactor nf;
    nf.x = x;
    nf.series.value = s.value.real();
    nf.series.abs_err_estimate = s.abs_err_estimate;
    nf.series.terms_used = s.terms_used;
    nf.series.converged = s.converged;
    if (!(nf.series.value > 0.0))
        throw std::domain_error("normalization: series sum must be positive");
    nf.value = 1.0 / std::sqrt(nf.series.value);
    return nf;
}

int auto_n_max(const KccsParams& prm) {
    validate(prm);
    const int aq = std::abs(prm.qbar);
    const double ax = std::abs(prm.xi);
    // log-domain term magnitudes: |xi|^s / sqrt([s]![s+aq]!)
    const double log_ax = ax > 0.0 ? std::log(ax) : -std::numeric_limits<double>::infinity();
    double log_fact = 0.0;
    for (int i = 1; i <= prm.j; ++i) log_fact += qmath::log_q_number(i, prm.p);
    for (int i = 1; i <= prm.j + aq; ++i) log_fact += qmath::log_q_number(i, prm.p);
    const double log_floor = std::log(kTailFloor);
    double log_mag = prm.j * log_ax - 0.5 * log_fact;
    double log_peak = log_mag;
    int s = prm.j;
    int n_last = 0;
    for (int n = 0; n < 4000; ++n) {
        n_last = n;
        for (int i = s + 1; i <= s + prm.k; ++i) log_fact += qmath::log_q_number(i, prm.p);
        for (int i = s + aq + 1; i <= s + aq + prm.k; ++i) log_fact += qmath::log_q_number(i, prm.p);
        s += prm.k;
        log_mag = s * log_ax - 0.5 * log_fact;
        log_peak = std::max(log_peak, log_mag);
        if (n >= 2 && log_mag < log_peak + log_floor) break;
    }
    const int needed = prm.k * n_last + prm.j + aq;
    return std::max(needed, prm.k + aq + 4);
}

TwoModeState build_kccs(const KccsParams& prm) {
    validate(prm);
    const int aq = std::abs(prm.qbar);
    const double x = std::norm(prm.xi);
    const NormFactor nf = normalization(prm.k, prm.qbar, prm.j, x, prm.p);

    const int want = auto_n_max(prm);
    int n_max = prm.n_max > 0 ? prm.n_max : want;
    const int min_needed = 2 * prm.k + prm.j + aq; // room for three series terms
    if (n_max < min_needed)
        throw truncation_error("build_kccs: truncation too small for the requested state", want);

    TwoModeState state;
    state.trunc = Truncation(n_max);
    TermLadder lad(prm.k, aq, prm.j, prm.p);
    complex xpow = int_pow(prm.xi, prm.j);
    const complex xstep = int_pow(prm.xi, prm.k);
    double norm2 = 0.0;
    for (int n = 0;; ++n) {
        const int s = prm.k * n + prm.j;
        const int m1 = prm.qbar >= 0 ? s + aq : s;
        const int m2 = prm.qbar >= 0 ? s : s + aq;
        if (m1 > n_max || m2 > n_max) break;
        const complex amp = nf.value * xpow * lad.inv_sqrt_fact;
        if (amp != complex(0.0, 0.0)) {
            state.amps.emplace_back(m1, m2, amp);
            norm2 += std::norm(amp);
        }
        xpow *= xstep;
        lad.advance();
    }
    if (state.amps.empty())
        throw truncation_error("build_kccs: no representable amplitude survives", want);
    state.norm_declared = std::sqrt(norm2);
    return state;
}

EigenReport verify_eigen_relations(const TwoModeState& state, const KccsParams& prm,
                                   const OperatorSet& ops) {
    if (ops.trunc.n_max != state.trunc.n_max)
        throw std::invalid_argument("verify_eigen_relations: operator truncation mismatch");
    EigenReport rep{};

    const auto psi = state.dense();
    const auto lowered = ops.k_minus.pow(prm.k).apply(psi);
    const complex lam = int_pow(prm.xi, prm.k);
    double acc = 0.0;
    for (size_t i = 0; i < psi.size(); ++i) acc += std::norm(lowered[i] - lam * psi[i]);
    rep.pair_power_residual = std::sqrt(acc);

    const auto charged = ops.charge.apply(psi);
    acc = 0.0;
    for (size_t i = 0; i < psi.size(); ++i)
        acc += std::norm(charged[i] - static_cast<double>(prm.qbar) * psi[i]);
    rep.charge_residual = std::sqrt(acc);

    // the sibling components can need a little more room than the given
    // state (their leading level grows with j); size the family jointly
    int fam_n_max = state.trunc.n_max;
    for (int jj = 0; jj < prm.k; ++jj) {
        KccsParams pj = prm;
        pj.j = jj;
        pj.n_max = 0;
        fam_n_max = std::max(fam_n_max, auto_n_max(pj));
    }
    std::vector<TwoModeState> comps;
    for (int jj = 0; jj < prm.k; ++jj) {
        KccsParams pj = prm;
        pj.j = jj;
        pj.n_max = fam_n_max;
        comps.push_back(build_kccs(pj));
    }
    double worst = 0.0;
    for (int ja = 0; ja < prm.k; ++ja)
        for (int jb = 0; jb < prm.k; ++jb) {
            const complex ov = fockspace::inner(comps[static_cast<size_t>(ja)], comps[static_cast<size_t>(jb)]);
            const double target = (ja == jb) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(ov - target));
        }
    rep.orthonormality_residual = worst;
    return rep;
}

OverlapResult overlap_general(const TwoModeState& a, const KccsParams& pa,
                              const TwoModeState& b, const KccsParams& pb) {
    if (pa.k != pb.k) throw std::invalid_argument("overlap_general: component counts differ");
    if (a.trunc.n_max != b.trunc.n_max)
        throw std::invalid_argument("overlap_general: truncation mismatch");
    OverlapResult res;
    res.direct = fockspace::inner(a, b);
    if (pa.qbar != pb.qbar || pa.j != pb.j) {
        res.formula = complex(0.0, 0.0);
        return res;
    }
    const NormFactor na = normalization(pa.k, pa.qbar, pa.j, std::norm(pa.xi), pa.p);
    const NormFactor nb = normalization(pb.k, pb.qbar, pb.j, std::norm(pb.xi), pb.p);
    const ComplexSeriesValue cross =
        norm_series_sum(pa.k, pa.qbar, pa.j, std::conj(pa.xi) * pb.xi, pa.p);
    res.formula = na.value * nb.value * cross.value;
    return res;
}

std::pair<double, double> mean_number_relation(const TwoModeState& state) {
    double e1 = 0.0, e2 = 0.0;
    for (const auto& [m, n, a] : state.amps) {
        const double w = std::norm(a);
        e1 += w * m;
        e2 += w * n;
    }
    return {e1, e2};
}

ExpansionReport expand_charge_coherent(complex xi, int qbar, int k, const QParams& p) {
    KccsParams whole;
    whole.xi = xi;
    whole.qbar = qbar;
    whole.k = 1;
    whole.j = 0;
    whole.p = p;
    int n_max = auto_n_max(whole);
    const double x0 = std::norm(xi);
    for (int j = 0; j < k; ++j) {
        if (x0 == 0.0 && j > 0) continue;
        KccsParams cj = whole;
        cj.k = k;
        cj.j = j;
        n_max = std::max(n_max, auto_n_max(cj));
    }
    whole.n_max = n_max;
    const TwoModeState target = build_kccs(whole);

    const double x = std::norm(xi);
    const NormFactor nq = normalization(1, qbar, 0, x, p);

    std::vector<complex> recon(static_cast<size_t>(target.trunc.dim()), complex(0.0, 0.0));
    double sum_inv_sq = 0.0;
    for (int j = 0; j < k; ++j) {
        KccsParams cj;
        cj.xi = xi;
        cj.qbar = qbar;
        cj.k = k;
        cj.j = j;
        cj.p = p;
        cj.n_max = n_max;
        if (x == 0.0 && j > 0) continue; // vanishing component at xi = 0
        const TwoModeState comp = build_kccs(cj);
        const NormFactor nj = normalization(k, qbar, j, x, p);
        sum_inv_sq += nj.series.value; // N^-2 = S
        const complex w = nq.value / nj.value;
        for (const auto& [m, n, a] : comp.amps)
            recon[static_cast<size_t>(target.trunc.index(m, n))] += w * a;
    }
    const auto tgt = target.dense();
    double acc = 0.0;
    for (size_t i = 0; i < tgt.size(); ++i) acc += std::norm(recon[i] - tgt[i]);

    ExpansionReport rep;
    rep.reconstruction_residual = std::sqrt(acc);
    rep.sum_rule_residual = std::abs(nq.series.value - sum_inv_sq);
    return rep;
}

double SingleModeState::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

// sum_n x^(kn+j)/[kn+j]!, the single-mode normalization series
double single_mode_series(double x, int k, int j, const QParams& p) {
    double sum = 0.0;
    double logf = 0.0;
    for (int i = 1; i <= j; ++i) logf += qmath::log_q_number(i, p);
    double term = std::pow(x, j) * std::exp(-logf);
    int s = j;
    for (int n = 0; n < 4000; ++n) {
        sum += term;
        double lg = 0.0;
        for (int i = s + 1; i <= s + k; ++i) lg += qmath::log_q_number(i, p);
        term *= std::pow(x, k) * std::exp(-lg);
        s += k;
        if (n >= 2 && term < p.tol * std::max(1.0, sum)) break;
    }
    return sum;
}

} // namespace

SingleModeState single_mode_kcs(complex xi, int k, int j, const QParams& p, int n_max) {
    if (k < 1 || j < 0 || j >= k) throw std::domain_error("single_mode_kcs: bad (k, j)");
    if (xi == complex(0.0, 0.0) && j != 0)
        throw std::domain_error("single_mode_kcs: xi = 0 admits only j = 0");
    const double x = std::norm(xi);
    const double N = 1.0 / std::sqrt(single_mode_series(x, k, j, p));

    KccsParams sizing;
    sizing.xi = xi;
    sizing.qbar = 0;
    sizing.k = k;
    sizing.j = j;
    sizing.p = p;
    const int want = auto_n_max(sizing);
    SingleModeState out;
    out.n_max = n_max > 0 ? n_max : want;
    out.amps.assign(static_cast<size_t>(out.n_max) + 1, complex(0.0, 0.0));

    double logf = 0.0;
    for (int i = 1; i <= j; ++i) logf += qmath::log_q_number(i, p);
    double inv_sqrt_fact = std::exp(-0.5 * logf);
    complex xpow = int_pow(xi, j);
    const complex xstep = int_pow(xi, k);
    for (int s = j; s <= out.n_max; s += k) {
        out.amps[static_cast<size_t>(s)] = N * xpow * inv_sqrt_fact;
        double lg = 0.0;
        for (int i = s + 1; i <= s + k; ++i) lg += qmath::log_q_number(i, p);
        inv_sqrt_fact *= std::exp(-0.5 * lg);
        xpow *= xstep;
    }
    return out;
}

TwoModeState generate_by_averaging(complex xi1, complex xi2, int qbar, int k, int j,
                                   int n_angles, const QParams& p, int n_max) {
    const complex xi = xi1 * xi2;
    if (xi == complex(0.0, 0.0))
        throw std::domain_error("generate_by_averaging: xi1 * xi2 must be nonzero");
    KccsParams target;
    target.xi = xi;
    target.qbar = qbar;
    target.k = k;
    target.j = j;
    target.p = p;
    const int nm = n_max > 0 ? n_max : auto_n_max(target);
    const int min_angles = 4 * (nm + 1);
    if (n_angles == 0) n_angles = min_angles;
    if (n_angles < min_angles)
        throw std::domain_error("generate_by_averaging: angular grid too coarse for this truncation");

    const int aq = std::abs(qbar);
    const double x1 = std::norm(xi1);
    const double x2 = std::norm(xi2);

    // single-mode coherent factor, including its own normalization
    const SeriesValue eq1 = qmath::q_exponential(x1, p);
    std::vector<complex> coh(static_cast<size_t>(nm) + 1);
    {
        const double N = 1.0 / std::sqrt(eq1.value);
        complex xpow(1.0, 0.0);
        double inv_sqrt_fact = 1.0;
        for (int m = 0; m <= nm; ++m) {
            coh[static_cast<size_t>(m)] = N * xpow * inv_sqrt_fact;
            xpow *= xi1;
            inv_sqrt_fact /= std::sqrt(qmath::q_number(m + 1, p));
        }
    }
    const SingleModeState kcs = single_mode_kcs(xi2, k, j, p, nm);

    // closed-form prefactor N^j_{k qbar}(|xi|^2) e_q^(1/2)(x1) [N_k^j(x2)]^-1 xi1^(-|qbar|);
    // the sign branches share xi1^(-|qbar|) since +qbar = -|qbar| on the negative side
    const NormFactor nkq = normalization(k, qbar, j, std::norm(xi), p);
    const double nkx2 = 1.0 / std::sqrt(single_mode_series(x2, k, j, p));
    const complex pref = nkq.value * std::sqrt(eq1.value) * (1.0 / nkx2) * int_pow(xi1, -aq);

    constexpr double kPi = 3.14159265358979323846;
    const int side = nm + 1;
    std::vector<complex> acc(static_cast<size_t>(side) * static_cast<size_t>(side), complex(0.0, 0.0));
    const double dalpha = 2.0 * kPi / n_angles;
    for (int sidx = 0; sidx < n_angles; ++sidx) {
        const double alpha = -kPi + dalpha * sidx;
        const complex ea(std::cos(alpha), std::sin(alpha)); // e^{i alpha}
        const complex weight = std::polar(1.0, aq * alpha); // e^{+i qbar a} resp. e^{-i qbar a}
        // per-mode phase ladders
        std::vector<complex> ph_minus(static_cast<size_t>(side)), ph_plus(static_cast<size_t>(side));
        complex pm(1.0, 0.0), pp(1.0, 0.0);
        for (int i = 0; i < side; ++i) {
            ph_minus[static_cast<size_t>(i)] = pm;
            ph_plus[static_cast<size_t>(i)] = pp;
            pm /= ea;
            pp *= ea;
        }
        for (int m = 0; m < side; ++m) {
            for (int n = 0; n < side; ++n) {
                complex f;
                if (qbar >= 0) {
                    // mode 1 coherent(e^{-ia} xi1), mode 2 k-component(e^{+ia} xi2)
                    f = coh[static_cast<size_t>(m)] * ph_minus[static_cast<size_t>(m)] *
                        kcs.amps[static_cast<size_t>(n)] * ph_plus[static_cast<size_t>(n)];
                } else {
                    // mode 1 k-component(e^{+ia} xi2), mode 2 coherent(e^{-ia} xi1)
                    f = kcs.amps[static_cast<size_t>(m)] * ph_plus[static_cast<size_t>(m)] *
                        coh[static_cast<size_t>(n)] * ph_minus[static_cast<size_t>(n)];
                }
                acc[static_cast<size_t>(m) * static_cast<size_t>(side) + static_cast<size_t>(n)] +=
                    weight * f;
            }
        }
    }

    TwoModeState out;
    out.trunc = Truncation(nm);
    double peak = 0.0;
    for (const auto& v : acc) peak = std::max(peak, std::abs(v));
    const double floor = 1e-13 * peak / n_angles;
    double norm2 = 0.0;
    for (int m = 0; m < side; ++m)
        for (int n = 0; n < side; ++n) {
            complex v = pref * acc[static_cast<size_t>(m) * static_cast<size_t>(side) + static_cast<size_t>(n)] /
                        static_cast<double>(n_angles);
            if (std::abs(v) > floor) {
                out.amps.emplace_back(m, n, v);
                norm2 += std::norm(v);
            }
        }
    out.norm_declared = std::sqrt(norm2);
    return out;
}

void write_state(const TwoModeState& state, const KccsParams& prm, std::ostream& os) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d %d %d %.17g %.17g %.17g %d\n", prm.k, prm.qbar, prm.j,
                  prm.xi.real(), prm.xi.imag(), prm.p.q_input, state.trunc.n_max);
    os << buf;
    for (const auto& [m, n, a] : state.amps) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", m, n, a.real(), a.imag());
        os << buf;
    }
}

std::pair<TwoModeState, KccsParams> read_state(std::istream& is) {
    KccsParams prm;
    double xr, xi_im, q;
    int n_max;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_state: empty input");
    {
        std::istringstream h(line);
        if (!(h >> prm.k >> prm.qbar >> prm.j >> xr >> xi_im >> q >> n_max))
            throw std::runtime_error("read_state: malformed header");
    }
    prm.xi = complex(xr, xi_im);
    prm.p = QParams(q, prm.p.tol);
    prm.n_max = n_max;
    TwoModeState st;
    st.trunc = Truncation(n_max);
    double norm2 = 0.0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream r(line);
        int m, n;
        double re, im;
        if (!(r >> m >> n >> re >> im)) throw std::runtime_error("read_state: malformed row");
        if (!st.trunc.contains(m, n)) throw std::runtime_error("read_state: index outside truncation");
        st.amps.emplace_back(m, n, complex(re, im));
        norm2 += re * re + im * im;
    }
    std::sort(st.amps.begin(), st.amps.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                : std::get<1>(a) < std::get<1>(b);
    });
    st.norm_declared = std::sqrt(norm2);
    return {st, prm};
}

} // namespace states
} // namespace qccs
