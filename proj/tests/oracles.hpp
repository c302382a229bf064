// Test-side oracles, independent of the library implementation: long double
// brute-force series, classical (undeformed) references, and a standalone
// reimplementation of the decaying-weight recurrence.  Used to freeze and
// cross-check expected values; nothing here may call into qccs_core.
#ifndef QCCS_TEST_ORACLES_HPP
#define QCCS_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace oracle {

inline long double qnum(int n, long double q) {
    if (q == 1.0L) return n;
    return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0L / q);
}

inline long double qfact(int n, long double q) {
    long double r = 1.0L;
    for (int i = 1; i <= n; ++i) r *= qnum(i, q);
    return r;
}

// raw q-exponential series, no cutoff
inline long double eq_series(long double x, long double q, int terms = 2000) {
    long double sum = 0.0L, term = 1.0L;
    for (int n = 0; n < terms; ++n) {
        sum += term;
        term *= x / qnum(n + 1, q);
        if (std::fabs(term) < 1e-25L * std::max(1.0L, std::fabs(sum)) && n > 8) {
            sum += term;
            break;
        }
    }
    return sum;
}

// Largest zero by a dense bracketing scan plus bisection.  Long double
// carries ~19 digits, which resolves the cancellation comfortably for
// q <= 0.8; larger bases need more working precision than this oracle has.
inline long double largest_zero(long double q) {
    long double prev_t = 1e-6L, prev_f = eq_series(-prev_t, q);
    long double t = 0.05L;
    while (t < 1e9L) {
        const long double f = eq_series(-t, q);
        if ((f < 0) != (prev_f < 0)) break;
        prev_t = t;
        prev_f = f;
        t *= 1.005L;
    }
    long double lo = prev_t, hi = t, flo = eq_series(-lo, q);
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double fm = eq_series(-mid, q);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

// decaying solution of f(qt) - f(t/q) = -(q - 1/q) t f(t) on t = anchor q^m,
// normalized to 1 at small t; fixed deep ranges, no adaptivity
class DecayChain {
public:
    DecayChain(long double anchor, long double q, int m_lo, int m_hi)
        : anchor_(anchor), m_lo_(m_lo) {
        const int n = m_hi - m_lo + 1;
        vals_.assign(n, 0.0L);
        vals_[1] = 1e-300L;
        for (int i = 1; i + 1 < n; ++i) {
            const long double t = anchor * std::pow(q, m_lo + i);
            vals_[i + 1] = vals_[i - 1] - (q - 1.0L / q) * t * vals_[i];
            if (vals_[i + 1] > 1e4000L)
                for (int k = 0; k <= i + 1; ++k) vals_[k] *= 1e-4000L;
        }
        const long double lim = 0.5L * (vals_[n - 1] + vals_[n - 2]);
        for (auto& v : vals_) v /= lim;
    }
    long double value(int m) const {
        const long i = static_cast<long>(m) - m_lo_;
        if (i < 0) return 0.0L;
        if (i >= static_cast<long>(vals_.size())) return 1.0L;
        return vals_[static_cast<size_t>(i)];
    }

private:
    long double anchor_;
    int m_lo_;
    std::vector<long double> vals_;
};

// modified q-Bessel kernel over the decaying weight, bilateral Jackson sum
inline long double q_bessel_k(int nu, long double x, long double q, int M = 240) {
    const long double sq = std::sqrt(q);
    const long double c = sq + 1.0L / sq;
    DecayChain first(1.0L, q, -2 * M - 4, 2 * M + 4);
    DecayChain second(x * x / (c * c), q, -2 * M - 4, 2 * M + 4);
    long double sum = 0.0L;
    for (int m = -M; m <= M; ++m) {
        const int e = 2 * m + 1;
        const long double f1 = first.value(e);
        if (f1 == 0.0L) continue;
        const long double f2 = second.value(-e);
        if (f2 == 0.0L) continue;
        sum += std::pow(q, -static_cast<long double>(e) * nu) * f1 * f2;
    }
    return (1.0L / c) * std::pow(x / c, nu) * (1.0L / q - q) * sum;
}

// ---- classical (undeformed) references ----------------------------------

inline long double factorial(int n) {
    long double r = 1.0L;
    for (int i = 1; i <= n; ++i) r *= i;
    return r;
}

// classical normalization series sum x^(kn+j)/((kn+j)! (kn+j+aq)!)
inline long double classical_S(int k, int aq, int j, long double x, int terms = 400) {
    long double sum = 0.0L;
    for (int n = 0; n < terms; ++n) {
        const int s = k * n + j;
        const long double t =
            std::pow(x, s) * std::exp(-std::lgamma(static_cast<long double>(s) + 1.0L) -
                                      std::lgamma(static_cast<long double>(s + aq) + 1.0L));
        sum += t;
        if (t < 1e-28L * sum && n > 3) break;
    }
    return sum;
}

// classical amplitudes of the k-component charge coherent state (j component)
inline std::map<std::pair<int, int>, std::complex<long double>> classical_kccs(
    std::complex<long double> xi, int qbar, int k, int j, int n_terms = 80) {
    const int aq = qbar < 0 ? -qbar : qbar;
    const long double x = std::norm(xi);
    const long double N = 1.0L / std::sqrt(classical_S(k, aq, j, x));
    std::map<std::pair<int, int>, std::complex<long double>> amps;
    std::complex<long double> xpow = std::pow(xi, j);
    for (int n = 0; n < n_terms; ++n) {
        const int s = k * n + j;
        const long double inv =
            std::exp(-0.5L * (std::lgamma(static_cast<long double>(s) + 1.0L) +
                              std::lgamma(static_cast<long double>(s + aq) + 1.0L)));
        const int m1 = qbar >= 0 ? s + aq : s;
        const int m2 = qbar >= 0 ? s : s + aq;
        amps[{m1, m2}] = N * xpow * inv;
        for (int i = 0; i < k; ++i) xpow *= xi;
    }
    return amps;
}

// classical g2 degrees from the same ratio structure
inline std::vector<long double> classical_g2(int k, int qbar, long double x) {
    const int aq = qbar < 0 ? -qbar : qbar;
    std::vector<long double> S(k);
    for (int j = 0; j < k; ++j) S[j] = classical_S(k, aq, j, x);
    std::vector<long double> g(k);
    for (int j = 0; j < k; ++j) {
        const int jm1 = (j - 1 + k) % k;
        const int jm2 = (j - 2 + 2 * k) % k;
        g[j] = S[jm2] * S[j] / (S[jm1] * S[jm1]);
    }
    return g;
}

// classical modified Bessel I0 by series
inline long double bessel_i0(long double z) {
    long double sum = 0.0L, term = 1.0L;
    for (int n = 0; n < 200; ++n) {
        sum += term;
        term *= (z * z / 4.0L) / ((n + 1.0L) * (n + 1.0L));
        if (term < 1e-25L * sum) break;
    }
    return sum;
}

} // namespace oracle

#endif
