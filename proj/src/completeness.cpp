#include "qccs/completeness.hpp"

#include <cmath>
#include <map>

#include "qccs/qcalculus.hpp"
#include "qccs/qmath.hpp"

namespace qccs {
namespace completeness {

double measure_phi(int qbar, double x, const QParams& p) {
    if (!(x > 0.0)) throw std::domain_error("measure_phi: x must be positive");
    const int aq = std::abs(qbar);
    const double c2 = p.sqrt_q + 1.0 / p.sqrt_q;
    const SeriesValue ilike = qmath::q_bessel_i_like(aq, p.sqrt_q * c2 * x, p);
    const SeriesValue kv = qmath::q_bessel_k(aq, c2 * x, p);
    if (!ilike.converged || !kv.converged)
        throw convergence_error("measure_phi: factor series did not settle");
    return 0.5 * c2 * c2 * ilike.value * kv.value;
}

namespace {

double radial_weight(int n, int aq, const QParams& p) {
    const double c2 = p.sqrt_q + 1.0 / p.sqrt_q;
    qcalculus::GridFunction f;
    f.evaluator = [&](double r) {
        if (!std::isfinite(r) || r <= 0.0) return 0.0;
        const SeriesValue kv = qmath::q_bessel_k(aq, c2 * r, p);
        return std::pow(r, 2 * n + aq + 1) * kv.value;
    };
    const SeriesValue integral = qcalculus::jackson_integral_halfline(f, p.half_base());
    if (!integral.converged)
        throw convergence_error("sector weights: radial moment did not settle");
    const double logf = qmath::log_q_factorial(n, p) + qmath::log_q_factorial(n + aq, p);
    return c2 * c2 * integral.value * std::exp(-logf);
}

} // namespace

SectorWeights sector_resolution_weights(int qbar, const std::vector<int>& n_list, const QParams& p) {
    SectorWeights out;
    out.qbar = qbar;
    out.max_n = 0;
    const int aq = std::abs(qbar);
    for (int n : n_list) {
        if (n < 0) throw std::domain_error("sector_resolution_weights: n must be >= 0");
        out.n_values.push_back(n);
        out.weights.push_back(radial_weight(n, aq, p));
        out.max_n = std::max(out.max_n, n);
    }
    return out;
}

SectorWeights sector_weights_via_components(int qbar, int k, const std::vector<int>& n_list,
                                            const QParams& p) {
    if (k < 1) throw std::domain_error("sector_weights_via_components: k must be >= 1");
    SectorWeights out;
    out.qbar = qbar;
    out.max_n = 0;
    const int aq = std::abs(qbar);
    for (int s : n_list) {
        if (s < 0) throw std::domain_error("sector_weights_via_components: n must be >= 0");
        // the level s is contributed by exactly one component pair (j, n)
        const int j = s % k;
        const int n = s / k;
        if (k * n + j != s) throw std::logic_error("sector_weights_via_components: decomposition");
        out.n_values.push_back(s);
        out.weights.push_back(radial_weight(k * n + j, aq, p));
        out.max_n = std::max(out.max_n, s);
    }
    return out;
}

CoverageReport sector_union_check(int qbar_lo, int qbar_hi, int n_max) {
    if (qbar_lo > qbar_hi) return CoverageReport{};
    CoverageReport rep;
    std::map<std::pair<int, int>, int> counts;
    for (int q = qbar_lo; q <= qbar_hi; ++q) {
        if (q >= 0) {
            for (int n = 0; n + q <= n_max; ++n) ++counts[{n + q, n}];
        } else {
            for (int n = 0; n - q <= n_max; ++n) ++counts[{n, n - q}];
        }
    }
    for (int m = 0; m <= n_max; ++m)
        for (int n = 0; n <= n_max; ++n) {
            const int d = m - n;
            if (d < qbar_lo || d > qbar_hi) continue;
            const auto it = counts.find({m, n});
            const int c = it == counts.end() ? 0 : it->second;
            if (c == 0) {
                rep.missed.emplace_back(m, n);
                rep.exact = false;
            } else if (c > 1) {
                rep.multiple.emplace_back(m, n);
                rep.exact = false;
            } else {
                ++rep.covered_once;
            }
        }
    return rep;
}

} // namespace completeness
} // namespace qccs
