#ifndef QCCS_NONCLASSICAL_HPP
#define QCCS_NONCLASSICAL_HPP

#include <vector>

#include "qccs/fockspace.hpp"
#include "qccs/types.hpp"

namespace qccs {
namespace nonclassical {

using fockspace::OperatorSet;
using fockspace::TwoModeState;

/// Quadrature variances and squeezing bounds, all computed from operator
/// moments of the given state.
///
///   X_1 = (K+ + K-)/2,  X_2 = i(K+ - K-)/2           pair quadratures
///   Y_i, Z_i                                          per-mode quadratures
///   W_i = (Y_i + Z_i)/sqrt(2)                         two-mode quadratures
///
/// bound_su11 = |<[2K0]>|/4, bound_mode_i = |<[a_i, a_i^dag]>|/4,
/// bound_two_mode = (|<[a1,a1d]> + <[a2,a2d]>|)/8.  A quadrature is squeezed
/// when its variance falls strictly below the matching bound.
struct QuadratureReport {
    double var_x1, var_x2, bound_su11;
    double var_y1, var_y2, bound_mode1;
    double var_z1, var_z2, bound_mode2;
    double var_w1, var_w2, bound_two_mode;
    bool su11_squeezed, mode1_squeezed, mode2_squeezed, two_mode_squeezed;
    // moments the variance formulas consume; kept for cross-checks
    complex mean_k_minus, mean_k_minus_sq;
    complex mean_a1, mean_a2, mean_a1_sq, mean_a2_sq, mean_a1d_a2;
    double mean_k_plus_k_minus;
};

QuadratureReport quadrature_report(const TwoModeState& state, const OperatorSet& ops);

/// Squeezing flags from the strict inequalities of the report's bounds.
struct SqueezingFlags {
    bool su11, mode1, mode2, two_mode;
};
SqueezingFlags squeezing_predicates(const QuadratureReport& report);

/// <K+ K-> of component j from normalization-series ratios:
///   x * S_{(j-1) mod k}(x) / S_j(x).
double moment_k_plus_k_minus(int k, int qbar, int j, double x, const QParams& p);

/// <K+^2 K-^2> of component j from series ratios: x^2 S_{(j-2) mod k}/S_j.
double moment_k_plus2_k_minus2(int k, int qbar, int j, double x, const QParams& p);

/// Two-mode q-correlation degrees of all components at x = |xi|^2:
///   g_j = S_{(j-2) mod k} S_j / S_{(j-1) mod k}^2,
/// equal to <K+^2 K-^2>/<K+ K->^2; their product over j is 1 by cyclicity.
struct G2Report {
    int k, qbar;
    double q, x;
    std::vector<double> g_values;
    double product;
    std::vector<bool> antibunched; // g_j < 1
};
G2Report g2_degrees(int k, int qbar, double x, const QParams& p);

/// One grid point of an antibunching scan.
struct ScanRow {
    double x;
    std::vector<double> g_values;
    std::vector<bool> antibunched;
};

/// Location of the first downward crossing of g_0 through 1, refined by
/// bisection between the bracketing grid points.
struct CrossingInfo {
    bool found = false;
    double x_lo = 0.0, x_hi = 0.0, x_star = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    CrossingInfo g0_crossing;
    /// Grid points where the small-x sufficient bound
    ///   x^k <= 1 - sqrt([l-1][l-1+|q|] / ([l][l+|q|]))
    /// promised g_l < 1 but the computed degree violated it (empty when the
    /// bound holds, as it must).
    std::vector<std::pair<double, int>> bound_violations;
};

ScanResult antibunching_scan(int k, int qbar, const QParams& p, const std::vector<double>& x_grid);

} // namespace nonclassical
} // namespace qccs

#endif
