#ifndef QCCS_COMPLETENESS_HPP
#define QCCS_COMPLETENESS_HPP

#include <vector>

#include "qccs/types.hpp"

namespace qccs {
namespace completeness {

/// Radial weight density of the charge-sector resolution of unity:
///   phi(x) = ([2]_sq^2 / 2) * Ilike_|q|(sqrt(q) [2]_sq x) * K_|q|(q, [2]_sq x),
/// positive for x > 0.
double measure_phi(int qbar, double x, const QParams& p);

/// Diagonal weights of the sector resolution of unity.  For each n the
/// weight
///   w_n = [2]_sq^2 / ([n]! [n+|q|]!) * integral_0^inf d_sqrt(q) r
///           r^(2n+|q|+1) K_|q|(q, [2]_sq r)
/// must equal 1; the angular integration collapses analytically through
/// phase orthogonality, leaving only these radial moments.
struct SectorWeights {
    int qbar;
    std::vector<int> n_values;
    std::vector<double> weights;
    int max_n;
};
SectorWeights sector_resolution_weights(int qbar, const std::vector<int>& n_list, const QParams& p);

/// Same weights assembled through the k-component decomposition: the level
/// s is reached by the unique pair (j, n) with s = k n + j, so the result
/// must be k-independent.
SectorWeights sector_weights_via_components(int qbar, int k, const std::vector<int>& n_list,
                                            const QParams& p);

/// Exact combinatorial check that the sector supports tile the truncated
/// lattice once: sectors q >= 0 cover {(n+q, n)}, q <= -1 cover {(n, n-q)}.
struct CoverageReport {
    bool exact = true;
    int covered_once = 0;
    std::vector<std::pair<int, int>> missed;
    std::vector<std::pair<int, int>> multiple;
};
CoverageReport sector_union_check(int qbar_lo, int qbar_hi, int n_max);

} // namespace completeness
} // namespace qccs

#endif
