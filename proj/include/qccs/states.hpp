#ifndef QCCS_STATES_HPP
#define QCCS_STATES_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "qccs/fockspace.hpp"
#include "qccs/types.hpp"

namespace qccs {
namespace states {

using fockspace::OperatorSet;
using fockspace::Truncation;
using fockspace::TwoModeState;

/// Parameters of one component of the k-component charge coherent family:
/// eigen-parameter xi, charge number qbar (any sign), component count k and
/// component index j in [0, k-1].  n_max = 0 requests automatic truncation.
struct KccsParams {
    complex xi{0.0, 0.0};
    int qbar = 0;
    int k = 1;
    int j = 0;
    QParams p;
    int n_max = 0;
};

/// Normalization factor N^j_{k qbar}(x) = S^(-1/2) where
///   S = sum_n x^(kn+j) / ([kn+j]! [kn+j+|qbar|]!).
struct NormFactor {
    double value = 1.0;  // N
    double x = 0.0;      // |xi|^2
    SeriesValue series;  // S = N^-2
};

/// The series S above at a complex argument (used by the overlap formula).
ComplexSeriesValue norm_series_sum(int k, int qbar, int j, complex z, const QParams& p);

NormFactor normalization(int k, int qbar, int j, double x, const QParams& p);

/// Build the normalized component state.  Amplitudes sit at
/// |kn+j+qbar, kn+j> for qbar >= 0 and |kn+j, kn+j-qbar> for qbar <= 0.
TwoModeState build_kccs(const KccsParams& params);

/// Residuals of the defining relations: || (a1 a2)^k psi - xi^k psi ||,
/// || Q psi - qbar psi ||, and the worst orthonormality deviation over all
/// component pairs at the same (xi, qbar, k).
struct EigenReport {
    double pair_power_residual;
    double charge_residual;
    double orthonormality_residual;
};
EigenReport verify_eigen_relations(const TwoModeState& state, const KccsParams& params,
                                   const OperatorSet& ops);

/// Overlap of two components computed two ways: the direct truncated
/// amplitude inner product, and the closed form
///   N(|xi|^2) N(|xi'|^2) S(conj(xi) xi') delta_qq' delta_jj'.
struct OverlapResult {
    complex direct;
    complex formula;
};
OverlapResult overlap_general(const TwoModeState& a, const KccsParams& pa,
                              const TwoModeState& b, const KccsParams& pb);

/// (<N1>, <N2>); their difference is the charge number.
std::pair<double, double> mean_number_relation(const TwoModeState& state);

/// Decompose the k=1 charge coherent state over the k components and report
/// the amplitude-wise reconstruction residual together with the sum rule
/// deviation |N^-2 - sum_j (N^j)^-2|.
struct ExpansionReport {
    double reconstruction_residual;
    double sum_rule_residual;
};
ExpansionReport expand_charge_coherent(complex xi, int qbar, int k, const QParams& p);

/// Single-mode k-component state: amplitudes N_k^j xi^(kn+j)/sqrt([kn+j]!)
/// on Fock levels kn+j.
struct SingleModeState {
    std::vector<complex> amps; // dense over 0..n_max
    int n_max = 0;
    double norm() const;
};
SingleModeState single_mode_kcs(complex xi, int k, int j, const QParams& p, int n_max = 0);

/// U(1)-averaged generation: project the product of a single-mode coherent
/// state (parameter xi1) and a single-mode k-component state (parameter xi2)
/// onto the charge-qbar sector with a uniform n_angles-point phase average,
/// applying the closed-form prefactors.  Equals build_kccs(xi1*xi2, ...) up
/// to angular-quadrature roundoff.  n_angles = 0 selects 4*(n_max+1).
TwoModeState generate_by_averaging(complex xi1, complex xi2, int qbar, int k, int j,
                                   int n_angles, const QParams& p, int n_max = 0);

/// Text serialization: header "k qbar j xi_re xi_im q n_max", then one
/// "m n re im" row per stored amplitude, full round-trip precision.
void write_state(const TwoModeState& state, const KccsParams& params, std::ostream& os);
std::pair<TwoModeState, KccsParams> read_state(std::istream& is);

/// Smallest per-mode cutoff that keeps every series term down to the
/// relative floor 1e-16, never below k + |qbar| + 4.
int auto_n_max(const KccsParams& params);

} // namespace states
} // namespace qccs

#endif
