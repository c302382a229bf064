#ifndef QCCS_DALGEBRA_HPP
#define QCCS_DALGEBRA_HPP

#include <string>
#include <vector>

#include "qccs/fockspace.hpp"
#include "qccs/states.hpp"
#include "qccs/types.hpp"

namespace qccs {
namespace dalgebra {

using fockspace::NamedResidual;
using fockspace::OperatorSet;
using fockspace::Truncation;

/// k x k cyclic 0/1 matrices: M carries ones on the subdiagonal plus the
/// top-right corner, N = M^T = M^-1 on the superdiagonal plus bottom-left.
/// Acting on component columns, M rotates j -> j-1 (mod k) and N the other way.
struct CyclicPair {
    std::vector<std::vector<int>> m_matrix;
    std::vector<std::vector<int>> n_matrix;
};
CyclicPair cyclic_matrices(int k);

/// Residuals of the six-row differential action table for the ladder and
/// number operators acting on the column of unnormalized components.
/// Each row compares the Fock-space operator applied to the evaluated
/// series against the closed differential form acting on the xi-dependence
/// (exact monomial rules on the truncated power series).  The applicable
/// column is picked by the sign of the charge; at charge zero each ladder
/// row is checked against the column whose target charge matches the stored
/// branch, and the two (coinciding) number-operator forms are both checked.
std::vector<NamedResidual> verify_action_table(complex xi, int qbar, int k, const QParams& p);

/// Residuals of the differential realization of the su_q(1,1) generators on
/// the component column: K- = xi M, K+ = xi^-|qbar| D_q xi^(|qbar|+1) D_q N,
/// K0 = (2 xi d/dxi + |qbar| + 1)/2, plus the K-^k cycling property and the
/// bra/ket adjoint consistency of the generator matrix elements.
std::vector<NamedResidual> verify_su11_dalgebra(complex xi, int qbar, int k, const QParams& p);

/// Orbit of the component index under successive pair-annihilation maps,
/// starting from component 0: 0 -> k-1 -> k-2 -> ... -> 0.
std::vector<int> rotation_orbit(int k);

} // namespace dalgebra
} // namespace qccs

#endif
