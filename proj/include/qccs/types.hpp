#ifndef QCCS_TYPES_HPP
#define QCCS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace qccs {

using complex = std::complex<double>;

/// Thrown when a series or nested Jackson sum fails to reach its tolerance
/// within the configured term/node caps.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a requested truncation cannot hold the state it is asked to
/// host; carries an estimate of the cutoff that would suffice.
class truncation_error : public std::runtime_error {
public:
    truncation_error(const std::string& what, int required)
        : std::runtime_error(what), required_n_max(required) {}
    int required_n_max;
};

/// Deformation parameter bundle.
///
/// Any q > 0 is accepted; internally the base is normalized into (0, 1]
/// through the q <-> 1/q symmetry of the symmetric bracket, which leaves
/// every quantity in this library invariant.  q = 1 selects the undeformed
/// limit where [n] = n; the Jackson-calculus routines reject it.
struct QParams {
    double q = 0.9;        // normalized base, in (0, 1]
    double sqrt_q = 0.0;   // sqrt of the normalized base
    double tol = 1e-12;    // series / quadrature tolerance
    double q_input = 0.9;  // base as given by the caller

    QParams() : QParams(0.9, 1e-12) {}
    QParams(double q_in, double tolerance) {
        if (!(q_in > 0.0)) throw std::domain_error("QParams: q must be positive");
        if (!(tolerance > 0.0)) throw std::domain_error("QParams: tol must be positive");
        q_input = q_in;
        q = q_in > 1.0 ? 1.0 / q_in : q_in;
        sqrt_q = std::sqrt(q);
        tol = tolerance;
    }

    bool undeformed() const { return q == 1.0; }

    /// Params for the same deformation expressed in base sqrt(q); used by the
    /// radial integrals whose measure lives on the sqrt(q) lattice.
    QParams half_base() const { return QParams(sqrt_q, tol); }
};

/// A computed series sum together with a truncation-error estimate.
struct SeriesValue {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    int terms_used = 0;
    bool converged = true;
};

/// Same, for series with complex arguments (q-Bessel J on the imaginary axis
/// and friends).
struct ComplexSeriesValue {
    complex value{0.0, 0.0};
    double abs_err_estimate = 0.0;
    int terms_used = 0;
    bool converged = true;
};

} // namespace qccs

#endif
