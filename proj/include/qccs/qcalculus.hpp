#ifndef QCCS_QCALCULUS_HPP
#define QCCS_QCALCULUS_HPP

#include <functional>

#include "qccs/types.hpp"

namespace qccs {
namespace qcalculus {

/// A function on the positive half line, evaluated on geometric Jackson
/// nodes.  domain_hint names the scale where the integrand is concentrated;
/// the node lattice itself is fixed (see jackson_integral_halfline).
struct GridFunction {
    std::function<double(double)> evaluator;
    double domain_hint = 1.0;
};

/// Symmetric q-derivative (f(q xi) - f(xi/q)) / ((q - 1/q) xi).
/// Rejects xi = 0 and q = 1.
complex q_derivative(const std::function<complex(complex)>& f, complex xi, const QParams& p);
double q_derivative(const GridFunction& f, double xi, const QParams& p);

/// Bilateral Jackson integral on (0, inf) for base q in (0, 1):
///   (1/q - q) * sum_m q^(2m+1) f(q^(2m+1)),
/// nodes accumulated by ascending |2m+1| (positive exponent first), the node
/// count grown from 40 by doubling until both tails are below tolerance,
/// capped at 2^14 nodes.  This rule inverts the symmetric q-derivative on
/// monomials.
SeriesValue jackson_integral_halfline(const GridFunction& f, const QParams& p);

/// Relative error of the q-factorial moment identity
///   integral_0^inf d_sqrt(q) u  u^(2p+nu+1) K_nu(q, [2]_sq u)
///     = [nu+p]! [p]! / [2]_sq^2
/// with the left side evaluated through jackson_integral_halfline in base
/// sqrt(q) and the modified q-Bessel kernel of qmath.  Throws
/// convergence_error if either nested sum fails to settle.
double verify_moment_identity(int p_idx, int nu, const QParams& p);

} // namespace qcalculus
} // namespace qccs

#endif
