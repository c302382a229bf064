#ifndef QCCS_QMATH_HPP
#define QCCS_QMATH_HPP

#include <vector>

#include "qccs/types.hpp"

namespace qccs {
namespace qmath {

/// Symmetric q-number [n] = (q^n - q^-n)/(q - q^-1); reduces to n at q = 1
/// and is invariant under q <-> 1/q.
double q_number(int n, const QParams& p);

/// log [n] for large-index work.
double log_q_number(int n, const QParams& p);

/// q-factorial [n]! = [n][n-1]...[1], [0]! = 1.  Throws std::overflow_error
/// once the product leaves double range; callers needing large n should use
/// log_q_factorial.
double q_factorial(int n, const QParams& p);

/// log([n]!), valid for any n >= 0.
double log_q_factorial(int n, const QParams& p);

/// q-exponential e_q(x) = sum x^n/[n]!, taken as exactly zero for
/// x <= -zeta where -zeta is its largest (least-negative) real zero.
/// At q = 1 this is the classical exponential, which has no zero.
SeriesValue q_exponential(double x, const QParams& p);

/// zeta > 0 such that -zeta is the largest real zero of the q-exponential
/// series.  Bracketing scan on a geometric grid followed by bisection.
/// q = 1 has no real zero and is rejected.
double largest_zero(const QParams& p);

/// Decaying q-exponential: the positive solution of the q-difference
/// equation f(q t) - f(t/q) = -(q - 1/q) t f(t) that is normalized to 1 as
/// t -> 0+ and decays superexponentially as t -> infinity.  It agrees with
/// the truncated-series q-exponential of -t for small t and is the weight
/// for which half-line Jackson moments reproduce q-factorials; the modified
/// q-Bessel kernel below is built from it.
double decaying_q_exp(double t, const QParams& p);

/// Values of the decaying q-exponential along a geometric chain
/// t = anchor * q^m.  value(m) returns f(anchor * q^m); powers far below the
/// stored range are in the f -> 1 regime, powers far above it underflow to 0.
class DecayingExpChain {
public:
    DecayingExpChain(double anchor, const QParams& p);
    double value(int m) const;
    double anchor() const { return anchor_; }

private:
    double anchor_;
    int m_lo_;
    std::vector<double> vals_; // index i holds f(anchor * q^(m_lo_+i))
};

/// q-deformed Bessel function of integer order nu >= 0:
///   J_nu(q, x) = sum_k (-1)^k / ([k]! [nu+k]!) * (x / (sqrt(q) [2]_sqrt(q)))^(nu+2k).
ComplexSeriesValue q_bessel_j(int nu, complex x, const QParams& p);

/// (-i)^nu J_nu(q, i y) for y >= 0, summed as the all-positive-term series;
/// real and nonnegative (the modified-I analogue).
SeriesValue q_bessel_i_like(int nu, double y, const QParams& p);

/// Modified q-Bessel function of the second kind for x > 0:
///   K_nu(q, x) = (1/[2]_sq) (x/[2]_sq)^nu *
///                integral_0^inf d_q t  t^-(nu+1) f(t) f(x^2/([2]_sq^2 t))
/// with [2]_sq the bracket in base sqrt(q), the integral a bilateral Jackson
/// sum, and f the decaying q-exponential above.  Positive and decreasing
/// in x.  Requires q < 1.
SeriesValue q_bessel_k(int nu, double x, const QParams& p);

} // namespace qmath
} // namespace qccs

#endif
