#include "qccs/qcalculus.hpp"

#include <cmath>

#include "qccs/qmath.hpp"

namespace qccs {
namespace qcalculus {

complex q_derivative(const std::function<complex(complex)>& f, complex xi, const QParams& p) {
    if (xi == complex(0.0, 0.0)) throw std::domain_error("q_derivative: xi must be nonzero");
    if (p.undeformed()) throw std::domain_error("q_derivative: requires q != 1");
    const double q = p.q;
    return (f(q * xi) - f(xi / q)) / ((q - 1.0 / q) * xi);
}

double q_derivative(const GridFunction& f, double xi, const QParams& p) {
    if (xi == 0.0) throw std::domain_error("q_derivative: xi must be nonzero");
    if (p.undeformed()) throw std::domain_error("q_derivative: requires q != 1");
    const double q = p.q;
    return (f.evaluator(q * xi) - f.evaluator(xi / q)) / ((q - 1.0 / q) * xi);
}

SeriesValue jackson_integral_halfline(const GridFunction& f, const QParams& p) {
    if (p.undeformed() || !(p.q < 1.0))
        throw std::domain_error("jackson_integral_halfline: requires q in (0, 1)");
    const double q = p.q;
    const double w = 1.0 / q - q;

    auto node_term = [&](int m) -> double {
        const double t = std::pow(q, 2 * m + 1);
        return w * t * f.evaluator(t);
    };

    SeriesValue out;
    double sum = 0.0;
    int covered = 0;
    int M = 40;
    double last_incr = 0.0;
    bool converged = false;
    while (true) {
        double incr = 0.0;
        for (int a = covered; a < M; ++a) {
            incr += node_term(a);      // exponent +(2a+1)
            incr += node_term(-a - 1); // exponent -(2a+1)
        }
        sum += incr;
        covered = M;
        last_incr = std::abs(incr);
        if (covered > 40 && last_incr <= p.tol * std::max(1.0, std::abs(sum))) {
            converged = true;
            break;
        }
        if (2 * covered >= (1 << 14)) break;
        M *= 2;
    }
    out.value = sum;
    out.terms_used = 2 * covered;
    out.converged = converged;
    out.abs_err_estimate = last_incr + p.tol * std::max(1.0, std::abs(sum));
    return out;
}

double verify_moment_identity(int p_idx, int nu, const QParams& p) {
    if (p_idx < 0 || nu < 0)
        throw std::domain_error("verify_moment_identity: indices must be >= 0");
    if (p_idx > 32 || nu > 32)
        throw std::domain_error("verify_moment_identity: index beyond configured maximum");
    const double c2 = p.sqrt_q + 1.0 / p.sqrt_q;

    GridFunction f;
    f.domain_hint = 1.0;
    f.evaluator = [&](double u) {
        const SeriesValue k = qmath::q_bessel_k(nu, c2 * u, p);
        if (!k.converged) throw convergence_error("verify_moment_identity: kernel sum did not settle");
        return std::pow(u, 2 * p_idx + nu + 1) * k.value;
    };

    const SeriesValue lhs = jackson_integral_halfline(f, p.half_base());
    if (!lhs.converged) throw convergence_error("verify_moment_identity: radial sum did not settle");
    const double rhs =
        qmath::q_factorial(nu + p_idx, p) * qmath::q_factorial(p_idx, p) / (c2 * c2);
    return std::abs(lhs.value - rhs) / std::abs(rhs);
}

} // namespace qcalculus
} // namespace qccs
