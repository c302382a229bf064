#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qccs/qmath.hpp"

using namespace qccs;
using namespace qccs::qmath;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}

TEST_CASE("q_number basics and frozen values") {
    QParams p09(0.9, 1e-12);
    CHECK(q_number(0, p09) == 0.0);
    CHECK(rel(q_number(2, p09), 0.9 + 1.0 / 0.9) < 1e-15);
    // exact decimal value of [5] at q = 0.8
    QParams p08(0.8, 1e-12);
    CHECK(rel(q_number(5, p08), 6.05350625) < 1e-14);
    QParams p1(1.0, 1e-12);
    for (int n = 0; n <= 20; ++n) CHECK(q_number(n, p1) == static_cast<double>(n));
    CHECK_THROWS_AS(q_number(-1, p09), std::domain_error);
}

TEST_CASE("q_number is invariant under q <-> 1/q") {
    for (double q : {0.5, 0.8, 0.9, 0.99}) {
        QParams lo(q, 1e-12), hi(1.0 / q, 1e-12);
        for (int n = 0; n <= 50; ++n) {
            const double a = q_number(n, lo), b = q_number(n, hi);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
            // and both agree with the raw bracket evaluated above 1
            const double raw = static_cast<double>(oracle::qnum(n, static_cast<long double>(1.0 / q)));
            CHECK(std::abs(a - raw) <= 1e-12 * std::max(1.0, std::abs(raw)));
        }
    }
}

TEST_CASE("q_factorial values, recurrence and overflow") {
    QParams p09(0.9, 1e-12);
    CHECK(q_factorial(0, p09) == 1.0);
    QParams p1(1.0, 1e-12);
    CHECK(q_factorial(3, p1) == 6.0);
    CHECK(rel(q_factorial(3, p09), 6.122964334705075445816) < 1e-13);
    for (double q : {0.5, 0.9}) {
        QParams p(q, 1e-12);
        const int top = q < 0.6 ? 40 : 50; // the q=0.5 product leaves double range near n=45
        for (int n = 1; n <= top; ++n) {
            const double lhs = q_factorial(n, p);
            const double rhs = q_number(n, p) * q_factorial(n - 1, p);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        }
    }
    QParams p05(0.5, 1e-12);
    CHECK_THROWS_AS(q_factorial(3000, p05), std::overflow_error);
    // log-domain route stays finite and consistent with the ratio recurrence
    const double l300 = log_q_factorial(300, p05);
    const double l299 = log_q_factorial(299, p05);
    CHECK(std::isfinite(l300));
    CHECK(rel(l300 - l299, log_q_number(300, p05)) < 1e-12);
}

TEST_CASE("q_exponential series, undeformed branch and cutoff") {
    QParams p09(0.9, 1e-12);
    const SeriesValue one = q_exponential(0.0, p09);
    CHECK(one.value == 1.0);
    CHECK(one.converged);

    QParams p1(1.0, 1e-12);
    CHECK(rel(q_exponential(1.0, p1).value, std::exp(1.0)) < 1e-14);

    const double zeta = largest_zero(p09);
    CHECK(q_exponential(-zeta - 0.1, p09).value == 0.0);
    CHECK(q_exponential(-zeta, p09).value == 0.0);
    // just above the zero the series is tiny but positive
    const double eps_above = q_exponential(-zeta + 1e-4, p09).value;
    CHECK(eps_above > 0.0);
    CHECK(eps_above < 1e-3);

    for (double x : {-3.0, -1.0, 0.5, 2.0}) {
        const double want = static_cast<double>(oracle::eq_series(x, 0.9L));
        const auto got = q_exponential(x, p09);
        CHECK(rel(got.value, want) < 1e-12);
        CHECK(std::abs(got.value - want) <= got.abs_err_estimate);
    }
}

TEST_CASE("q_exponential near the undeformed limit") {
    // the zero search is hopeless this close to 1, but shallow arguments are
    // provably inside the support and must still evaluate
    QParams p(0.995, 1e-12);
    CHECK_THROWS_AS(largest_zero(p), convergence_error);
    const auto v = q_exponential(-3.0, p);
    CHECK(v.value > 0.0);
    CHECK(rel(v.value, std::exp(-3.0)) < 0.05); // close to the classical value
    CHECK_THROWS_AS(q_exponential(-50.0, p), convergence_error);
}

TEST_CASE("largest_zero against the bracketing oracle") {
    QParams p1(1.0, 1e-12);
    CHECK_THROWS_AS(largest_zero(p1), std::domain_error);

    // frozen references computed by an external extended-precision
    // bracketing scan of the same series
    QParams p09(0.9, 1e-12);
    CHECK(rel(largest_zero(p09), 29.06204918096681019) < 1e-9);
    QParams p08(0.8, 1e-12);
    CHECK(rel(largest_zero(p08), 16.57881766216478128) < 1e-9);
    QParams p05(0.5, 1e-12);
    CHECK(rel(largest_zero(p05), 5.44889426812944408) < 1e-9);
    // the in-test long double oracle resolves the cancellation up to q = 0.8
    for (double q : {0.5, 0.8}) {
        QParams p(q, 1e-12);
        const double z = largest_zero(p);
        const double zo = static_cast<double>(oracle::largest_zero(static_cast<long double>(q)));
        CHECK(rel(z, zo) < 1e-8);
        CHECK(z > 0.0);
    }
}

TEST_CASE("q_bessel_j series") {
    QParams p09(0.9, 1e-12);
    CHECK(q_bessel_j(1, {0.0, 0.0}, p09).value == complex(0.0, 0.0));
    CHECK(q_bessel_j(0, {0.0, 0.0}, p09).value == complex(1.0, 0.0));
    const auto v = q_bessel_j(2, {0.5, 0.0}, p09);
    CHECK(v.converged);
    CHECK(rel(v.value.real(), 0.03365800932535303958) < 1e-12);
    CHECK(std::abs(v.value.imag()) < 1e-16);

    // on the imaginary axis the order-nu function reduces to i^nu times the
    // all-positive-term series
    for (int nu : {0, 1, 2, 3}) {
        const double y = 0.8;
        const auto jz = q_bessel_j(nu, {0.0, y}, p09);
        const auto il = q_bessel_i_like(nu, y, p09);
        const complex expected = std::pow(complex(0.0, 1.0), nu) * il.value;
        CHECK(std::abs(jz.value - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("q_bessel_i_like positivity and frozen value") {
    QParams p09(0.9, 1e-12);
    CHECK(q_bessel_i_like(0, 0.0, p09).value == 1.0);
    CHECK(q_bessel_i_like(3, 0.0, p09).value == 0.0);
    CHECK(rel(q_bessel_i_like(2, 1.0, p09).value, 0.1506982276566517865) < 1e-12);
    for (int nu = 0; nu <= 10; ++nu)
        for (double y : {0.1, 0.5, 1.0, 5.0, 20.0})
            CHECK(q_bessel_i_like(nu, y, p09).value >= 0.0);
}

TEST_CASE("decaying q-exponential: positivity, small-t limit, frozen value") {
    QParams p09(0.9, 1e-12);
    CHECK(rel(decaying_q_exp(1.0, p09), 0.3670839696155525846) < 5e-12);
    // agrees with the series q-exponential well inside the convergent region
    for (double t : {1e-3, 0.1, 0.5, 1.0, 2.0}) {
        const double series = q_exponential(-t, p09).value;
        CHECK(rel(decaying_q_exp(t, p09), series) < 1e-7);
    }
    QParams p08(0.8, 1e-12);
    for (double t : {0.3, 1.0, 3.0, 10.0, 40.0, 200.0}) CHECK(decaying_q_exp(t, p08) > 0.0);
}

TEST_CASE("q_bessel_k frozen values and monotonicity") {
    QParams p09(0.9, 1e-12);
    QParams p08(0.8, 1e-12);
    CHECK(rel(q_bessel_k(1, 2.0, p09).value, 0.1397666804876745877) < 1e-10);
    CHECK(rel(q_bessel_k(2, 1.0, p08).value, 1.638257325190292934) < 1e-10);
    CHECK(rel(q_bessel_k(0, 1.0, p09).value, 0.4208943957091402819) < 1e-10);

    // cross-check against the independent long double reimplementation
    CHECK(rel(q_bessel_k(1, 2.0, p09).value,
              static_cast<double>(oracle::q_bessel_k(1, 2.0L, 0.9L))) < 1e-10);
    for (double q : {0.8, 0.9}) {
        QParams p(q, 1e-12);
        for (int nu = 0; nu <= 4; ++nu) {
            for (double x : {0.3, 1.0, 3.0}) {
                const double got = q_bessel_k(nu, x, p).value;
                const double want = static_cast<double>(
                    oracle::q_bessel_k(nu, static_cast<long double>(x), static_cast<long double>(q)));
                INFO("nu=", nu, " x=", x, " q=", q);
                CHECK(std::abs(got - want) < 1e-9 * std::max(1.0, std::abs(want)));
            }
        }
    }

    double prev = q_bessel_k(2, 0.25, p08).value;
    CHECK(prev > 0.0);
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double cur = q_bessel_k(2, x, p08).value;
        CHECK(cur > 0.0);
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(q_bessel_k(0, 0.0, p09), std::domain_error);
    CHECK_THROWS_AS(q_bessel_k(0, 1.0, QParams(1.0, 1e-12)), std::domain_error);
}

TEST_CASE("q_bessel_k satisfies the lowest moment identity") {
    // integral_0^inf d_sqrt(q) u  u K_0(q, [2]_sq u) = 1/[2]_sq^2
    for (double q : {0.8, 0.9}) {
        QParams p(q, 1e-12);
        const double c = p.sqrt_q + 1.0 / p.sqrt_q;
        const double w = 1.0 / p.sqrt_q - p.sqrt_q;
        double sum = 0.0;
        for (int m = 120; m >= -120; --m) { // ascending magnitude of the summand tail first
            const double u = std::pow(p.sqrt_q, 2 * m + 1);
            if (!std::isfinite(u) || u == 0.0) continue;
            const auto kv = q_bessel_k(0, c * u, p);
            sum += u * u * kv.value;
        }
        CHECK(rel(w * sum, 1.0 / (c * c)) < 1e-8);
    }
}
