#ifndef QCCS_VERIFY_HPP
#define QCCS_VERIFY_HPP

#include <string>
#include <vector>

#include "qccs/types.hpp"

namespace qccs {
namespace verify {

struct CheckResult {
    std::string name;
    double residual;
    double bound;
    bool passed() const { return residual <= bound; }
};

struct SuiteOptions {
    int k = 3;
    int qbar = 2;
    complex xi{0.7, 0.0};
    int n_max = 20;  // operator-algebra truncation
    int p_max = 2;   // moment-identity grid
    int nu_max = 2;
    int weights_n_max = 2;    // completeness weights: n = 0..weights_n_max
    int weights_qbar_max = 2; // and |qbar| <= weights_qbar_max
    double tol_identity = 1e-8;
    double tol_integral = 1e-6;
    double tol_algebra = 1e-12;
};

std::vector<CheckResult> run_algebra(const QParams& p, const SuiteOptions& opt);
std::vector<CheckResult> run_states(const QParams& p, const SuiteOptions& opt);
std::vector<CheckResult> run_dalgebra(const QParams& p, const SuiteOptions& opt);
std::vector<CheckResult> run_moments(const QParams& p, const SuiteOptions& opt);
std::vector<CheckResult> run_completeness(const QParams& p, const SuiteOptions& opt);

/// suite is one of: algebra, states, dalgebra, moments, completeness, all.
std::vector<CheckResult> run_suite(const std::string& suite, const QParams& p,
                                   const SuiteOptions& opt);

} // namespace verify
} // namespace qccs

#endif
