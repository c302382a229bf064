#include "qccs/verify.hpp"

#include <cmath>

#include "qccs/completeness.hpp"
#include "qccs/dalgebra.hpp"
#include "qccs/fockspace.hpp"
#include "qccs/qcalculus.hpp"
#include "qccs/states.hpp"

namespace qccs {
namespace verify {

std::vector<CheckResult> run_algebra(const QParams& p, const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    const fockspace::Truncation trunc(opt.n_max);
    const auto ops = fockspace::build_operators(trunc, p);
    for (const auto& r : fockspace::algebra_residuals(ops))
        out.push_back({"algebra: " + r.name, r.value, opt.tol_algebra});
    return out;
}

std::vector<CheckResult> run_states(const QParams& p, const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    states::KccsParams prm;
    prm.xi = opt.xi;
    prm.qbar = opt.qbar;
    prm.k = opt.k;
    prm.j = 0;
    prm.p = p;
    const auto state = states::build_kccs(prm);
    prm.n_max = state.trunc.n_max;
    const auto ops = fockspace::build_operators(state.trunc, p);
    const auto rep = states::verify_eigen_relations(state, prm, ops);
    out.push_back({"states: pair-power eigenrelation", rep.pair_power_residual, opt.tol_identity});
    out.push_back({"states: charge eigenrelation", rep.charge_residual, opt.tol_identity});
    out.push_back({"states: component orthonormality", rep.orthonormality_residual, opt.tol_identity});

    const auto means = states::mean_number_relation(state);
    out.push_back({"states: mean occupation difference",
                   std::abs(means.first - means.second - prm.qbar), opt.tol_identity});

    const auto exp_rep = states::expand_charge_coherent(prm.xi, prm.qbar, prm.k, p);
    out.push_back({"states: charge-coherent reconstruction", exp_rep.reconstruction_residual,
                   opt.tol_identity});
    out.push_back({"states: normalization sum rule", exp_rep.sum_rule_residual, opt.tol_identity});

    const auto averaged = states::generate_by_averaging(complex(1.0, 0.0), prm.xi, prm.qbar,
                                                        prm.k, 0, 0, p, 0);
    states::KccsParams built_prm = prm;
    built_prm.n_max = averaged.trunc.n_max;
    const auto built = states::build_kccs(built_prm);
    const double fid = std::abs(fockspace::inner(built, averaged));
    out.push_back({"states: phase-averaged generation fidelity defect", std::abs(1.0 - fid),
                   opt.tol_identity});
    return out;
}

std::vector<CheckResult> run_dalgebra(const QParams& p, const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    for (const auto& r : dalgebra::verify_action_table(opt.xi, opt.qbar, opt.k, p))
        out.push_back({"dalgebra: " + r.name, r.value, opt.tol_identity});
    for (const auto& r : dalgebra::verify_su11_dalgebra(opt.xi, opt.qbar, opt.k, p))
        out.push_back({"dalgebra: " + r.name, r.value, opt.tol_identity});
    return out;
}

std::vector<CheckResult> run_moments(const QParams& p, const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    for (int pi = 0; pi <= opt.p_max; ++pi)
        for (int nu = 0; nu <= opt.nu_max; ++nu) {
            const double rel = qcalculus::verify_moment_identity(pi, nu, p);
            out.push_back({"moments: p=" + std::to_string(pi) + " nu=" + std::to_string(nu), rel,
                           opt.tol_integral});
        }
    return out;
}

std::vector<CheckResult> run_completeness(const QParams& p, const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    std::vector<int> ns;
    for (int n = 0; n <= opt.weights_n_max; ++n) ns.push_back(n);
    for (int qb = -opt.weights_qbar_max; qb <= opt.weights_qbar_max; ++qb) {
        const auto w = completeness::sector_resolution_weights(qb, ns, p);
        for (size_t i = 0; i < w.weights.size(); ++i)
            out.push_back({"completeness: weight qbar=" + std::to_string(qb) +
                               " n=" + std::to_string(w.n_values[i]),
                           std::abs(w.weights[i] - 1.0), opt.tol_integral});
    }
    const auto cov = completeness::sector_union_check(-5, 5, 5);
    out.push_back({"completeness: sector tiling", cov.exact ? 0.0 : 1.0, 0.5});
    return out;
}

std::vector<CheckResult> run_suite(const std::string& suite, const QParams& p,
                                   const SuiteOptions& opt) {
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (suite == "algebra") append(run_algebra(p, opt));
    else if (suite == "states") append(run_states(p, opt));
    else if (suite == "dalgebra") append(run_dalgebra(p, opt));
    else if (suite == "moments") append(run_moments(p, opt));
    else if (suite == "completeness") append(run_completeness(p, opt));
    else if (suite == "all") {
        append(run_algebra(p, opt));
        append(run_states(p, opt));
        append(run_dalgebra(p, opt));
        append(run_moments(p, opt));
        append(run_completeness(p, opt));
    } else {
        throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
    }
    return out;
}

} // namespace verify
} // namespace qccs
