#include "qccs/dalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qccs/qmath.hpp"

namespace qccs {
namespace dalgebra {

namespace {

using fockspace::SparseMatrix;

// One monomial of a Fock-vector-valued power series in xi.
struct XiTerm {
    int pow;
    int m, n;
    double coeff;
};
using XiSeries = std::vector<XiTerm>;

complex int_pow(complex z, int n) {
    complex r(1.0, 0.0);
    if (n >= 0)
        for (int i = 0; i < n; ++i) r *= z;
    else
        for (int i = 0; i < -n; ++i) r /= z;
    return r;
}

// Unnormalized component: sum_n xi^(kn+j) / sqrt([kn+j]! [kn+j+|qbar|]!)
// on |kn+j+|qbar|, kn+j> (charge >= 0) or mirrored (charge <= 0).
XiSeries unnorm_component(int k, int qbar, int j, double abs_xi, const QParams& p, int n_max) {
    XiSeries out;
    const int aq = std::abs(qbar);
    double log_f = 0.0;
    for (int i = 1; i <= j; ++i) log_f += qmath::log_q_number(i, p);
    for (int i = 1; i <= j + aq; ++i) log_f += qmath::log_q_number(i, p);
    double coeff = std::exp(-0.5 * log_f);
    double peak = 0.0;
    for (int s = j;; s += k) {
        if (s + aq > n_max) break;
        const int m1 = qbar >= 0 ? s + aq : s;
        const int m2 = qbar >= 0 ? s : s + aq;
        out.push_back({s, m1, m2, coeff});
        const double mag = coeff * std::pow(abs_xi, s);
        peak = std::max(peak, mag);
        if (out.size() > 3 && mag < 1e-17 * peak) break;
        double lg = 0.0;
        for (int i = s + 1; i <= s + k; ++i) lg += qmath::log_q_number(i, p);
        for (int i = s + aq + 1; i <= s + aq + k; ++i) lg += qmath::log_q_number(i, p);
        coeff *= std::exp(-0.5 * lg);
    }
    return out;
}

using Column = std::vector<XiSeries>; // k components

Column unnorm_column(int k, int qbar, double abs_xi, const QParams& p, int n_max) {
    Column col;
    for (int j = 0; j < k; ++j) col.push_back(unnorm_component(k, qbar, j, abs_xi, p, n_max));
    return col;
}

XiSeries mul_pow(XiSeries s, int d) {
    for (auto& t : s) t.pow += d;
    return s;
}

XiSeries q_deriv(XiSeries s, const QParams& p) {
    XiSeries out;
    out.reserve(s.size());
    for (auto& t : s) {
        if (t.pow == 0) continue; // symmetric q-derivative annihilates constants
        out.push_back({t.pow - 1, t.m, t.n, t.coeff * qmath::q_number(t.pow, p)});
    }
    return out;
}

XiSeries xi_ddxi(XiSeries s) {
    for (auto& t : s) t.coeff *= t.pow;
    return s;
}

XiSeries scale(XiSeries s, double f) {
    for (auto& t : s) t.coeff *= f;
    return s;
}

XiSeries add(XiSeries a, const XiSeries& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<complex> evaluate(const XiSeries& s, complex xi, const Truncation& trunc) {
    std::vector<complex> v(static_cast<size_t>(trunc.dim()), complex(0.0, 0.0));
    for (const auto& t : s) {
        if (!trunc.contains(t.m, t.n)) continue;
        v[static_cast<size_t>(trunc.index(t.m, t.n))] += t.coeff * int_pow(xi, t.pow);
    }
    return v;
}

// component mixing: (M col)_j = col_{j-1 mod k}, (N col)_j = col_{j+1 mod k}
enum class Mix { kIdentity, kM, kN };

const XiSeries& mixed(const Column& col, Mix mix, int j, int k) {
    switch (mix) {
        case Mix::kM: return col[static_cast<size_t>((j - 1 + k) % k)];
        case Mix::kN: return col[static_cast<size_t>((j + 1) % k)];
        default: return col[static_cast<size_t>(j)];
    }
}

double compare_row(const SparseMatrix& op, const Column& source, complex xi,
                   const Truncation& trunc,
                   const std::function<XiSeries(const XiSeries&)>& transform, Mix mix,
                   const Column& target) {
    const int k = static_cast<int>(source.size());
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
        const auto lhs = op.apply(evaluate(source[static_cast<size_t>(j)], xi, trunc));
        const auto rhs = evaluate(transform(mixed(target, mix, j, k)), xi, trunc);
        double diff = 0.0, scalev = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i) {
            diff += std::norm(lhs[i] - rhs[i]);
            scalev += std::norm(lhs[i]);
        }
        worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(scalev), 1e-30));
    }
    return worst;
}

struct TableContext {
    int k;
    int qbar;
    complex xi;
    QParams p;
    Truncation trunc{1};
    Column source, up, down; // charges qbar, qbar+1, qbar-1
    fockspace::OperatorSet ops;
};

TableContext make_context(complex xi, int qbar, int k, const QParams& p) {
    if (xi == complex(0.0, 0.0)) throw std::domain_error("dalgebra: xi must be nonzero");
    if (k < 1) throw std::domain_error("dalgebra: k must be >= 1");
    TableContext ctx;
    ctx.k = k;
    ctx.qbar = qbar;
    ctx.xi = xi;
    ctx.p = p;
    const double ax = std::abs(xi);

    // headroom: series tails below 1e-17 relative plus raising room
    states::KccsParams sz;
    sz.xi = xi;
    sz.k = k;
    sz.j = k - 1;
    sz.p = p;
    int nm = 0;
    for (int dq : {-1, 0, 1}) {
        sz.qbar = qbar + dq;
        nm = std::max(nm, states::auto_n_max(sz));
    }
    ctx.trunc = Truncation(nm + 2 + std::abs(qbar));
    ctx.source = unnorm_column(k, qbar, ax, p, ctx.trunc.n_max - 2);
    ctx.up = unnorm_column(k, qbar + 1, ax, p, ctx.trunc.n_max - 2);
    ctx.down = unnorm_column(k, qbar - 1, ax, p, ctx.trunc.n_max - 2);
    ctx.ops = fockspace::build_operators(ctx.trunc, p);
    return ctx;
}

} // namespace

CyclicPair cyclic_matrices(int k) {
    if (k < 1) throw std::domain_error("cyclic_matrices: k must be >= 1");
    CyclicPair out;
    out.m_matrix.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), 0));
    out.n_matrix.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), 0));
    for (int i = 0; i < k; ++i) {
        out.m_matrix[static_cast<size_t>(i)][static_cast<size_t>((i - 1 + k) % k)] = 1;
        out.n_matrix[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % k)] = 1;
    }
    return out;
}

std::vector<NamedResidual> verify_action_table(complex xi, int qbar, int k, const QParams& p) {
    TableContext ctx = make_context(xi, qbar, k, p);
    const QParams& prm = ctx.p;
    std::vector<NamedResidual> out;
    auto ident = [](const XiSeries& s) { return s; };
    const bool pos = qbar > 0, neg = qbar < 0;

    // a1: positive column  ||qbar-1>;  negative column  xi M ||qbar-1>
    if (pos)
        out.push_back({"a1 (positive column)",
                       compare_row(ctx.ops.a1, ctx.source, xi, ctx.trunc, ident, Mix::kIdentity, ctx.down)});
    else
        out.push_back({"a1 (negative column)",
                       compare_row(ctx.ops.a1, ctx.source, xi, ctx.trunc,
                                   [](const XiSeries& s) { return mul_pow(s, 1); }, Mix::kM, ctx.down)});

    // a2: positive column  xi M ||qbar+1>;  negative column  ||qbar+1>
    if (neg)
        out.push_back({"a2 (negative column)",
                       compare_row(ctx.ops.a2, ctx.source, xi, ctx.trunc, ident, Mix::kIdentity, ctx.up)});
    else
        out.push_back({"a2 (positive column)",
                       compare_row(ctx.ops.a2, ctx.source, xi, ctx.trunc,
                                   [](const XiSeries& s) { return mul_pow(s, 1); }, Mix::kM, ctx.up)});

    // a1dag: positive column  xi^-qbar D_q xi^(qbar+1) ||qbar+1>;  negative  D_q N ||qbar+1>
    if (neg)
        out.push_back({"a1dag (negative column)",
                       compare_row(ctx.ops.a1_dag, ctx.source, xi, ctx.trunc,
                                   [&](const XiSeries& s) { return q_deriv(s, prm); }, Mix::kN, ctx.up)});
    else
        out.push_back(
            {"a1dag (positive column)",
             compare_row(ctx.ops.a1_dag, ctx.source, xi, ctx.trunc,
                         [&](const XiSeries& s) {
                             return mul_pow(q_deriv(mul_pow(s, qbar + 1), prm), -qbar);
                         },
                         Mix::kIdentity, ctx.up)});

    // a2dag: positive column  D_q N ||qbar-1>;  negative  xi^qbar D_q xi^(-qbar+1) ||qbar-1>
    if (pos)
        out.push_back({"a2dag (positive column)",
                       compare_row(ctx.ops.a2_dag, ctx.source, xi, ctx.trunc,
                                   [&](const XiSeries& s) { return q_deriv(s, prm); }, Mix::kN, ctx.down)});
    else
        out.push_back(
            {"a2dag (negative column)",
             compare_row(ctx.ops.a2_dag, ctx.source, xi, ctx.trunc,
                         [&](const XiSeries& s) {
                             return mul_pow(q_deriv(mul_pow(s, -qbar + 1), prm), qbar);
                         },
                         Mix::kIdentity, ctx.down)});

    // number operators; at qbar = 0 the two columns coincide
    out.push_back({"N1",
                   compare_row(ctx.ops.n1, ctx.source, xi, ctx.trunc,
                               [&](const XiSeries& s) {
                                   return pos || qbar == 0
                                              ? add(xi_ddxi(s), scale(s, qbar))
                                              : xi_ddxi(s);
                               },
                               Mix::kIdentity, ctx.source)});
    out.push_back({"N2",
                   compare_row(ctx.ops.n2, ctx.source, xi, ctx.trunc,
                               [&](const XiSeries& s) {
                                   return pos || qbar == 0
                                              ? xi_ddxi(s)
                                              : add(xi_ddxi(s), scale(s, -qbar));
                               },
                               Mix::kIdentity, ctx.source)});
    return out;
}

std::vector<NamedResidual> verify_su11_dalgebra(complex xi, int qbar, int k, const QParams& p) {
    TableContext ctx = make_context(xi, qbar, k, p);
    const QParams& prm = ctx.p;
    const int aq = std::abs(qbar);
    std::vector<NamedResidual> out;

    out.push_back({"K- = xi M",
                   compare_row(ctx.ops.k_minus, ctx.source, xi, ctx.trunc,
                               [](const XiSeries& s) { return mul_pow(s, 1); }, Mix::kM, ctx.source)});

    out.push_back(
        {"K+ = xi^-|q| D_q xi^(|q|+1) D_q N",
         compare_row(ctx.ops.k_plus, ctx.source, xi, ctx.trunc,
                     [&](const XiSeries& s) {
                         return mul_pow(q_deriv(mul_pow(q_deriv(s, prm), aq + 1), prm), -aq);
                     },
                     Mix::kN, ctx.source)});

    out.push_back({"K0 = (2 xi d/dxi + |q| + 1)/2",
                   compare_row(ctx.ops.k0, ctx.source, xi, ctx.trunc,
                               [&](const XiSeries& s) {
                                   return scale(add(scale(xi_ddxi(s), 2.0), scale(s, aq + 1)), 0.5);
                               },
                               Mix::kIdentity, ctx.source)});

    out.push_back({"K-^k cycles with xi^k",
                   compare_row(ctx.ops.k_minus.pow(k), ctx.source, xi, ctx.trunc,
                               [&](const XiSeries& s) { return mul_pow(s, k); }, Mix::kIdentity,
                               ctx.source)});

    // adjoint consistency: matrix elements of K+ equal the conjugate
    // transpose of those of K- between normalized components
    {
        std::vector<fockspace::TwoModeState> comps;
        for (int j = 0; j < k; ++j) {
            states::KccsParams cp;
            cp.xi = xi;
            cp.qbar = qbar;
            cp.k = k;
            cp.j = j;
            cp.p = p;
            cp.n_max = ctx.trunc.n_max;
            comps.push_back(states::build_kccs(cp));
        }
        double worst = 0.0;
        for (int ja = 0; ja < k; ++ja)
            for (int jb = 0; jb < k; ++jb) {
                const complex plus =
                    fockspace::matrix_element(comps[static_cast<size_t>(ja)], ctx.ops.k_plus,
                                              comps[static_cast<size_t>(jb)]);
                const complex minus =
                    fockspace::matrix_element(comps[static_cast<size_t>(jb)], ctx.ops.k_minus,
                                              comps[static_cast<size_t>(ja)]);
                worst = std::max(worst, std::abs(plus - std::conj(minus)));
            }
        out.push_back({"adjoint pairing of K+/K-", worst});
    }
    return out;
}

std::vector<int> rotation_orbit(int k) {
    if (k < 1) throw std::domain_error("rotation_orbit: k must be >= 1");
    const QParams p(0.9, 1e-12);
    const complex xi(0.7, 0.0);
    TableContext ctx = make_context(xi, 0, k, p);

    auto support_pattern = [&](const std::vector<complex>& v) {
        double best = 0.0;
        int pattern = 0;
        for (int i = 0; i < ctx.trunc.dim(); ++i) {
            const double a = std::abs(v[static_cast<size_t>(i)]);
            if (a > best) {
                best = a;
                pattern = ctx.trunc.unindex(i).second % k;
            }
        }
        return pattern;
    };

    std::vector<int> orbit{0};
    auto v = evaluate(ctx.source[0], xi, ctx.trunc);
    for (int step = 0; step < k; ++step) {
        v = ctx.ops.k_minus.apply(v);
        orbit.push_back(support_pattern(v));
    }
    return orbit;
}

} // namespace dalgebra
} // namespace qccs
