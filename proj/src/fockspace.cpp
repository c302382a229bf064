#include "qccs/fockspace.hpp"

#include <algorithm>
#include <cmath>

#include "qccs/qmath.hpp"

namespace qccs {
namespace fockspace {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> t) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    SparseMatrix m(rows, cols);
    m.cols_idx_.reserve(t.size());
    m.vals_.reserve(t.size());
    size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        m.row_ptr_[static_cast<size_t>(r)] = m.vals_.size();
        while (i < t.size() && t[i].r == r) {
            double v = t[i].v;
            const int c = t[i].c;
            ++i;
            while (i < t.size() && t[i].r == r && t[i].c == c) { v += t[i].v; ++i; }
            if (v != 0.0) {
                m.cols_idx_.push_back(c);
                m.vals_.push_back(v);
            }
        }
    }
    m.row_ptr_[static_cast<size_t>(rows)] = m.vals_.size();
    return m;
}

SparseMatrix SparseMatrix::identity(int n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::diagonal(const std::vector<double>& d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        if (d[static_cast<size_t>(i)] != 0.0) t.push_back({i, i, d[static_cast<size_t>(i)]});
    return from_triplets(static_cast<int>(d.size()), static_cast<int>(d.size()), std::move(t));
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    std::vector<Triplet> out;
    std::vector<double> acc(static_cast<size_t>(o.cols_), 0.0);
    std::vector<int> touched;
    for (int r = 0; r < rows_; ++r) {
        touched.clear();
        for (size_t k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k) {
            const int mid = cols_idx_[k];
            const double v = vals_[k];
            for (size_t k2 = o.row_ptr_[static_cast<size_t>(mid)]; k2 < o.row_ptr_[static_cast<size_t>(mid) + 1]; ++k2) {
                const int c = o.cols_idx_[k2];
                if (acc[static_cast<size_t>(c)] == 0.0) touched.push_back(c);
                acc[static_cast<size_t>(c)] += v * o.vals_[k2];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int c : touched) {
            if (acc[static_cast<size_t>(c)] != 0.0) out.push_back({r, c, acc[static_cast<size_t>(c)]});
            acc[static_cast<size_t>(c)] = 0.0;
        }
    }
    return from_triplets(rows_, o.cols_, std::move(out));
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: dimension mismatch in sum");
    std::vector<Triplet> t;
    t.reserve(nnz() + o.nnz());
    for_each([&](int r, int c, double v) { t.push_back({r, c, v}); });
    o.for_each([&](int r, int c, double v) { t.push_back({r, c, v}); });
    return from_triplets(rows_, cols_, std::move(t));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(-1.0); }

SparseMatrix SparseMatrix::scaled(double s) const {
    SparseMatrix m = *this;
    for (auto& v : m.vals_) v *= s;
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for_each([&](int r, int c, double v) { t.push_back({c, r, v}); });
    return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::pow(int k) const {
    if (rows_ != cols_) throw std::invalid_argument("SparseMatrix: pow requires a square matrix");
    if (k < 0) throw std::invalid_argument("SparseMatrix: pow requires k >= 0");
    SparseMatrix result = identity(rows_);
    for (int i = 0; i < k; ++i) result = result * (*this);
    return result;
}

std::vector<complex> SparseMatrix::apply(const std::vector<complex>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("SparseMatrix: vector length mismatch");
    std::vector<complex> out(static_cast<size_t>(rows_), complex(0.0, 0.0));
    for_each([&](int r, int c, double val) { out[static_cast<size_t>(r)] += val * v[static_cast<size_t>(c)]; });
    return out;
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("SparseMatrix: vector length mismatch");
    std::vector<double> out(static_cast<size_t>(rows_), 0.0);
    for_each([&](int r, int c, double val) { out[static_cast<size_t>(r)] += val * v[static_cast<size_t>(c)]; });
    return out;
}

double SparseMatrix::max_abs_over_cols(const std::vector<char>& col_mask) const {
    double best = 0.0;
    for_each([&](int, int c, double v) {
        if (col_mask[static_cast<size_t>(c)]) best = std::max(best, std::abs(v));
    });
    return best;
}

double SparseMatrix::max_abs() const {
    double best = 0.0;
    for_each([&](int, int, double v) { best = std::max(best, std::abs(v)); });
    return best;
}

OperatorSet build_operators(const Truncation& trunc, const QParams& p) {
    OperatorSet ops;
    ops.params = p;
    ops.trunc = trunc;
    const int side = trunc.side();
    const int dim = trunc.dim();

    std::vector<double> roots(static_cast<size_t>(side) + 1, 0.0);
    for (int n = 0; n <= side; ++n) roots[static_cast<size_t>(n)] = std::sqrt(qmath::q_number(n, p));

    std::vector<SparseMatrix::Triplet> a1t, a2t, n1t, n2t, qt;
    std::vector<double> bn1(static_cast<size_t>(dim)), bn2(static_cast<size_t>(dim)),
        bn1p1(static_cast<size_t>(dim)), bn2p1(static_cast<size_t>(dim)),
        qn1(static_cast<size_t>(dim)), qn2(static_cast<size_t>(dim)),
        b2k0(static_cast<size_t>(dim)), k0d(static_cast<size_t>(dim));
    for (int m = 0; m <= trunc.n_max; ++m) {
        for (int n = 0; n <= trunc.n_max; ++n) {
            const int i = trunc.index(m, n);
            if (m >= 1) a1t.push_back({trunc.index(m - 1, n), i, roots[static_cast<size_t>(m)]});
            if (n >= 1) a2t.push_back({trunc.index(m, n - 1), i, roots[static_cast<size_t>(n)]});
            if (m != 0) n1t.push_back({i, i, static_cast<double>(m)});
            if (n != 0) n2t.push_back({i, i, static_cast<double>(n)});
            if (m != n) qt.push_back({i, i, static_cast<double>(m - n)});
            bn1[static_cast<size_t>(i)] = qmath::q_number(m, p);
            bn2[static_cast<size_t>(i)] = qmath::q_number(n, p);
            bn1p1[static_cast<size_t>(i)] = qmath::q_number(m + 1, p);
            bn2p1[static_cast<size_t>(i)] = qmath::q_number(n + 1, p);
            qn1[static_cast<size_t>(i)] = std::pow(p.q, -m);
            qn2[static_cast<size_t>(i)] = std::pow(p.q, -n);
            b2k0[static_cast<size_t>(i)] = qmath::q_number(m + n + 1, p);
            k0d[static_cast<size_t>(i)] = 0.5 * (m + n + 1);
        }
    }
    ops.a1 = SparseMatrix::from_triplets(dim, dim, std::move(a1t));
    ops.a2 = SparseMatrix::from_triplets(dim, dim, std::move(a2t));
    ops.a1_dag = ops.a1.transpose();
    ops.a2_dag = ops.a2.transpose();
    ops.n1 = SparseMatrix::from_triplets(dim, dim, std::move(n1t));
    ops.n2 = SparseMatrix::from_triplets(dim, dim, std::move(n2t));
    ops.charge = SparseMatrix::from_triplets(dim, dim, std::move(qt));
    ops.k_minus = ops.a1 * ops.a2;
    ops.k_plus = ops.a1_dag * ops.a2_dag;
    ops.k0 = SparseMatrix::diagonal(k0d);
    ops.bracket_n1 = SparseMatrix::diagonal(bn1);
    ops.bracket_n2 = SparseMatrix::diagonal(bn2);
    ops.bracket_n1p1 = SparseMatrix::diagonal(bn1p1);
    ops.bracket_n2p1 = SparseMatrix::diagonal(bn2p1);
    ops.q_pow_neg_n1 = SparseMatrix::diagonal(qn1);
    ops.q_pow_neg_n2 = SparseMatrix::diagonal(qn2);
    ops.bracket_2k0 = SparseMatrix::diagonal(b2k0);
    return ops;
}

namespace {

std::vector<char> interior_mask(const Truncation& trunc, int edge) {
    std::vector<char> mask(static_cast<size_t>(trunc.dim()), 0);
    for (int m = 0; m + edge <= trunc.n_max; ++m)
        for (int n = 0; n + edge <= trunc.n_max; ++n)
            mask[static_cast<size_t>(trunc.index(m, n))] = 1;
    return mask;
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }

} // namespace

std::vector<NamedResidual> algebra_residuals(const OperatorSet& ops, const std::vector<int>& pair_powers) {
    std::vector<NamedResidual> out;
    const auto mask1 = interior_mask(ops.trunc, 1);
    const auto mask2 = interior_mask(ops.trunc, 2);
    const double q = ops.params.q;

    // deviations are reported relative to the scale of the identity's own
    // terms; the bracket entries grow like q^-n, and floating point can only
    // ever cancel them to a few ulp of that scale
    auto push = [&out](const std::string& name, const SparseMatrix& residual,
                       const SparseMatrix& reference, const std::vector<char>& mask) {
        const double scale = std::max(1.0, reference.max_abs_over_cols(mask));
        out.push_back({name, residual.max_abs_over_cols(mask) / scale});
    };

    push("a1 a1dag - q a1dag a1 - q^-N1",
         ops.a1 * ops.a1_dag - (ops.a1_dag * ops.a1).scaled(q) - ops.q_pow_neg_n1,
         ops.q_pow_neg_n1, mask1);
    push("a2 a2dag - q a2dag a2 - q^-N2",
         ops.a2 * ops.a2_dag - (ops.a2_dag * ops.a2).scaled(q) - ops.q_pow_neg_n2,
         ops.q_pow_neg_n2, mask1);
    push("[N1, a1dag] - a1dag", commutator(ops.n1, ops.a1_dag) - ops.a1_dag, ops.a1_dag, mask1);
    push("[N2, a2dag] - a2dag", commutator(ops.n2, ops.a2_dag) - ops.a2_dag, ops.a2_dag, mask1);
    push("[N1, a1] + a1", commutator(ops.n1, ops.a1) + ops.a1, ops.a1, mask1);
    push("[N2, a2] + a2", commutator(ops.n2, ops.a2) + ops.a2, ops.a2, mask1);
    push("a1dag a1 - [N1]", ops.a1_dag * ops.a1 - ops.bracket_n1, ops.bracket_n1, mask1);
    push("a2dag a2 - [N2]", ops.a2_dag * ops.a2 - ops.bracket_n2, ops.bracket_n2, mask1);
    push("[K+, K-] + [2K0]", commutator(ops.k_plus, ops.k_minus) + ops.bracket_2k0,
         ops.bracket_2k0, mask2);
    push("[K0, K+] - K+", commutator(ops.k0, ops.k_plus) - ops.k_plus, ops.k_plus, mask2);
    push("[K0, K-] + K-", commutator(ops.k0, ops.k_minus) + ops.k_minus, ops.k_minus, mask2);
    for (int k : pair_powers) {
        const SparseMatrix pk = ops.k_minus.pow(k);
        push("[Q, (a1 a2)^" + std::to_string(k) + "]", commutator(ops.charge, pk), pk,
             interior_mask(ops.trunc, k));
    }
    return out;
}

std::vector<complex> TwoModeState::dense() const {
    std::vector<complex> v(static_cast<size_t>(trunc.dim()), complex(0.0, 0.0));
    for (const auto& [m, n, a] : amps) v[static_cast<size_t>(trunc.index(m, n))] = a;
    return v;
}

double TwoModeState::norm() const {
    double s = 0.0;
    for (const auto& [m, n, a] : amps) s += std::norm(a);
    return std::sqrt(s);
}

complex TwoModeState::amplitude(int m, int n) const {
    for (const auto& [mm, nn, a] : amps)
        if (mm == m && nn == n) return a;
    return complex(0.0, 0.0);
}

complex expectation(const TwoModeState& state, const SparseMatrix& op) {
    return matrix_element(state, op, state);
}

complex matrix_element(const TwoModeState& bra, const SparseMatrix& op, const TwoModeState& ket) {
    if (bra.trunc.dim() != op.cols() || ket.trunc.dim() != op.cols())
        throw std::invalid_argument("matrix_element: dimension mismatch");
    const auto w = op.apply(ket.dense());
    complex s(0.0, 0.0);
    for (const auto& [m, n, a] : bra.amps) s += std::conj(a) * w[static_cast<size_t>(bra.trunc.index(m, n))];
    return s;
}

complex inner(const TwoModeState& a, const TwoModeState& b) {
    if (a.trunc.n_max != b.trunc.n_max) throw std::invalid_argument("inner: truncation mismatch");
    complex s(0.0, 0.0);
    for (const auto& [m, n, amp] : a.amps) s += std::conj(amp) * b.amplitude(m, n);
    return s;
}

} // namespace fockspace
} // namespace qccs
