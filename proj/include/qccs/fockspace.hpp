#ifndef QCCS_FOCKSPACE_HPP
#define QCCS_FOCKSPACE_HPP

#include <string>
#include <tuple>
#include <vector>

#include "qccs/types.hpp"

namespace qccs {
namespace fockspace {

/// Per-mode Fock cutoff; the two-mode basis is {|m,n> : 0 <= m,n <= n_max}.
struct Truncation {
    int n_max = 1;

    explicit Truncation(int nm = 1) : n_max(nm) {
        if (nm < 1) throw std::domain_error("Truncation: n_max must be >= 1");
    }
    int side() const { return n_max + 1; }
    int dim() const { return side() * side(); }
    int index(int m, int n) const { return m * side() + n; }
    std::pair<int, int> unindex(int i) const { return {i / side(), i % side()}; }
    bool contains(int m, int n) const { return m >= 0 && n >= 0 && m <= n_max && n <= n_max; }
};

/// Real sparse matrix in CSR form with deterministic (row, col) ordering.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(static_cast<size_t>(rows) + 1, 0) {}

    struct Triplet {
        int r, c;
        double v;
    };

    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> t);
    static SparseMatrix identity(int n);
    static SparseMatrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t nnz() const { return vals_.size(); }

    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(double s) const;
    SparseMatrix transpose() const;
    SparseMatrix pow(int k) const;

    std::vector<complex> apply(const std::vector<complex>& v) const;
    std::vector<double> apply(const std::vector<double>& v) const;

    /// Largest |entry| among columns where mask is nonzero.
    double max_abs_over_cols(const std::vector<char>& col_mask) const;
    double max_abs() const;

    template <class F>
    void for_each(F&& f) const {
        for (int r = 0; r < rows_; ++r)
            for (size_t k = row_ptr_[static_cast<size_t>(r)]; k < row_ptr_[static_cast<size_t>(r) + 1]; ++k)
                f(r, cols_idx_[k], vals_[k]);
    }

private:
    int rows_, cols_;
    std::vector<size_t> row_ptr_;
    std::vector<int> cols_idx_;
    std::vector<double> vals_;
};

/// Sparse q-boson operators on the truncated two-mode space.  The ladder
/// matrices act as a|n> = sqrt([n]) |n-1>, adag|n> = sqrt([n+1]) |n+1>;
/// charge = n1 - n2; k_minus = a1 a2, k_plus = a1d a2d, k0 = (n1+n2+1)/2.
struct OperatorSet {
    QParams params;
    Truncation trunc;
    SparseMatrix a1, a2, a1_dag, a2_dag;
    SparseMatrix n1, n2, charge;
    SparseMatrix k_minus, k_plus, k0;
    SparseMatrix bracket_n1, bracket_n2;       // diagonal [N_i]
    SparseMatrix bracket_n1p1, bracket_n2p1;   // diagonal [N_i + 1]
    SparseMatrix q_pow_neg_n1, q_pow_neg_n2;   // diagonal q^(-N_i)
    SparseMatrix bracket_2k0;                  // diagonal [2 K_0]
};

OperatorSet build_operators(const Truncation& trunc, const QParams& p);

/// One named deviation from an operator identity.
struct NamedResidual {
    std::string name;
    double value;
};

/// Max-norm deviations of the q-boson commutation relations, the ladder
/// shift relations, the su_q(1,1) relations of (k_minus, k_plus, k0) and
/// [charge, (a1 a2)^k], each restricted to the interior subspace
/// m, n <= n_max - k_edge so truncation-edge artifacts are excluded.
std::vector<NamedResidual> algebra_residuals(const OperatorSet& ops,
                                             const std::vector<int>& pair_powers = {1, 2, 3});

/// Sparse two-mode state: nonzero amplitudes over |m,n>, sorted by (m,n).
struct TwoModeState {
    Truncation trunc{1};
    std::vector<std::tuple<int, int, complex>> amps;
    double norm_declared = 0.0;

    std::vector<complex> dense() const;
    double norm() const;
    complex amplitude(int m, int n) const;
};

/// <psi| Op |psi>.  Throws on dimension mismatch.
complex expectation(const TwoModeState& state, const SparseMatrix& op);

/// <psi| Op |phi> for states on the same truncation.
complex matrix_element(const TwoModeState& bra, const SparseMatrix& op, const TwoModeState& ket);

complex inner(const TwoModeState& a, const TwoModeState& b);

} // namespace fockspace
} // namespace qccs

#endif
