#include <cmath>

#include "doctest.h"
#include "qccs/fockspace.hpp"
#include "qccs/qmath.hpp"

using namespace qccs;
using namespace qccs::fockspace;

TEST_CASE("ladder matrices act with the right square roots") {
    QParams p1(1.0, 1e-12);
    Truncation t1(1);
    const auto ops1 = build_operators(t1, p1);
    std::vector<complex> basis(static_cast<size_t>(t1.dim()), 0.0);
    basis[static_cast<size_t>(t1.index(1, 0))] = 1.0; // |1,0>
    const auto lowered = ops1.a1.apply(basis);
    CHECK(std::abs(lowered[static_cast<size_t>(t1.index(0, 0))] - 1.0) < 1e-15);

    QParams p09(0.9, 1e-12);
    Truncation t5(5);
    const auto ops = build_operators(t5, p09);
    std::vector<complex> v(static_cast<size_t>(t5.dim()), 0.0);
    v[static_cast<size_t>(t5.index(4, 2))] = 1.0;
    const auto w = ops.a1.apply(v);
    CHECK(std::abs(w[static_cast<size_t>(t5.index(3, 2))] - std::sqrt(qmath::q_number(4, p09))) <
          1e-15);

    // charge eigenvalue on |3,1>
    std::vector<complex> u(static_cast<size_t>(t5.dim()), 0.0);
    u[static_cast<size_t>(t5.index(3, 1))] = 1.0;
    const auto cu = ops.charge.apply(u);
    CHECK(std::abs(cu[static_cast<size_t>(t5.index(3, 1))] - 2.0) < 1e-15);
}

TEST_CASE("number bracket equals the ladder product") {
    for (double q : {0.5, 0.9, 1.0}) {
        QParams p(q, 1e-12);
        Truncation trunc(30);
        const auto ops = build_operators(trunc, p);
        const auto diff = ops.a1_dag * ops.a1 - ops.bracket_n1;
        // relative to the largest bracket entry; sqrt roundoff scales with it
        const double scale = ops.bracket_n1.max_abs();
        CHECK(diff.max_abs() <= 1e-14 * std::max(1.0, scale));
    }
}

TEST_CASE("dressing construction from conventional bosons") {
    QParams p(0.85, 1e-12);
    Truncation trunc(12);
    const auto ops = build_operators(trunc, p);

    std::vector<SparseMatrix::Triplet> bt;
    std::vector<double> dress(static_cast<size_t>(trunc.dim()), 0.0);
    for (int m = 0; m <= trunc.n_max; ++m)
        for (int n = 0; n <= trunc.n_max; ++n) {
            if (m >= 1)
                bt.push_back({trunc.index(m - 1, n), trunc.index(m, n), std::sqrt(static_cast<double>(m))});
            dress[static_cast<size_t>(trunc.index(m, n))] =
                std::sqrt(qmath::q_number(m + 1, p) / (m + 1.0));
        }
    const auto b1 = SparseMatrix::from_triplets(trunc.dim(), trunc.dim(), std::move(bt));
    const auto dressed = SparseMatrix::diagonal(dress) * b1;
    CHECK((dressed - ops.a1).max_abs() < 1e-14 * ops.a1.max_abs());
}

TEST_CASE("algebra residuals vanish on the interior subspace") {
    for (double q : {0.5, 0.8, 0.9, 1.0}) {
        for (int n_max : {10, 20, 40}) {
            QParams p(q, 1e-12);
            const auto ops = build_operators(Truncation(n_max), p);
            for (const auto& r : algebra_residuals(ops)) {
                INFO(r.name, " q=", q, " n_max=", n_max);
                CHECK(r.value < 1e-12);
            }
        }
    }
}

TEST_CASE("pair-lowering commutes with charge at machine precision") {
    QParams p(0.9, 1e-12);
    const auto ops = build_operators(Truncation(20), p);
    const auto res = algebra_residuals(ops, {3});
    bool found = false;
    for (const auto& r : res)
        if (r.name.find("(a1 a2)^3") != std::string::npos) {
            found = true;
            CHECK(r.value == 0.0);
        }
    CHECK(found);
}

TEST_CASE("expectation on eigenstates and superpositions") {
    QParams p(0.9, 1e-12);
    Truncation trunc(6);
    const auto ops = build_operators(trunc, p);

    TwoModeState fock;
    fock.trunc = trunc;
    fock.amps.emplace_back(2, 0, complex(1.0, 0.0));
    fock.norm_declared = 1.0;
    CHECK(std::abs(expectation(fock, ops.n1) - 2.0) < 1e-15);
    CHECK(std::abs(expectation(fock, ops.charge) - 2.0) < 1e-15);

    TwoModeState sup;
    sup.trunc = trunc;
    const double a = std::sqrt(0.3), b = std::sqrt(0.7);
    sup.amps.emplace_back(1, 1, complex(a, 0.0));
    sup.amps.emplace_back(3, 3, complex(0.0, b));
    sup.norm_declared = 1.0;
    const double want = 0.3 * qmath::q_number(1, p) + 0.7 * qmath::q_number(3, p);
    CHECK(std::abs(expectation(sup, ops.bracket_n1) - want) < 1e-14);
    // hermitian operator: imaginary residue at machine precision
    CHECK(std::abs(expectation(sup, ops.bracket_n1).imag()) < 1e-15);
}

TEST_CASE("sparse matrix algebra sanity") {
    const auto id = SparseMatrix::identity(4);
    CHECK((id * id - id).max_abs() == 0.0);
    std::vector<SparseMatrix::Triplet> t{{0, 1, 2.0}, {1, 0, -1.0}, {0, 1, 0.5}};
    const auto m = SparseMatrix::from_triplets(2, 2, std::move(t));
    CHECK(m.nnz() == 2); // duplicates merged
    const auto mt = m.transpose();
    std::vector<complex> v{complex(1.0, 0.0), complex(0.0, 1.0)};
    const auto mv = m.apply(v);
    CHECK(std::abs(mv[0] - complex(0.0, 2.5)) < 1e-15);
    CHECK(std::abs(mt.apply(mv)[1] - complex(0.0, 6.25)) < 1e-15);
    CHECK_THROWS_AS(m.apply(std::vector<complex>(3)), std::invalid_argument);
}
