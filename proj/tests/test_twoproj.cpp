#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bcl/twoproj.hpp"

using namespace bcl;

namespace {

const Tolerances tol;

Matrix random_unitary_like(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (auto& e : m.entries()) e = Complex(g(rng), g(rng));
    // Gram-Schmidt
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex ip{};
            for (std::size_t i = 0; i < n; ++i) ip += std::conj(m(i, k)) * m(i, j);
            for (std::size_t i = 0; i < n; ++i) m(i, j) -= ip * m(i, k);
        }
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += std::norm(m(i, j));
        r = std::sqrt(r);
        for (std::size_t i = 0; i < n; ++i) m(i, j) /= r;
    }
    return m;
}

}  // namespace

TEST_CASE("scalar projection block at lambda = 3/5") {
    Matrix u(1, 1);
    u(0, 0) = 1.0;
    const Matrix p = scalar_block_projection(0.6, u);
    REQUIRE(p.rows() == 2);
    CHECK(std::abs(p(0, 0) - 0.8) <= 1e-15);
    CHECK(std::abs(p(0, 1) - 0.4) <= 1e-15);
    CHECK(std::abs(p(1, 0) - 0.4) <= 1e-15);
    CHECK(std::abs(p(1, 1) - 0.2) <= 1e-15);
    CHECK(validate_structure(p, StructureKind::Projection, tol).pass);
}

TEST_CASE("scalar projection rejects lambda outside (0,1)") {
    Matrix u = Matrix::identity(1);
    CHECK_THROWS_WITH_AS(scalar_block_projection(1.0, u), doctest::Contains("LambdaOutOfRange"),
                         Error);
    CHECK_THROWS_WITH_AS(scalar_block_projection(0.0, u), doctest::Contains("LambdaOutOfRange"),
                         Error);
}

TEST_CASE("projection range basis spans the range") {
    std::mt19937_64 rng(11);
    const Matrix u = random_unitary_like(3, rng);
    const Matrix p = scalar_block_projection(0.45, u);
    const Matrix basis = projection_range_basis(0.45, u, Matrix::identity(3), tol);
    // P fixes every basis column
    CHECK(max_abs(subtract(multiply(p, basis), basis)) < 1e-12);
    // columns orthonormal
    CHECK(max_abs(subtract(multiply(adjoint(basis), basis), Matrix::identity(3))) < 1e-12);
}

TEST_CASE("P and Q realize the canonical difference") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        CanonicalContraction a;
        a.kernel_dim = 2;
        a.plus_dim = 1;
        a.minus_dim = 2;
        const std::size_t k = 3;
        const Matrix v = random_unitary_like(k, rng);
        std::vector<double> eigs{0.7, 0.4, 0.2};
        Matrix lam = Matrix::diagonal(eigs);
        a.d = multiply(multiply(v, lam), adjoint(v));
        // exact Hermitian symmetrization
        a.d = scale(0.5, add(a.d, adjoint(a.d)));
        // U_comm commutes with D: same eigenbasis, random phases
        std::uniform_real_distribution<double> ang(0.0, 6.28);
        std::vector<Complex> ph;
        for (std::size_t i = 0; i < k; ++i)
            ph.push_back(std::polar(1.0, ang(rng)));
        const Matrix ucomm = multiply(multiply(v, Matrix::diagonal(ph)), adjoint(v));
        Matrix ek(2, 2);
        ek(0, 0) = 1.0;

        const ProjectionPair pq = build_pq(a, ek, ucomm, tol);
        CHECK(validate_structure(pq.p, StructureKind::Projection, Tolerances{1e-10}).pass);
        CHECK(validate_structure(pq.q, StructureKind::Projection, Tolerances{1e-10}).pass);
        CHECK(max_abs(subtract(subtract(pq.p, pq.q), a.matrix())) < 1e-12);
    }
}

TEST_CASE("generic block ranks equal the K dimension") {
    CanonicalContraction a;
    a.d = Matrix::diagonal(std::vector<double>{0.6, 0.3});
    const ProjectionPair pq = build_pq(a, tol);
    const std::size_t k = a.k_dim();
    Matrix pu(2 * k, 2 * k), qu(2 * k, 2 * k);
    for (std::size_t i = 0; i < 2 * k; ++i)
        for (std::size_t j = 0; j < 2 * k; ++j) {
            pu(i, j) = pq.p(i, j);
            qu(i, j) = pq.q(i, j);
        }
    CHECK(rank_revealing_qr(pu, tol).rank == k);
    CHECK(rank_revealing_qr(qu, tol).rank == k);
}

TEST_CASE("build_pq validates its inputs") {
    CanonicalContraction a;
    a.d = Matrix::diagonal(std::vector<double>{0.5, 0.2});
    Matrix bad_u(2, 2);
    bad_u(0, 1) = 1.0;
    bad_u(1, 0) = 1.0;  // unitary but does not commute with D
    CHECK_THROWS_WITH_AS(build_pq(a, Matrix(0, 0), bad_u, tol),
                         doctest::Contains("CommutationFailure"), Error);
    CanonicalContraction out_of_range;
    out_of_range.d = Matrix::diagonal(std::vector<double>{1.0});
    CHECK_THROWS_WITH_AS(build_pq(out_of_range, tol), doctest::Contains("InvalidSpectrum"),
                         Error);
    CHECK_THROWS_WITH_AS(build_pq(a, Matrix(1, 1), Matrix::identity(2), tol),
                         doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("contraction JSON round-trip") {
    CanonicalContraction a;
    a.kernel_dim = 1;
    a.plus_dim = 2;
    a.minus_dim = 0;
    a.d = Matrix::diagonal(std::vector<double>{0.5});
    const CanonicalContraction back = contraction_from_json(contraction_to_json(a));
    CHECK(back.kernel_dim == 1);
    CHECK(back.plus_dim == 2);
    CHECK(back.minus_dim == 0);
    CHECK(back.d(0, 0) == Complex{0.5});
    CHECK(back.total_dim() == a.total_dim());
}
