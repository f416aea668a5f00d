#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bcl/bclbuild.hpp"
#include "bcl/verify.hpp"

using namespace bcl;

namespace {

const Tolerances tol;

Matrix random_unitary_like(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (auto& e : m.entries()) e = Complex(g(rng), g(rng));
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

Matrix swap2() {
    Matrix u(2, 2);
    u(0, 1) = u(1, 0) = 1.0;
    return u;
}

}  // namespace

TEST_CASE("defect residual basics") {
    BCLTriple t;
    t.dim = 3;
    t.u = Matrix::identity(3);
    t.p = Matrix::diagonal(std::vector<double>{1, 0, 1});
    CHECK(defect_residual(t, Matrix(3, 3)) == 0.0);

    BCLTriple sw;
    sw.dim = 2;
    sw.u = swap2();
    sw.p = Matrix::diagonal(std::vector<double>{0, 1});
    CHECK(defect_residual(sw, Matrix::diagonal(std::vector<double>{1, -1})) == 0.0);
    CHECK_THROWS_WITH_AS(defect_residual(sw, Matrix(3, 3)),
                         doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("commutant of the irreducible swap pair is scalar") {
    const CommutantReport rep =
        commutant_dim(swap2(), Matrix::diagonal(std::vector<double>{0, 1}), tol);
    CHECK(rep.dim == 1);
    CHECK(rep.irreducible());
    REQUIRE(rep.basis.size() == 1);
    // the single basis element is a multiple of the identity
    const Matrix& x = rep.basis[0];
    CHECK(std::abs(x(0, 0) - x(1, 1)) < 1e-10);
    CHECK(std::abs(x(0, 1)) < 1e-10);
}

TEST_CASE("abelian pair has a large commutant and yields a witness") {
    const Matrix u = Matrix::identity(2);
    const Matrix p = Matrix::diagonal(std::vector<double>{1, 0});
    const CommutantReport rep = commutant_dim(u, p, tol);
    CHECK(rep.dim == 2);
    const ReducingSubspace w = reducing_witness(rep, u, p, tol);
    CHECK(w.dim >= 1);
    CHECK(w.dim < 2);
    const Matrix pw = multiply(w.basis, adjoint(w.basis));
    CHECK(max_abs(subtract(multiply(pw, p), multiply(p, pw))) < 1e-10);
}

TEST_CASE("commutant dimension is conjugation invariant") {
    std::mt19937_64 rng(21);
    const Tolerances t;
    for (int trial = 0; trial < 3; ++trial) {
        const std::size_t n = 4;
        // a reducible pair: direct sum of two copies of the swap pair
        Matrix u(n, n), p(n, n);
        u(0, 1) = u(1, 0) = u(2, 3) = u(3, 2) = 1.0;
        p(1, 1) = p(3, 3) = 1.0;
        const std::size_t base = commutant_dim(u, p, t).dim;
        const Matrix w = random_unitary_like(n, rng);
        const Matrix uc = multiply(multiply(w, u), adjoint(w));
        const Matrix pc = multiply(multiply(w, p), adjoint(w));
        CHECK(commutant_dim(uc, pc, t).dim == base);
    }
}

TEST_CASE("commutant dim validates inputs") {
    CHECK_THROWS_WITH_AS(
        commutant_dim(Matrix::diagonal(std::vector<double>{2.0, 1.0}),
                      Matrix::diagonal(std::vector<double>{1.0, 0.0}), tol),
        doctest::Contains("NotUnitary"), Error);
    CHECK_THROWS_WITH_AS(commutant_dim(swap2(), Matrix::diagonal(std::vector<double>{0.5, 0.5}),
                                       tol),
                         doctest::Contains("NotProjection"), Error);
}

TEST_CASE("minimal reducing subspace orbit") {
    Matrix e1(2, 1);
    e1(0, 0) = 1.0;
    // irreducible pair: full space
    const ReducingSubspace full =
        minimal_reducing(swap2(), Matrix::diagonal(std::vector<double>{0, 1}), e1, tol);
    CHECK(full.dim == 2);
    // abelian pair: e1 already spans a reducing line
    const ReducingSubspace line =
        minimal_reducing(Matrix::identity(2), Matrix::diagonal(std::vector<double>{1, 0}), e1,
                         tol);
    CHECK(line.dim == 1);
}

TEST_CASE("minimal reducing recovers the multiplicity-two witness") {
    DefectSpectrum s;
    s.l1 = s.l1p = 2;
    const PartIIIResult res = construct_part_iii(s, tol);
    REQUIRE(res.witness.has_value());
    Matrix v(4, 1);
    for (std::size_t i = 0; i < 4; ++i)
        v(i, 0) = (*res.witness)(i, 0) + (*res.witness)(i, 1);
    const ReducingSubspace w = minimal_reducing(res.triple.u, res.triple.p, v, tol);
    CHECK(w.dim == 2);
    // proper subspace of the 4-dimensional space
    CHECK(w.dim < 4);
}

TEST_CASE("weighted-shift cyclicity") {
    const CyclicityReport perm = shift_cyclicity(weighted_shift({1.0, 1.0, 1.0}), tol);
    CHECK(perm.cyclic);
    CHECK(perm.product_check == 0.0);

    const CyclicityReport w = shift_cyclicity(weighted_shift({0.6, 0.8, 0.5}), tol);
    CHECK(w.cyclic);
    CHECK(w.product_check <= 1e-15);  // S^3 = 0.24 I

    CHECK_THROWS_WITH_AS(shift_cyclicity(Matrix::diagonal(std::vector<double>{1.0, 2.0}), tol),
                         doctest::Contains("NotShiftType"), Error);
    Matrix dense = weighted_shift({0.5, 0.5});
    dense(0, 0) = 0.3;
    CHECK_THROWS_WITH_AS(shift_cyclicity(dense, tol), doctest::Contains("NotShiftType"), Error);
}

TEST_CASE("brute-force commutant oracle agrees on small instances") {
    // swap pair: dim 1
    CHECK(commutant_dim_bruteforce(swap2(), Matrix::diagonal(std::vector<double>{0, 1})) == 1);
    // abelian pair: dim 2
    CHECK(commutant_dim_bruteforce(Matrix::identity(2),
                                   Matrix::diagonal(std::vector<double>{1, 0})) == 2);
    // fully scalar family: everything commutes, dim 4
    CHECK(commutant_dim_bruteforce(Matrix::identity(2), Matrix(2, 2)) == 4);
}

TEST_CASE("irreducible pairs are closed under random orbit starts") {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g;
    const Matrix u = swap2();
    const Matrix p = Matrix::diagonal(std::vector<double>{0, 1});
    REQUIRE(commutant_dim(u, p, tol).dim == 1);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix v(2, 1);
        v(0, 0) = Complex(g(rng), g(rng));
        v(1, 0) = Complex(g(rng), g(rng));
        CHECK(minimal_reducing(u, p, v, tol).dim == 2);
    }
}

TEST_CASE("verification report JSON shape") {
    DefectSpectrum s;
    s.l1 = s.l1p = 1;
    const PartIIIResult res = construct_part_iii(s, tol);
    const VerificationReport rep = verify_triple(res.triple, s, tol);
    CHECK(rep.irreducible);
    CHECK(rep.commutant_dim == 1);
    CHECK(rep.defect_residual == 0.0);
    const std::string j = report_to_json(rep);
    CHECK(j.find("\"irreducible\": true") != std::string::npos);
    CHECK(j.find("\"witness\": null") != std::string::npos);
}
