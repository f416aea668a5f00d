#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcl/bclbuild.hpp"
#include "bcl/verify.hpp"

using namespace bcl;

namespace {

const Tolerances tol;

DefectSpectrum make_spectrum(std::size_t l1, std::vector<InteriorEigenvalue> in) {
    DefectSpectrum s;
    s.l1 = l1;
    s.l1p = l1;
    s.interior = std::move(in);
    return s;
}

}  // namespace

TEST_CASE("frame columns are orthonormal and split the space") {
    const DefectSpectrum s = make_spectrum(1, {{0.7, 2}, {0.3, 1}});
    const Frame fr = build_frame(s, tol);
    const std::size_t m = fr.pair_count();
    REQUIRE(m == 4);
    // [f | ft] is a unitary basis of the whole space
    Matrix full(s.total_dim(), 2 * m);
    for (std::size_t i = 0; i < s.total_dim(); ++i)
        for (std::size_t c = 0; c < m; ++c) {
            full(i, c) = fr.f(i, c);
            full(i, m + c) = fr.ft(i, c);
        }
    CHECK(validate_structure(full, StructureKind::Unitary, Tolerances{1e-12}).pass);
    // P = ft ft^* is the projection with ran P-perp spanned by f
    const Matrix p = fr.projection();
    CHECK(validate_structure(p, StructureKind::Projection, Tolerances{1e-12}).pass);
    CHECK(max_abs(multiply(p, fr.f)) < 1e-12);
    CHECK(max_abs(subtract(multiply(p, fr.ft), fr.ft)) < 1e-12);
}

TEST_CASE("frames diagonalize the canonical defect") {
    // T f = lambda^2 f + lambda rho ft, T ft = lambda rho f - lambda^2 ft
    const DefectSpectrum s = make_spectrum(0, {{0.6, 1}});
    const Frame fr = build_frame(s, tol);
    const Matrix t = canonical_matrix(s);
    const Matrix tf = multiply(t, fr.f);
    const Matrix expected_tf =
        add(scale(0.36, fr.f), scale(0.6 * 0.8, fr.ft));
    CHECK(max_abs(subtract(tf, expected_tf)) < 1e-14);
    const Matrix tft = multiply(t, fr.ft);
    const Matrix expected_tft =
        subtract(scale(0.6 * 0.8, fr.f), scale(0.36, fr.ft));
    CHECK(max_abs(subtract(tft, expected_tft)) < 1e-14);
}

TEST_CASE("part (i) on the two-point spectrum reproduces the known blocks") {
    const DefectSpectrum s = make_spectrum(0, {{0.8, 1}, {0.6, 1}});
    const Frame fr = build_frame(s, tol);
    const BCLTriple t = construct_part_i(s, fr, tol);
    CHECK(t.dim == 4);
    CHECK(validate_structure(t.u, StructureKind::Unitary, Tolerances{1e-12}).pass);
    CHECK(defect_residual(t, canonical_matrix(s)) <= 1e-12);

    const Matrix u11 = multiply(adjoint(fr.f), multiply(t.u, fr.f));
    const Matrix u21 = multiply(adjoint(fr.ft), multiply(t.u, fr.f));
    CHECK(std::abs(u11(0, 0) - 0.6) < 1e-14);  // sqrt(1 - 0.8^2)
    CHECK(std::abs(u11(1, 1) - 0.8) < 1e-14);  // sqrt(1 - 0.6^2)
    CHECK(std::abs(u11(0, 1)) < 1e-14);
    CHECK(std::abs(u21(0, 0) + 0.8) < 1e-14);
    CHECK(std::abs(u21(1, 1) + 0.6) < 1e-14);
    // T11 = I - U11 U11^*
    const Matrix t11 = subtract(Matrix::identity(2), multiply(u11, adjoint(u11)));
    CHECK(std::abs(t11(0, 0) - 0.64) < 1e-14);
    CHECK(std::abs(t11(1, 1) - 0.36) < 1e-14);

    const BlockResiduals br = verify_block_system(t, s, fr);
    CHECK(br.max() <= 1e-12);
}

TEST_CASE("part (i) with lambda = 1 in the spectrum") {
    const DefectSpectrum s = make_spectrum(1, {{0.6, 1}});
    const BCLTriple t = construct_part_i(s, build_frame(s, tol), tol);
    CHECK(defect_residual(t, canonical_matrix(s)) <= 1e-12);
    CHECK(commutant_dim(t.u, t.p, tol).dim == 1);
}

TEST_CASE("part (i) off-diagonal blocks are of weighted-shift type") {
    const DefectSpectrum s = make_spectrum(1, {{0.7, 2}, {0.4, 1}});
    const Frame fr = build_frame(s, tol);
    const BCLTriple t = construct_part_i(s, fr, tol);
    const Matrix u12 = multiply(adjoint(fr.f), multiply(t.u, fr.ft));
    const Matrix u21 = multiply(adjoint(fr.ft), multiply(t.u, fr.f));
    const CyclicityReport rep = shift_cyclicity(multiply(u12, u21), tol);
    CHECK(rep.cyclic);
    CHECK(rep.product_check <= 1e-12);
}

TEST_CASE("part (i) preconditions") {
    const DefectSpectrum one = make_spectrum(0, {{0.6, 2}});
    CHECK_THROWS_WITH_AS(construct_part_i(one, build_frame(one, tol), tol),
                         doctest::Contains("PreconditionViolation"), Error);
}

TEST_CASE("part (ii) single interior eigenvalue with twist") {
    const DefectSpectrum s = make_spectrum(0, {{0.6, 2}});
    const Frame fr = build_frame(s, tol);
    const BCLTriple t = construct_part_ii(s, fr, Complex{-1.0}, tol);
    CHECK(t.dim == 4);
    CHECK(validate_structure(t.u, StructureKind::Unitary, Tolerances{1e-12}).pass);
    CHECK(defect_residual(t, canonical_matrix(s)) <= 1e-12);
    CHECK(commutant_dim(t.u, t.p, tol).dim == 1);

    // the twist is essential: any unimodular alpha works for the defect
    const BCLTriple ti = construct_part_ii(s, fr, Complex{0.0, 1.0}, tol);
    CHECK(defect_residual(ti, canonical_matrix(s)) <= 1e-12);
    CHECK(commutant_dim(ti.u, ti.p, tol).dim == 1);
}

TEST_CASE("part (ii) works at multiplicity one") {
    const DefectSpectrum s = make_spectrum(0, {{0.6, 1}});
    const BCLTriple t = construct_part_ii(s, build_frame(s, tol), Complex{-1.0}, tol);
    CHECK(t.dim == 2);
    CHECK(defect_residual(t, canonical_matrix(s)) <= 1e-12);
    CHECK(commutant_dim(t.u, t.p, tol).dim == 1);
}

TEST_CASE("part (ii) rejects bad twists and spectra") {
    const DefectSpectrum s = make_spectrum(0, {{0.6, 2}});
    const Frame fr = build_frame(s, tol);
    CHECK_THROWS_WITH_AS(construct_part_ii(s, fr, Complex{1.0}, tol),
                         doctest::Contains("InvalidTwist"), Error);
    CHECK_THROWS_WITH_AS(construct_part_ii(s, fr, Complex{0.5}, tol),
                         doctest::Contains("InvalidTwist"), Error);
    const DefectSpectrum two = make_spectrum(0, {{0.8, 1}, {0.6, 1}});
    CHECK_THROWS_WITH_AS(construct_part_ii(two, build_frame(two, tol), Complex{-1.0}, tol),
                         doctest::Contains("PreconditionViolation"), Error);
}

TEST_CASE("part (iii) at multiplicity one is the swap") {
    const DefectSpectrum s = make_spectrum(1, {});
    const PartIIIResult res = construct_part_iii(s, tol);
    CHECK(res.triple.dim == 2);
    CHECK(res.triple.u(0, 1) == Complex{1.0});
    CHECK(res.triple.u(1, 0) == Complex{1.0});
    CHECK(res.triple.p(0, 0) == Complex{0.0});
    CHECK(res.triple.p(1, 1) == Complex{1.0});
    CHECK(defect_residual(res.triple, canonical_matrix(s)) == 0.0);
    CHECK_FALSE(res.witness.has_value());
    CHECK(commutant_dim(res.triple.u, res.triple.p, tol).dim == 1);
}

TEST_CASE("part (iii) at multiplicity two is reducible with a witness") {
    const DefectSpectrum s = make_spectrum(2, {});
    const PartIIIResult res = construct_part_iii(s, tol);
    CHECK(defect_residual(res.triple, canonical_matrix(s)) == 0.0);
    REQUIRE(res.witness.has_value());
    const Matrix& w = *res.witness;
    CHECK(w.cols() == 2);
    // P_W commutes with U and P
    const Matrix pw = multiply(w, adjoint(w));
    CHECK(max_abs(subtract(multiply(pw, res.triple.u), multiply(res.triple.u, pw))) <= 1e-12);
    CHECK(max_abs(subtract(multiply(pw, res.triple.p), multiply(res.triple.p, pw))) <= 1e-12);
    CHECK(commutant_dim(res.triple.u, res.triple.p, tol).dim >= 2);
}

TEST_CASE("build_frame rejects unbalanced extremes") {
    DefectSpectrum s;
    s.l1 = 1;
    s.l1p = 2;
    CHECK_THROWS_WITH_AS(build_frame(s, tol), doctest::Contains("PreconditionViolation"),
                         Error);
}

TEST_CASE("triple JSON round-trip") {
    const DefectSpectrum s = make_spectrum(0, {{0.8, 1}, {0.6, 1}});
    const BCLTriple t = construct_part_i(s, build_frame(s, tol), tol);
    const BCLTriple back = triple_from_json(triple_to_json(t));
    CHECK(back.dim == t.dim);
    CHECK(back.provenance == "part-i");
    CHECK(max_abs(subtract(back.u, t.u)) == 0.0);
    CHECK(max_abs(subtract(back.p, t.p)) == 0.0);
}
