#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcl/spectrum.hpp"

using namespace bcl;

namespace {
const Tolerances tol;
}

TEST_CASE("classify reads a canonical diagonal") {
    const Matrix m = Matrix::diagonal(std::vector<double>{1.0, 0.6, -1.0, -0.6});
    const DefectSpectrum s = classify(m, tol);
    CHECK(s.l1 == 1);
    CHECK(s.l1p == 1);
    REQUIRE(s.interior.size() == 1);
    CHECK(s.interior[0].lambda == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s.interior[0].k == 1);
    CHECK(s.total_dim() == 4);
}

TEST_CASE("classify merges multiplicities") {
    const Matrix m = Matrix::diagonal(std::vector<double>{0.5, 0.5, -0.5, -0.5});
    const DefectSpectrum s = classify(m, tol);
    REQUIRE(s.interior.size() == 1);
    CHECK(s.interior[0].k == 2);
}

TEST_CASE("classify error paths") {
    CHECK_THROWS_WITH_AS(classify(Matrix::diagonal(std::vector<double>{1.0, 0.0, -1.0}), tol),
                         doctest::Contains("KernelNotEmpty"), Error);
    CHECK_THROWS_WITH_AS(classify(Matrix::diagonal(std::vector<double>{0.8, -0.6}), tol),
                         doctest::Contains("PairingViolation"), Error);
    CHECK_THROWS_WITH_AS(classify(Matrix::diagonal(std::vector<double>{1.5, -1.5}), tol),
                         doctest::Contains("NotContraction"), Error);
    CHECK_THROWS_WITH_AS(classify(Matrix::diagonal(std::vector<double>{0.8, 0.8, -0.8}), tol),
                         doctest::Contains("PairingViolation"), Error);
}

TEST_CASE("canonical matrix layout") {
    DefectSpectrum s;
    s.l1 = 1;
    s.l1p = 1;
    s.interior = {{0.6, 2}};
    const Matrix m = canonical_matrix(s);
    REQUIRE(m.rows() == 6);
    CHECK(m(0, 0) == Complex{1.0});
    CHECK(m(1, 1) == Complex{0.6});
    CHECK(m(2, 2) == Complex{0.6});
    CHECK(m(3, 3) == Complex{-1.0});
    CHECK(m(4, 4) == Complex{-0.6});
    CHECK(m(5, 5) == Complex{-0.6});
}

TEST_CASE("feasibility decision table, finite") {
    auto verdict = [](std::size_t l1, std::size_t l1p, std::vector<InteriorEigenvalue> in) {
        DefectSpectrum s;
        s.l1 = l1;
        s.l1p = l1p;
        s.interior = std::move(in);
        return feasibility(s);
    };
    CHECK(verdict(1, 2, {}).kind == FeasibilityKind::Infeasible);
    CHECK(verdict(0, 0, {{0.8, 1}, {0.6, 1}}).hint == ConstructionHint::PartI);
    CHECK(verdict(1, 1, {{0.6, 1}}).hint == ConstructionHint::PartI);
    CHECK(verdict(0, 0, {{0.6, 2}}).hint == ConstructionHint::PartII);
    CHECK(verdict(0, 0, {{0.6, 1}}).hint == ConstructionHint::PartII);
    CHECK(verdict(1, 1, {}).hint == ConstructionHint::PartIII);
    CHECK(verdict(2, 2, {}).kind == FeasibilityKind::ReducibleOnly);
    CHECK(verdict(0, 0, {}).kind == FeasibilityKind::ReducibleOnly);
    CHECK(verdict(0, 0, {}).reason == "empty-spectrum");
}

TEST_CASE("feasibility decision table, infinite") {
    DefectSpectrum s;
    s.infinite = InfiniteRule{"harmonic", 0.5, {}, 1};
    CHECK(feasibility(s).hint == ConstructionHint::Inf);
    s.l1 = 2;
    s.l1p = 2;
    CHECK(feasibility(s).hint == ConstructionHint::Inf);
    s.l1p = 3;
    CHECK(feasibility(s).hint == ConstructionHint::Diff1);
    s.l1p = 5;
    const FeasibilityVerdict v = feasibility(s);
    CHECK(v.kind == FeasibilityKind::ReducibleOnly);
    CHECK(v.reason == "open");
}

TEST_CASE("infinite rules generate eigenvalues") {
    InfiniteRule harmonic{"harmonic", 0.5, {}, 1};
    CHECK(harmonic.lambda(1) == doctest::Approx(0.5));
    CHECK(harmonic.lambda(3) == doctest::Approx(0.25));
    InfiniteRule geo{"geometric", 0.5, {}, 1};
    CHECK(geo.lambda(2) == doctest::Approx(0.25));
    InfiniteRule custom{"custom-list", 0.0, {0.9, 0.3}, 1};
    CHECK(custom.lambda(2) == doctest::Approx(0.3));
    CHECK_THROWS_WITH_AS(custom.lambda(3), doctest::Contains("IndexOutOfRule"), Error);
}

TEST_CASE("spectrum validation") {
    DefectSpectrum s;
    s.interior = {{0.6, 1}, {0.8, 1}};  // not decreasing
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("InvalidSpectrum"), Error);
    s.interior = {{1.2, 1}};
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("InvalidSpectrum"), Error);
}

TEST_CASE("spectrum JSON round-trip") {
    DefectSpectrum s;
    s.l1 = 1;
    s.l1p = 1;
    s.interior = {{0.75, 2}, {0.25, 1}};
    const DefectSpectrum back = spectrum_from_json(spectrum_to_json(s));
    CHECK(back.l1 == 1);
    REQUIRE(back.interior.size() == 2);
    CHECK(back.interior[0].lambda == 0.75);
    CHECK(back.interior[1].k == 1);
    CHECK_FALSE(back.is_infinite());

    DefectSpectrum inf;
    inf.infinite = InfiniteRule{"geometric", 0.7, {}, 2};
    const DefectSpectrum back2 = spectrum_from_json(spectrum_to_json(inf));
    REQUIRE(back2.is_infinite());
    CHECK(back2.infinite->rule == "geometric");
    CHECK(back2.infinite->ratio == 0.7);
    CHECK(back2.infinite->k == 2);
}
