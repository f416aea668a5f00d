// Finite-dimensional constructions: orthonormal frames pairing the
// eigenspaces of the prescribed defect operator, the projection P, and the
// unitaries realizing the three feasible cases (two distinct positive
// eigenvalues; a single interior eigenvalue with a unimodular twist; the
// +/-1-only case with its impossibility witness).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcl/matcore.hpp"
#include "bcl/spectrum.hpp"

namespace bcl {

struct FrameGroup {
    double lambda = 0.0;  // in (0,1]
    std::size_t k = 0;
    Matrix u;  // k x k unitary from E_lambda to E_{-lambda} coordinates
};

// Orthonormal frames f (basis of ran P-perp) and f~ (basis of ran P),
// expressed in the eigenbasis ordering of the canonical defect matrix.
struct Frame {
    DefectSpectrum spectrum;
    std::vector<FrameGroup> groups;  // lambda strictly decreasing, 1 first when l1 > 0
    Matrix f;   // dim x m
    Matrix ft;  // dim x m

    std::size_t pair_count() const { return f.cols(); }
    Matrix projection() const;  // P = ft ft^*
};

struct BCLTriple {
    std::size_t dim = 0;
    Matrix u;
    Matrix p;
    std::string provenance;  // "part-i" | "part-ii" | "part-iii" | "external"
};

struct PartIIIResult {
    BCLTriple triple;
    // orthonormal columns spanning a proper joint reducing subspace, present
    // exactly when dim E_1 >= 2
    std::optional<Matrix> witness;
};

Frame build_frame(const DefectSpectrum& s, const std::vector<Matrix>& block_unitaries,
                  const Tolerances& tol);
Frame build_frame(const DefectSpectrum& s, const Tolerances& tol);  // identity unitaries

BCLTriple construct_part_i(const DefectSpectrum& s, const Frame& frame, const Tolerances& tol);
BCLTriple construct_part_ii(const DefectSpectrum& s, const Frame& frame, Complex alpha,
                            const Tolerances& tol);
PartIIIResult construct_part_iii(const DefectSpectrum& s, const Tolerances& tol);

struct BlockResiduals {
    double t11 = 0.0, t12 = 0.0, t21 = 0.0, t22 = 0.0;
    double max() const;
};

// Residuals of T11 = I - U11 U11^*, T12 = -U11 U21^*, T21 = -U21 U11^*,
// T22 = -U21 U21^* with blocks taken in the frame's ran P-perp / ran P split.
BlockResiduals verify_block_system(const BCLTriple& t, const DefectSpectrum& s,
                                   const Frame& frame);

// BCLTriple JSON: {"dim": n, "U": <matrix>, "P": <matrix>, "provenance": str}
std::string triple_to_json(const BCLTriple& t);
BCLTriple triple_from_json(const std::string& text);

}  // namespace bcl
