// Verification engine: defect residuals, commutant-dimension irreducibility
// oracle (with reducing-subspace witnesses), minimal joint reducing subspace
// by orbit closure, and weighted-shift cyclicity checks.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcl/bclbuild.hpp"
#include "bcl/matcore.hpp"

namespace bcl {

struct CommutantReport {
    std::size_t dim = 0;              // >= 1 always; 1 iff irreducible
    std::vector<Matrix> basis;        // n x n matrices spanning {X : XU=UX, XP=PX}
    double singular_gap = 0.0;
    bool irreducible() const { return dim == 1; }
};

struct ReducingSubspace {
    Matrix basis;  // orthonormal columns
    std::size_t dim = 0;
    bool stabilized = true;  // false when the iteration limit was hit
};

// max-entry norm of (Pperp - U Pperp U*) - T.
double defect_residual(const BCLTriple& t, const Matrix& target);

CommutantReport commutant_dim(const Matrix& u, const Matrix& p, const Tolerances& tol);

// Nontrivial joint reducing subspace extracted from a non-scalar commutant
// element (Hermitian symmetrization + spectral projection). Requires dim >= 2.
ReducingSubspace reducing_witness(const CommutantReport& report, const Matrix& u,
                                  const Matrix& p, const Tolerances& tol);

// Smallest joint reducing subspace containing v: closes span{v} under
// U, U*, P, Pperp with modified Gram-Schmidt until the dimension stabilizes.
ReducingSubspace minimal_reducing(const Matrix& u, const Matrix& p, const Matrix& v,
                                  const Tolerances& tol, std::size_t max_iter = 256);

struct CyclicityReport {
    bool cyclic = false;
    double product_check = 0.0;  // ||S^n - (prod weights) I||_max
};

// S must have exactly one nonzero per row and column, on the subdiagonal
// plus the top-right corner. Throws NotShiftType.
CyclicityReport shift_cyclicity(const Matrix& s, const Tolerances& tol);

// Builds the n x n weighted shift with the given subdiagonal weights and
// corner weight (weights[n-1] in the top-right corner).
Matrix weighted_shift(const std::vector<Complex>& weights);

// Independent brute-force commutant dimension for small instances: averages
// powers of the channel X -> (U X U* + P X P + Pperp X Pperp)/2 (doubling
// trick, 2^doublings terms) and ranks the fixed space. Intended for dim <= 4.
std::size_t commutant_dim_bruteforce(const Matrix& u, const Matrix& p,
                                     std::size_t doublings = 40);

struct VerificationReport {
    double defect_residual = 0.0;
    std::size_t commutant_dim = 0;
    bool irreducible = false;
    std::optional<Matrix> witness;
    BlockResiduals blocks;
};

VerificationReport verify_triple(const BCLTriple& t, const DefectSpectrum& s,
                                 const Tolerances& tol);

// {"defect_residual": r, "commutant_dim": n, "irreducible": b,
//  "witness": <matrix|null>, "blocks": {"t11": ..., ..., "max": ...}}
std::string report_to_json(const VerificationReport& r);

}  // namespace bcl
