// Pair-of-projections calculus: all pairs (P, Q) with P - Q equal to a
// self-adjoint contraction in the canonical block form
// A = 0 (+) I (+) -I (+) D (+) -D, and orthonormal bases of projection
// ranges of the scalar-block form.

#pragma once

#include "bcl/matcore.hpp"

namespace bcl {

// A in block form on ker A (+) ker(A-I) (+) ker(A+I) (+) K (+) K.
struct CanonicalContraction {
    std::size_t kernel_dim = 0;
    std::size_t plus_dim = 0;
    std::size_t minus_dim = 0;
    Matrix d;  // positive contraction on K, eigenvalues in (0,1)

    std::size_t k_dim() const { return d.rows(); }
    std::size_t total_dim() const { return kernel_dim + plus_dim + minus_dim + 2 * k_dim(); }
    Matrix matrix() const;  // the block-diagonal A
};

struct ProjectionPair {
    Matrix p;
    Matrix q;
    Matrix e_kernel;  // projection on the ker A block
    Matrix u_comm;    // unitary on K commuting with D
};

// P = E (+) I (+) 0 (+) P_U, Q = E (+) 0 (+) I (+) Q_U with
// P_U = 1/2 [[I+D, U(I-D^2)^{1/2}], [U^*(I-D^2)^{1/2}, I-D]].
ProjectionPair build_pq(const CanonicalContraction& a, const Matrix& e_kernel,
                        const Matrix& u_comm, const Tolerances& tol);

// Convenience: E = 0, U = I.
ProjectionPair build_pq(const CanonicalContraction& a, const Tolerances& tol);

// Columns sqrt((1+lambda)/2) e_i (+) sqrt((1-lambda)/2) U e_i spanning the
// range of the scalar-block projection built from (lambda, u_block).
Matrix projection_range_basis(double lambda, const Matrix& u_block, const Matrix& basis_h,
                              const Tolerances& tol);

// The scalar-block projection itself (used by tests and bclbuild).
Matrix scalar_block_projection(double lambda, const Matrix& u_block);

// Hermitian square root of I - D^2 through D's eigenbasis.
Matrix sqrt_one_minus_square(const Matrix& d, const Tolerances& tol);

// CanonicalContraction JSON: {"kernel": int, "plus": int, "minus": int, "D": <matrix>}
std::string contraction_to_json(const CanonicalContraction& a);
CanonicalContraction contraction_from_json(const std::string& text);

}  // namespace bcl
