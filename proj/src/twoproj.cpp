#include "bcl/twoproj.hpp"

#include <cmath>

#include "json.hpp"

namespace bcl {

Matrix CanonicalContraction::matrix() const {
    const std::size_t n = total_dim();
    const std::size_t k = k_dim();
    Matrix a(n, n);
    std::size_t off = kernel_dim;
    for (std::size_t i = 0; i < plus_dim; ++i) a(off + i, off + i) = 1.0;
    off += plus_dim;
    for (std::size_t i = 0; i < minus_dim; ++i) a(off + i, off + i) = -1.0;
    off += minus_dim;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            a(off + i, off + j) = d(i, j);
            a(off + k + i, off + k + j) = -d(i, j);
        }
    return a;
}

Matrix sqrt_one_minus_square(const Matrix& d, const Tolerances& tol) {
    std::vector<EigenGroup> groups = hermitian_eigen(d, tol);
    const std::size_t k = d.rows();
    Matrix r(k, k);
    for (const auto& g : groups) {
        const double mu = std::sqrt(std::max(0.0, 1.0 - g.value * g.value));
        for (std::size_t c = 0; c < g.multiplicity; ++c)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    r(i, j) += mu * g.basis(i, c) * std::conj(g.basis(j, c));
    }
    return r;
}

ProjectionPair build_pq(const CanonicalContraction& a, const Matrix& e_kernel,
                        const Matrix& u_comm, const Tolerances& tol) {
    const std::size_t k = a.k_dim();
    if (e_kernel.rows() != a.kernel_dim || e_kernel.cols() != a.kernel_dim)
        throw Error("DimensionMismatch", "E_kernel must act on the ker A block");
    if (u_comm.rows() != k || u_comm.cols() != k)
        throw Error("DimensionMismatch", "U_comm must act on K");
    if (a.kernel_dim > 0 &&
        !validate_structure(e_kernel, StructureKind::Projection, tol).pass)
        throw Error("NotProjection", "E_kernel is not a projection");
    if (k > 0) {
        if (!validate_structure(u_comm, StructureKind::Unitary, tol).pass)
            throw Error("NotUnitary", "U_comm is not unitary");
        const double comm = max_abs(subtract(multiply(u_comm, a.d), multiply(a.d, u_comm)));
        if (comm > tol.structural)
            throw Error("CommutationFailure",
                        "U_comm does not commute with D, violation " + std::to_string(comm));
        for (const auto& g : hermitian_eigen(a.d, tol))
            if (!(g.value > 0.0 && g.value < 1.0))
                throw Error("InvalidSpectrum", "D must have eigenvalues in (0,1)");
    }

    const std::size_t n = a.total_dim();
    Matrix p(n, n), q(n, n);
    for (std::size_t i = 0; i < a.kernel_dim; ++i)
        for (std::size_t j = 0; j < a.kernel_dim; ++j) {
            p(i, j) = e_kernel(i, j);
            q(i, j) = e_kernel(i, j);
        }
    std::size_t off = a.kernel_dim;
    for (std::size_t i = 0; i < a.plus_dim; ++i) p(off + i, off + i) = 1.0;
    off += a.plus_dim;
    for (std::size_t i = 0; i < a.minus_dim; ++i) q(off + i, off + i) = 1.0;
    off += a.minus_dim;

    if (k > 0) {
        const Matrix root = sqrt_one_minus_square(a.d, tol);
        const Matrix ur = multiply(u_comm, root);
        const Matrix rus = adjoint(ur);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const double id = i == j ? 1.0 : 0.0;
                p(off + i, off + j) = 0.5 * (Complex(id) + a.d(i, j));
                p(off + i, off + k + j) = 0.5 * ur(i, j);
                p(off + k + i, off + j) = 0.5 * rus(i, j);
                p(off + k + i, off + k + j) = 0.5 * (Complex(id) - a.d(i, j));
                q(off + i, off + j) = 0.5 * (Complex(id) - a.d(i, j));
                q(off + i, off + k + j) = 0.5 * ur(i, j);
                q(off + k + i, off + j) = 0.5 * rus(i, j);
                q(off + k + i, off + k + j) = 0.5 * (Complex(id) + a.d(i, j));
            }
    }
    return {p, q, e_kernel, u_comm};
}

ProjectionPair build_pq(const CanonicalContraction& a, const Tolerances& tol) {
    return build_pq(a, Matrix(a.kernel_dim, a.kernel_dim), Matrix::identity(a.k_dim()), tol);
}

Matrix scalar_block_projection(double lambda, const Matrix& u_block) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error("LambdaOutOfRange", "lambda must lie in (0,1)");
    const std::size_t h = u_block.cols(), k = u_block.rows();
    const double root = std::sqrt(1.0 - lambda * lambda);
    Matrix p(h + k, h + k);
    const Matrix us = adjoint(u_block);
    for (std::size_t i = 0; i < h; ++i) p(i, i) = 0.5 * (1.0 + lambda);
    for (std::size_t i = 0; i < k; ++i) p(h + i, h + i) = 0.5 * (1.0 - lambda);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < k; ++j) p(i, h + j) = 0.5 * root * us(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < h; ++j) p(h + i, j) = 0.5 * root * u_block(i, j);
    return p;
}

Matrix projection_range_basis(double lambda, const Matrix& u_block, const Matrix& basis_h,
                              const Tolerances& tol) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error("LambdaOutOfRange", "lambda must lie in (0,1)");
    if (!validate_structure(u_block, StructureKind::Unitary, tol).pass)
        throw Error("NotUnitary", "U_block must be unitary");
    const std::size_t h = u_block.cols(), k = u_block.rows();
    if (basis_h.rows() != h) throw Error("DimensionMismatch", "basis_H must live in H");
    const double ca = std::sqrt(0.5 * (1.0 + lambda));
    const double cb = std::sqrt(0.5 * (1.0 - lambda));
    const Matrix ue = multiply(u_block, basis_h);
    Matrix out(h + k, basis_h.cols());
    for (std::size_t j = 0; j < basis_h.cols(); ++j) {
        for (std::size_t i = 0; i < h; ++i) out(i, j) = ca * basis_h(i, j);
        for (std::size_t i = 0; i < k; ++i) out(h + i, j) = cb * ue(i, j);
    }
    return out;
}

std::string contraction_to_json(const CanonicalContraction& a) {
    std::string s = "{\"kernel\": " + std::to_string(a.kernel_dim) +
                    ", \"plus\": " + std::to_string(a.plus_dim) +
                    ", \"minus\": " + std::to_string(a.minus_dim) +
                    ", \"D\": " + matrix_to_json(a.d) + "}";
    return s;
}

CanonicalContraction contraction_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CanonicalContraction a;
    a.kernel_dim = j.at("kernel").get<std::size_t>();
    a.plus_dim = j.at("plus").get<std::size_t>();
    a.minus_dim = j.at("minus").get<std::size_t>();
    a.d = matrix_from_json(j.at("D").dump());
    return a;
}

}  // namespace bcl
