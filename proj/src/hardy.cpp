#include "bcl/hardy.hpp"

#include <algorithm>

namespace bcl {

namespace {

// block-diagonal repetition of x over degrees 0..N (degree-major layout)
Matrix kron_identity(const Matrix& x, std::size_t N) {
    const std::size_t n = x.rows();
    Matrix out((N + 1) * n, (N + 1) * n);
    for (std::size_t d = 0; d <= N; ++d)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(d * n + i, d * n + j) = x(i, j);
    return out;
}

// Mz (x) x: degree d maps to degree d+1 for d < N, the top degree to 0
Matrix kron_shift(const Matrix& x, std::size_t N) {
    const std::size_t n = x.rows();
    Matrix out((N + 1) * n, (N + 1) * n);
    for (std::size_t d = 0; d < N; ++d)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out((d + 1) * n + i, d * n + j) = x(i, j);
    return out;
}

}  // namespace

HardyRealization realize(const BCLTriple& t, std::size_t N) {
    if (N < 2) throw Error("PreconditionViolation", "truncation degree must be >= 2");
    const std::size_t n = t.dim;
    const Matrix pperp = subtract(Matrix::identity(n), t.p);

    HardyRealization h;
    h.n = n;
    h.N = N;
    h.source = t;
    h.mz = kron_shift(Matrix::identity(n), N);
    h.v1 = multiply(add(kron_identity(t.p, N), kron_shift(pperp, N)),
                    kron_identity(adjoint(t.u), N));
    h.v2 = multiply(kron_identity(t.u, N),
                    add(kron_shift(t.p, N), kron_identity(pperp, N)));
    return h;
}

DefectBlockReport defect_block(const HardyRealization& h) {
    const std::size_t n = h.n, N = h.N, dim = (N + 1) * n;
    const Matrix v1s = adjoint(h.v1), v2s = adjoint(h.v2);
    Matrix c = Matrix::identity(dim);
    c = subtract(c, multiply(h.v1, v1s));
    c = subtract(c, multiply(h.v2, v2s));
    c = add(c, multiply(multiply(h.v1, h.v2), multiply(v1s, v2s)));

    DefectBlockReport rep;
    rep.degree0_block = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rep.degree0_block(i, j) = c(i, j);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t dmax = std::max(r / n, col / n);
            const double v = std::abs(c(r, col));
            if (dmax >= N - 1)
                rep.edge_max = std::max(rep.edge_max, v);
            else if (r >= n || col >= n)
                rep.offblock_max = std::max(rep.offblock_max, v);
        }
    return rep;
}

IsometryReport isometry_check(const HardyRealization& h) {
    const std::size_t n = h.n, N = h.N, dim = (N + 1) * n;
    const Matrix g1 = subtract(multiply(adjoint(h.v1), h.v1), Matrix::identity(dim));
    const Matrix g2 = subtract(multiply(adjoint(h.v2), h.v2), Matrix::identity(dim));
    IsometryReport rep;
    for (std::size_t col = 0; col < dim; ++col) {
        const bool edge = col / n == N;
        for (std::size_t r = 0; r < dim; ++r) {
            const double m = std::max(std::abs(g1(r, col)), std::abs(g2(r, col)));
            if (edge)
                rep.edge_defect = std::max(rep.edge_defect, m);
            else {
                rep.v1_defect = std::max(rep.v1_defect, std::abs(g1(r, col)));
                rep.v2_defect = std::max(rep.v2_defect, std::abs(g2(r, col)));
            }
        }
    }
    return rep;
}

double commutation_residual(const HardyRealization& h) {
    const Matrix ab = multiply(h.v1, h.v2);
    const Matrix ba = multiply(h.v2, h.v1);
    return std::max(max_abs(subtract(ab, h.mz)), max_abs(subtract(ab, ba)));
}

std::string realization_to_json(const HardyRealization& h) {
    return "{\"N\": " + std::to_string(h.N) + ", \"n\": " + std::to_string(h.n) +
           ", \"V1\": " + matrix_to_json(h.v1) + ", \"V2\": " + matrix_to_json(h.v2) + "}";
}

}  // namespace bcl
