#include "bcl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bcl/spectrum.hpp"

namespace bcl {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// max-entry distance from the nearest scalar multiple of the identity
double scalar_deviation(const Matrix& x) {
    const std::size_t n = x.rows();
    Complex tr{};
    for (std::size_t i = 0; i < n; ++i) tr += x(i, i);
    Matrix y = x;
    const Complex mean = tr / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) y(i, i) -= mean;
    return max_abs(y);
}

}  // namespace

double defect_residual(const BCLTriple& t, const Matrix& target) {
    if (target.rows() != t.dim || target.cols() != t.dim)
        throw Error("DimensionMismatch", "target must match the triple dimension");
    const Matrix pperp = subtract(Matrix::identity(t.dim), t.p);
    const Matrix conj = multiply(multiply(t.u, pperp), adjoint(t.u));
    return max_abs(subtract(subtract(pperp, conj), target));
}

CommutantReport commutant_dim(const Matrix& u, const Matrix& p, const Tolerances& tol) {
    const std::size_t n = u.rows();
    if (p.rows() != n || p.cols() != n || u.cols() != n)
        throw Error("DimensionMismatch", "U and P must be square of equal size");
    if (!validate_structure(u, StructureKind::Unitary, tol).pass)
        throw Error("NotUnitary", "U is not unitary");
    if (!validate_structure(p, StructureKind::Projection, tol).pass)
        throw Error("NotProjection", "P is not a projection");

    // rows: equations (XU - UX)_{ij} = 0 then (XP - PX)_{ij} = 0;
    // columns: X_{kl} vectorized as k*n + l
    Matrix sys(2 * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t r1 = i * n + j;
            const std::size_t r2 = n * n + r1;
            for (std::size_t l = 0; l < n; ++l) {
                sys(r1, i * n + l) += u(l, j);
                sys(r2, i * n + l) += p(l, j);
            }
            for (std::size_t k = 0; k < n; ++k) {
                sys(r1, k * n + j) -= u(i, k);
                sys(r2, k * n + j) -= p(i, k);
            }
        }
    const RankRevealing rr = rank_revealing_qr(sys, tol);

    CommutantReport rep;
    rep.dim = rr.null_basis.cols();
    rep.singular_gap = rr.gap;
    for (std::size_t c = 0; c < rep.dim; ++c) {
        Matrix x(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) x(k, l) = rr.null_basis(k * n + l, c);
        rep.basis.push_back(std::move(x));
    }
    return rep;
}

ReducingSubspace reducing_witness(const CommutantReport& report, const Matrix& u,
                                  const Matrix& p, const Tolerances& tol) {
    if (report.dim < 2)
        throw Error("PreconditionViolation", "witness extraction needs commutant dim >= 2");
    const std::size_t n = u.rows();
    // pick the commutant element farthest from scalar, then the larger of its
    // two Hermitian symmetrizations
    const Matrix* best = nullptr;
    double best_dev = 0.0;
    for (const Matrix& x : report.basis) {
        const double dev = scalar_deviation(x);
        if (dev > best_dev) {
            best_dev = dev;
            best = &x;
        }
    }
    if (!best || best_dev <= tol.rank_gap)
        throw Error("PreconditionViolation", "no non-scalar commutant element found");
    const Matrix h1 = scale(0.5, add(*best, adjoint(*best)));
    const Matrix h2 = scale(Complex{0.0, 0.5}, subtract(*best, adjoint(*best)));
    const Matrix& h = scalar_deviation(h1) >= scalar_deviation(h2) ? h1 : h2;

    const std::vector<EigenGroup> groups = hermitian_eigen(h, tol);
    if (groups.size() < 2)
        throw Error("PreconditionViolation", "symmetrized commutant element is scalar");
    ReducingSubspace w;
    w.basis = groups.front().basis;
    w.dim = w.basis.cols();
    (void)n;
    return w;
}

ReducingSubspace minimal_reducing(const Matrix& u, const Matrix& p, const Matrix& v,
                                  const Tolerances& tol, std::size_t max_iter) {
    const std::size_t n = u.rows();
    if (v.rows() != n || v.cols() != 1) throw Error("DimensionMismatch", "v must be n x 1");
    const double nv = frobenius(v);
    if (nv <= tol.rank_gap) throw Error("PreconditionViolation", "v must be nonzero");

    std::vector<Matrix> cols{scale(1.0 / nv, v)};
    const Matrix pperp = subtract(Matrix::identity(n), p);
    const Matrix ustar = adjoint(u);
    const Matrix* ops[] = {&u, &ustar, &p, &pperp};

    // modified Gram-Schmidt append; returns false when the column is dependent
    auto append = [&](Matrix c) {
        for (int pass = 0; pass < 2; ++pass)
            for (const Matrix& b : cols) {
                Complex ip{};
                for (std::size_t i = 0; i < n; ++i) ip += std::conj(b(i, 0)) * c(i, 0);
                for (std::size_t i = 0; i < n; ++i) c(i, 0) -= ip * b(i, 0);
            }
        const double r = frobenius(c);
        if (r <= tol.rank_gap) return false;
        cols.push_back(scale(1.0 / r, c));
        return true;
    };

    ReducingSubspace out;
    std::size_t head = 0;
    std::size_t iter = 0;
    while (head < cols.size() && cols.size() < n) {
        if (++iter > max_iter) {
            out.stabilized = false;
            break;
        }
        const Matrix x = cols[head++];
        for (const Matrix* op : ops) append(multiply(*op, x));
    }
    out.dim = cols.size();
    out.basis = Matrix(n, out.dim);
    for (std::size_t j = 0; j < out.dim; ++j) out.basis.set_column(j, cols[j]);
    return out;
}

Matrix weighted_shift(const std::vector<Complex>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw Error("PreconditionViolation", "weights must be nonempty");
    Matrix s(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) s(i + 1, i) = weights[i];
    s(0, n - 1) = weights[n - 1];
    return s;
}

CyclicityReport shift_cyclicity(const Matrix& s, const Tolerances& tol) {
    const std::size_t n = s.rows();
    if (n == 0 || s.cols() != n) throw Error("NonSquare", "S must be square and nonempty");
    Complex product{1.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool on_pattern = (n == 1 && i == 0 && j == 0) ||
                                    (i == j + 1) || (i == 0 && j == n - 1);
            if (on_pattern) {
                if (std::abs(s(i, j)) <= tol.structural)
                    throw Error("NotShiftType", "zero weight on the shift pattern");
            } else if (std::abs(s(i, j)) > tol.structural) {
                throw Error("NotShiftType", "nonzero entry off the shift pattern");
            }
        }
    for (std::size_t i = 0; i + 1 < n; ++i) product *= s(i + 1, i);
    if (n >= 1) product *= s(0, n - 1);
    if (n == 1) product = s(0, 0);

    Matrix power = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) power = multiply(s, power);

    CyclicityReport rep;
    rep.product_check = max_abs(subtract(power, scale(product, Matrix::identity(n))));
    rep.cyclic = true;
    for (std::size_t i = 0; i < n && rep.cyclic; ++i) {
        Matrix krylov(n, n);
        Matrix v(n, 1);
        v(i, 0) = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            krylov.set_column(k, v);
            v = multiply(s, v);
        }
        rep.cyclic = rank_revealing_qr(krylov, tol).rank == n;
    }
    return rep;
}

std::size_t commutant_dim_bruteforce(const Matrix& u, const Matrix& p,
                                     std::size_t doublings) {
    const std::size_t n = u.rows();
    const Matrix pperp = subtract(Matrix::identity(n), p);

    // the averaging channel X -> (U X U* + P X P + Pperp X Pperp)/2 as an
    // explicit matrix on vectorized X: vec(A X B) = (A (x) B^T) vec(X)
    Matrix psi(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    psi(i * n + j, k * n + l) =
                        0.5 * (u(i, k) * std::conj(u(j, l)) + p(i, k) * std::conj(p(j, l)) +
                               pperp(i, k) * std::conj(pperp(j, l)));

    // Cesaro mean over 2^doublings powers via the product of (I + Psi^(2^j))/2;
    // the mean projects onto the fixed space, which is the commutant of {U, P}
    Matrix mean = Matrix::identity(n * n);
    Matrix power = psi;
    for (std::size_t j = 0; j < doublings; ++j) {
        mean = scale(0.5, add(mean, multiply_serial(mean, power)));
        power = multiply_serial(power, power);
    }

    std::vector<std::vector<Complex>> rows;
    for (std::size_t r = 0; r < n * n; ++r) {
        std::vector<Complex> row(n * n);
        for (std::size_t c = 0; c < n * n; ++c) row[c] = mean(r, c);
        rows.push_back(std::move(row));
    }

    // plain Gaussian elimination, kept independent of the pivoted-QR path
    double biggest = 0.0;
    for (const auto& row : rows)
        for (const Complex& c : row) biggest = std::max(biggest, std::abs(c));
    const double thresh = 1e-6 * (biggest > 0 ? biggest : 1.0);
    std::size_t rank = 0;
    const std::size_t m = n * n;
    for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        if (std::abs(rows[pivot][col]) <= thresh) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            const Complex f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < m; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

VerificationReport verify_triple(const BCLTriple& t, const DefectSpectrum& s,
                                 const Tolerances& tol) {
    VerificationReport r;
    r.defect_residual = defect_residual(t, canonical_matrix(s));
    const CommutantReport cr = commutant_dim(t.u, t.p, tol);
    r.commutant_dim = cr.dim;
    r.irreducible = cr.irreducible();
    if (cr.dim >= 2) r.witness = reducing_witness(cr, t.u, t.p, tol).basis;
    if (s.l1 == s.l1p && s.total_dim() > 0)
        r.blocks = verify_block_system(t, s, build_frame(s, tol));
    return r;
}

std::string report_to_json(const VerificationReport& r) {
    std::string s = "{\"defect_residual\": " + fmt(r.defect_residual) +
                    ", \"commutant_dim\": " + std::to_string(r.commutant_dim) +
                    ", \"irreducible\": " + (r.irreducible ? "true" : "false") +
                    ", \"witness\": " + (r.witness ? matrix_to_json(*r.witness) : "null") +
                    ", \"blocks\": {\"t11\": " + fmt(r.blocks.t11) +
                    ", \"t12\": " + fmt(r.blocks.t12) + ", \"t21\": " + fmt(r.blocks.t21) +
                    ", \"t22\": " + fmt(r.blocks.t22) + ", \"max\": " + fmt(r.blocks.max()) +
                    "}}";
    return s;
}

}  // namespace bcl
