#include "bcl/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

#ifdef BCL_HAVE_OPENMP
#include <omp.h>
#endif

namespace bcl {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::diagonal(const std::vector<Complex>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, const Matrix& col) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = col(i, 0);
}

bool Matrix::all_finite() const {
    for (const auto& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error("DimensionMismatch", "product shape");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error("DimensionMismatch", "product shape");
    Matrix c(a.rows(), b.cols());
#ifdef BCL_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (a.rows() * b.cols() * a.cols() > 32768)
#endif
    for (long long ii = 0; ii < static_cast<long long>(a.rows()); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix adjoint(const Matrix& m) {
    Matrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("DimensionMismatch", "sum shape");
    Matrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] += b.entries()[i];
    return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("DimensionMismatch", "difference shape");
    Matrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] -= b.entries()[i];
    return c;
}

Matrix scale(Complex s, const Matrix& m) {
    Matrix c = m;
    for (auto& z : c.entries()) z *= s;
    return c;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (const auto& z : m.entries()) v = std::max(v, std::abs(z));
    return v;
}

double frobenius(const Matrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

// --- Hermitian eigendecomposition, cyclic complex Jacobi ---

namespace {

double hermitian_violation(const Matrix& m) {
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
    return v;
}

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eigen_raw(const Matrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols()) throw Error("NonSquare", "hermitian_eigen needs a square matrix");
    if (!m.all_finite()) throw Error("NotFinite", "matrix has NaN/Inf entries");
    if (hermitian_violation(m) > tol.structural)
        throw Error("NotHermitian", "symmetry check failed");

    const std::size_t n = m.rows();
    Matrix a = m;
    // exact symmetrization so rounding in the input cannot accumulate
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    Matrix v = Matrix::identity(n);

    const double fro = frobenius(a);
    const double stop = std::max(1e-300, 1e-15 * fro);
    for (int sweep = 0; sweep < 60 && offdiag_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= stop / (n * n)) continue;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const Complex phase = apq / g;
                const double tau = (beta - alpha) / (2.0 * g);
                const double sgn = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J = [[c*phase, s*phase], [-s, c]]; apply A <- J^H A J, V <- V J
                const Complex jpp = c * phase, jpq = s * phase;
                const Complex jqp = -s, jqq = c;
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * jpp + aiq * jqp;
                    a(i, q) = aip * jpq + aiq * jqq;
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * jpp + viq * jqp;
                    v(i, q) = vip * jpq + viq * jqq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex api = a(p, i), aqi = a(q, i);
                    a(p, i) = std::conj(jpp) * api + std::conj(jqp) * aqi;
                    a(q, i) = std::conj(jpq) * api + std::conj(jqq) * aqi;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition ed;
    ed.values.resize(n);
    ed.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        ed.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) ed.vectors(i, k) = v(i, order[k]);
    }
    return ed;
}

std::vector<EigenGroup> hermitian_eigen(const Matrix& m, const Tolerances& tol) {
    EigenDecomposition ed = hermitian_eigen_raw(m, tol);
    std::vector<EigenGroup> groups;
    const std::size_t n = ed.values.size();
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && ed.values[end - 1] - ed.values[end] <= tol.rank_gap) ++end;
        EigenGroup g;
        g.multiplicity = end - start;
        double sum = 0.0;
        for (std::size_t k = start; k < end; ++k) sum += ed.values[k];
        g.value = sum / static_cast<double>(g.multiplicity);
        g.basis = Matrix(n, g.multiplicity);
        for (std::size_t k = start; k < end; ++k)
            for (std::size_t i = 0; i < n; ++i) g.basis(i, k - start) = ed.vectors(i, k);
        groups.push_back(std::move(g));
        start = end;
    }
    return groups;
}

// --- rank-revealing QR with column pivoting ---

RankRevealing rank_revealing_qr(const Matrix& m, const Tolerances& tol) {
    if (!m.all_finite()) throw Error("NotFinite", "matrix has NaN/Inf entries");
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t steps = std::min(rows, cols);
    Matrix a = m;
    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<double> diag;

    std::vector<double> colnorm(cols, 0.0);
    auto recompute = [&](std::size_t j, std::size_t from) {
        double s = 0.0;
        for (std::size_t i = from; i < rows; ++i) s += std::norm(a(i, j));
        colnorm[j] = s;
    };
    for (std::size_t j = 0; j < cols; ++j) recompute(j, 0);

    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pivot = k;
        for (std::size_t j = k + 1; j < cols; ++j)
            if (colnorm[j] > colnorm[pivot]) pivot = j;
        if (pivot != k) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, pivot));
            std::swap(colnorm[k], colnorm[pivot]);
            std::swap(perm[k], perm[pivot]);
        }
        recompute(k, k);
        const double xnorm = std::sqrt(colnorm[k]);
        diag.push_back(xnorm);
        if (xnorm == 0.0) continue;

        // Householder vector v with v[k] adjusted so that Hx = -phase*|x| e_k.
        Complex akk = a(k, k);
        const double aa = std::abs(akk);
        const Complex phase = aa == 0.0 ? Complex{1.0, 0.0} : akk / aa;
        const Complex newakk = -phase * xnorm;
        a(k, k) = akk - newakk;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < rows; ++i) vnorm2 += std::norm(a(i, k));
        if (vnorm2 > 0.0) {
#ifdef BCL_HAVE_OPENMP
#pragma omp parallel for schedule(static) if ((cols - k) * (rows - k) > 16384)
#endif
            for (long long jj = static_cast<long long>(k) + 1;
                 jj < static_cast<long long>(cols); ++jj) {
                const std::size_t j = static_cast<std::size_t>(jj);
                Complex dot = 0.0;
                for (std::size_t i = k; i < rows; ++i) dot += std::conj(a(i, k)) * a(i, j);
                const Complex f = 2.0 * dot / vnorm2;
                for (std::size_t i = k; i < rows; ++i) a(i, j) -= f * a(i, k);
            }
        }
        a(k, k) = newakk;
        for (std::size_t i = k + 1; i < rows; ++i) a(i, k) = 0.0;
        for (std::size_t j = k + 1; j < cols; ++j) {
            colnorm[j] -= std::norm(a(k, j));
            if (colnorm[j] < 1e-12 * std::norm(a(k, j)) || colnorm[j] < 0.0)
                recompute(j, k + 1);
        }
    }

    RankRevealing rr;
    rr.diag = diag;
    const double d0 = diag.empty() ? 0.0 : diag.front();
    const double threshold = tol.rank_gap * (d0 > 0.0 ? d0 : 1.0);
    std::size_t rank = 0;
    while (rank < diag.size() && diag[rank] > threshold) ++rank;
    rr.rank = rank;
    if (rank == 0)
        rr.gap = 0.0;
    else if (rank < diag.size())
        rr.gap = diag[rank - 1] - diag[rank];
    else
        rr.gap = diag[rank - 1];

    // Null-space basis: for each free column solve R11 z = -R1j, then
    // scatter through the permutation and orthonormalize.
    const std::size_t nullity = cols - rank;
    rr.null_basis = Matrix(cols, nullity);
    std::vector<Matrix> raw;
    for (std::size_t j = rank; j < cols; ++j) {
        Matrix x(cols, 1);
        std::vector<Complex> z(rank, 0.0);
        for (std::size_t i = rank; i-- > 0;) {
            Complex s = -a(i, j);
            for (std::size_t l = i + 1; l < rank; ++l) s -= a(i, l) * z[l];
            z[i] = s / a(i, i);
        }
        for (std::size_t i = 0; i < rank; ++i) x(perm[i], 0) = z[i];
        x(perm[j], 0) = 1.0;
        raw.push_back(std::move(x));
    }
    // modified Gram-Schmidt
    std::size_t out = 0;
    for (auto& x : raw) {
        for (std::size_t c = 0; c < out; ++c) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < cols; ++i)
                dot += std::conj(rr.null_basis(i, c)) * x(i, 0);
            for (std::size_t i = 0; i < cols; ++i) x(i, 0) -= dot * rr.null_basis(i, c);
        }
        double nrm = frobenius(x);
        if (nrm == 0.0) continue;
        for (std::size_t i = 0; i < cols; ++i) rr.null_basis(i, out) = x(i, 0) / nrm;
        ++out;
    }
    return rr;
}

std::size_t nullspace_dim(const Matrix& m, const Tolerances& tol) {
    RankRevealing rr = rank_revealing_qr(m, tol);
    return m.cols() - rr.rank;
}

// --- structural validators ---

StructureCheck validate_structure(const Matrix& m, StructureKind kind, const Tolerances& tol) {
    if (m.rows() != m.cols()) throw Error("NonSquare", "validate_structure needs a square matrix");
    if (!m.all_finite()) throw Error("NotFinite", "matrix has NaN/Inf entries");
    double violation = 0.0;
    const Matrix mh = adjoint(m);
    switch (kind) {
        case StructureKind::Unitary: {
            const Matrix id = Matrix::identity(m.rows());
            violation = std::max(max_abs(subtract(multiply(mh, m), id)),
                                 max_abs(subtract(multiply(m, mh), id)));
            break;
        }
        case StructureKind::Projection: {
            violation = std::max(max_abs(subtract(multiply(m, m), m)),
                                 max_abs(subtract(m, mh)));
            break;
        }
        case StructureKind::SelfAdjointContraction: {
            violation = hermitian_violation(m);
            Matrix sym = scale(0.5, add(m, mh));
            Tolerances loose = tol;
            loose.structural = 1.0;  // sym is Hermitian by construction
            EigenDecomposition ed = hermitian_eigen_raw(sym, loose);
            double radius = 0.0;
            for (double v : ed.values) radius = std::max(radius, std::abs(v));
            violation = std::max(violation, std::max(0.0, radius - 1.0));
            break;
        }
    }
    return {violation <= tol.structural, violation};
}

// --- JSON ---

namespace {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string matrix_to_json(const Matrix& m) {
    std::string s = "{\"rows\": " + std::to_string(m.rows()) +
                    ", \"cols\": " + std::to_string(m.cols()) + ", \"entries\": [";
    for (std::size_t i = 0; i < m.entries().size(); ++i) {
        if (i) s += ", ";
        s += "[" + format_real(m.entries()[i].real()) + ", " +
             format_real(m.entries()[i].imag()) + "]";
    }
    s += "]}";
    return s;
}

Matrix matrix_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows * cols)
        throw Error("MalformedMatrix", "entries.length != rows*cols");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.entries()[i] = Complex(entries[i][0].get<double>(), entries[i][1].get<double>());
    if (!m.all_finite()) throw Error("NotFinite", "matrix has NaN/Inf entries");
    return m;
}

}  // namespace bcl
