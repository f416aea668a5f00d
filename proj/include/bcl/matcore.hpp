// Dense complex linear algebra kernel: products, adjoints, norms,
// Hermitian eigendecomposition (cyclic Jacobi), rank-revealing QR with
// column pivoting, and structural validators.
//
// Matrix products run OpenMP-parallel when built with OpenMP; a serial
// reference kernel is kept for testing and benchmarking.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcl {

using Complex = std::complex<double>;

// Error with a stable machine-readable code ("NotHermitian", "NonSquare", ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct Tolerances {
    double structural = 1e-12;
    double residual = 1e-10;
    double rank_gap = 1e-8;
};

// Row-major dense complex matrix. All entries must stay finite.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& d);
    static Matrix diagonal(const std::vector<Complex>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Complex>& entries() { return a_; }
    const std::vector<Complex>& entries() const { return a_; }

    Matrix column(std::size_t j) const;
    void set_column(std::size_t j, const Matrix& col);

    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> a_;
};

// --- kernels ---

// Parallel product (OpenMP over rows when available).
Matrix multiply(const Matrix& a, const Matrix& b);
// Serial reference kernel, kept independent of the parallel path.
Matrix multiply_serial(const Matrix& a, const Matrix& b);

Matrix adjoint(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(Complex s, const Matrix& m);

double max_abs(const Matrix& m);
double frobenius(const Matrix& m);

// --- Hermitian eigendecomposition ---

struct EigenGroup {
    double value = 0.0;        // representative eigenvalue of the group
    std::size_t multiplicity = 0;
    Matrix basis;              // n x multiplicity, orthonormal columns
};

struct EigenDecomposition {
    std::vector<double> values;  // descending
    Matrix vectors;              // unitary, columns are eigenvectors
};

// Cyclic two-sided Jacobi; throws NotHermitian / NonSquare.
EigenDecomposition hermitian_eigen_raw(const Matrix& m, const Tolerances& tol);

// Eigenvalues within tol.rank_gap of each other are merged into one group.
std::vector<EigenGroup> hermitian_eigen(const Matrix& m, const Tolerances& tol);

// --- rank-revealing factorization ---

struct RankRevealing {
    std::size_t rank = 0;
    std::vector<double> diag;  // |R_kk| of the pivoted QR, decreasing
    Matrix null_basis;         // cols x (cols - rank), orthonormal columns
    double gap = 0.0;          // smallest kept |R_kk| minus largest dropped
};

RankRevealing rank_revealing_qr(const Matrix& m, const Tolerances& tol);

std::size_t nullspace_dim(const Matrix& m, const Tolerances& tol);

// --- structural validators ---

enum class StructureKind { Unitary, Projection, SelfAdjointContraction };

struct StructureCheck {
    bool pass = false;
    double violation = 0.0;
};

StructureCheck validate_structure(const Matrix& m, StructureKind kind, const Tolerances& tol);

// --- JSON (matrix format shared by all modules) ---
// {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major,
// reals printed with 17 significant digits.

std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

}  // namespace bcl
