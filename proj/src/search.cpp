#include "bcl/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "bcl/verify.hpp"

namespace bcl {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Matrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (auto& e : m.entries()) e = Complex(g(rng), g(rng));
    return m;
}

// Gram-Schmidt columns, fixing each diagonal phase so the result is a
// deterministic function of the input
Matrix orthonormalize(Matrix m) {
    const std::size_t n = m.rows();
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                Complex ip{};
                for (std::size_t i = 0; i < n; ++i) ip += std::conj(m(i, k)) * m(i, j);
                for (std::size_t i = 0; i < n; ++i) m(i, j) -= ip * m(i, k);
            }
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += std::norm(m(i, j));
        r = std::sqrt(r);
        Complex phase = m(j, j);
        phase = std::abs(phase) > 0 ? phase / std::abs(phase) : Complex{1.0};
        const Complex scale = std::conj(phase) / r;
        for (std::size_t i = 0; i < n; ++i) m(i, j) *= scale;
    }
    return m;
}

}  // namespace

Matrix random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return orthonormalize(gaussian_matrix(n, rng));
}

SearchReport run_search(const DefectSpectrum& target, std::size_t trials,
                        std::uint64_t seed, const Tolerances& tol) {
    if (target.is_infinite())
        throw Error("InfiniteSpectrum", "search needs a finite target spectrum");
    if (trials == 0) throw Error("PreconditionViolation", "trials must be positive");
    const Matrix tc = canonical_matrix(target);
    const std::size_t n = target.total_dim();

    std::vector<double> residuals(trials);
    std::vector<Matrix> us(trials), ps(trials);

#ifdef BCL_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
        std::seed_seq sq{seed, static_cast<std::uint64_t>(t)};
        std::mt19937_64 rng(sq);
        const Matrix u = orthonormalize(gaussian_matrix(n, rng));
        // coordinate projection of random rank
        std::uniform_int_distribution<std::size_t> rank_dist(0, n);
        const std::size_t rank = rank_dist(rng);
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        Matrix p(n, n);
        for (std::size_t i = 0; i < rank; ++i) p(idx[i], idx[i]) = 1.0;

        const Matrix pperp = subtract(Matrix::identity(n), p);
        const Matrix conj = multiply_serial(multiply_serial(u, pperp), adjoint(u));
        residuals[t] = max_abs(subtract(subtract(pperp, conj), tc));
        us[t] = u;
        ps[t] = p;
    }

    SearchReport rep;
    rep.trials = trials;
    rep.best_trial = 0;
    rep.best_residual = residuals[0];
    for (std::size_t t = 1; t < trials; ++t)
        if (residuals[t] < rep.best_residual) {
            rep.best_residual = residuals[t];
            rep.best_trial = t;
        }
    rep.best_u = us[rep.best_trial];
    rep.best_p = ps[rep.best_trial];
    rep.best_commutant_dim = commutant_dim(rep.best_u, rep.best_p, tol).dim;
    return rep;
}

std::string search_to_json(const SearchReport& r) {
    return "{\"trials\": " + std::to_string(r.trials) +
           ", \"best_trial\": " + std::to_string(r.best_trial) +
           ", \"best_residual\": " + fmt(r.best_residual) +
           ", \"best_commutant_dim\": " + std::to_string(r.best_commutant_dim) +
           ", \"U\": " + matrix_to_json(r.best_u) + ", \"P\": " + matrix_to_json(r.best_p) +
           "}";
}

}  // namespace bcl
