// Randomized exploration: sample Haar-like unitaries and coordinate
// projections, score them against a target canonical defect matrix, and
// report the best candidate. Deterministic for a fixed seed regardless of
// thread count (each trial reseeds from (seed, trial)).

#pragma once

#include <cstdint>
#include <string>

#include "bcl/matcore.hpp"
#include "bcl/spectrum.hpp"

namespace bcl {

struct SearchReport {
    std::size_t trials = 0;
    std::size_t best_trial = 0;
    double best_residual = 0.0;
    Matrix best_u, best_p;
    std::size_t best_commutant_dim = 0;
};

// Haar-like n x n unitary: Gram-Schmidt of a Gaussian matrix with the
// diagonal phase fixed, reproducible from the seed.
Matrix random_unitary(std::size_t n, std::uint64_t seed);

SearchReport run_search(const DefectSpectrum& target, std::size_t trials,
                        std::uint64_t seed, const Tolerances& tol);

// {"trials": n, "best_trial": i, "best_residual": r, "best_commutant_dim": d,
//  "U": <matrix>, "P": <matrix>}
std::string search_to_json(const SearchReport& r);

}  // namespace bcl
