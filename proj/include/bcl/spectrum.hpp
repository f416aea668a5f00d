// Defect spectrum model: the data (l1, l1p, {(lambda_i, k_i)}) of a compact
// self-adjoint contraction whose non-zero part is diag(I_l1, D, -I_l1p, -D),
// plus classification of a given matrix into this form and the
// feasibility verdict for realizing it as P-perp - U P-perp U*.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bcl/matcore.hpp"

namespace bcl {

struct InteriorEigenvalue {
    double lambda = 0.0;  // in (0,1)
    std::size_t k = 1;    // multiplicity, shared by lambda and -lambda
};

// Generator rule for countably infinite interior spectra.
struct InfiniteRule {
    std::string rule;            // "harmonic" | "geometric" | "custom-list"
    double ratio = 0.5;          // geometric: lambda_n = ratio^n
    std::vector<double> values;  // custom-list (finite prefix, cycled is not allowed)
    std::size_t k = 1;           // constant multiplicity k_n

    double lambda(std::size_t n) const;  // n = 1, 2, ...
};

struct DefectSpectrum {
    std::size_t l1 = 0;   // dim E_1
    std::size_t l1p = 0;  // dim E_{-1}
    std::vector<InteriorEigenvalue> interior;  // strictly decreasing lambda
    std::optional<InfiniteRule> infinite;

    bool is_infinite() const { return infinite.has_value(); }
    std::size_t total_dim() const;  // finite case only
    void validate() const;          // throws InvalidSpectrum
};

enum class FeasibilityKind { Infeasible, ReducibleOnly, IrreducibleFeasible };
enum class ConstructionHint { None, PartI, PartII, PartIII, Inf, Diff1 };

struct FeasibilityVerdict {
    FeasibilityKind kind = FeasibilityKind::Infeasible;
    std::string reason;
    ConstructionHint hint = ConstructionHint::None;
};

// Reads a self-adjoint compact contraction with trivial kernel into
// spectrum form. Throws NotContraction, KernelNotEmpty, PairingViolation.
DefectSpectrum classify(const Matrix& t, const Tolerances& tol);

// diag(I_l1, D, -I_l1p, -D); throws InfiniteSpectrum.
Matrix canonical_matrix(const DefectSpectrum& s);

FeasibilityVerdict feasibility(const DefectSpectrum& s);

std::string hint_name(ConstructionHint h);
std::string kind_name(FeasibilityKind k);

// Spectrum JSON:
// {"l1": int, "l1p": int, "interior": [{"lambda": r, "k": int}, ...],
//  "infinite": {"rule": ..., "params": {...}} | null}
std::string spectrum_to_json(const DefectSpectrum& s);
DefectSpectrum spectrum_from_json(const std::string& text);

}  // namespace bcl
