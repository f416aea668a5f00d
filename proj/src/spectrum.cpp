#include "bcl/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace bcl {

double InfiniteRule::lambda(std::size_t n) const {
    if (rule == "harmonic") return 1.0 / static_cast<double>(n + 1);
    if (rule == "geometric") return std::pow(ratio, static_cast<double>(n));
    if (rule == "custom-list") {
        if (n == 0 || n > values.size())
            throw Error("IndexOutOfRule", "custom-list has no eigenvalue at index " +
                                              std::to_string(n));
        return values[n - 1];
    }
    throw Error("InvalidSpectrum", "unknown infinite rule '" + rule + "'");
}

std::size_t DefectSpectrum::total_dim() const {
    if (is_infinite()) throw Error("InfiniteSpectrum", "total_dim of infinite spectrum");
    std::size_t d = l1 + l1p;
    for (const auto& e : interior) d += 2 * e.k;
    return d;
}

void DefectSpectrum::validate() const {
    double prev = 1.0;
    for (const auto& e : interior) {
        if (!(e.lambda > 0.0 && e.lambda < 1.0))
            throw Error("InvalidSpectrum", "interior eigenvalue outside (0,1)");
        if (!(e.lambda < prev))
            throw Error("InvalidSpectrum", "interior eigenvalues must strictly decrease");
        if (e.k < 1) throw Error("InvalidSpectrum", "multiplicity must be positive");
        prev = e.lambda;
    }
    if (infinite && infinite->k < 1)
        throw Error("InvalidSpectrum", "infinite rule multiplicity must be positive");
}

DefectSpectrum classify(const Matrix& t, const Tolerances& tol) {
    StructureCheck sc = validate_structure(t, StructureKind::SelfAdjointContraction, tol);
    if (!sc.pass && sc.violation > tol.residual)
        throw Error("NotContraction", "self-adjoint contraction check failed, violation " +
                                           std::to_string(sc.violation));
    std::vector<EigenGroup> groups = hermitian_eigen(t, tol);

    DefectSpectrum s;
    struct Signed {
        double lambda;
        std::size_t mult;
    };
    std::vector<Signed> pos, neg;
    for (const auto& g : groups) {
        double v = g.value;
        if (std::abs(v - 1.0) <= tol.rank_gap) {
            s.l1 += g.multiplicity;
        } else if (std::abs(v + 1.0) <= tol.rank_gap) {
            s.l1p += g.multiplicity;
        } else if (std::abs(v) <= tol.rank_gap) {
            throw Error("KernelNotEmpty", "0 is an eigenvalue; classify expects the non-zero part");
        } else if (v > 0.0) {
            pos.push_back({v, g.multiplicity});
        } else {
            neg.push_back({-v, g.multiplicity});
        }
    }
    // groups arrive sorted descending, so pos is decreasing and neg increasing
    std::reverse(neg.begin(), neg.end());
    if (pos.size() != neg.size())
        throw Error("PairingViolation", "positive and negative interior spectra differ");
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (std::abs(pos[i].lambda - neg[i].lambda) > tol.rank_gap || pos[i].mult != neg[i].mult)
            throw Error("PairingViolation",
                        "dim E_lambda != dim E_{-lambda} near lambda = " +
                            std::to_string(pos[i].lambda));
        s.interior.push_back({0.5 * (pos[i].lambda + neg[i].lambda), pos[i].mult});
    }
    s.validate();
    return s;
}

Matrix canonical_matrix(const DefectSpectrum& s) {
    if (s.is_infinite()) throw Error("InfiniteSpectrum", "canonical_matrix needs a finite spectrum");
    s.validate();
    std::vector<double> d;
    d.insert(d.end(), s.l1, 1.0);
    for (const auto& e : s.interior) d.insert(d.end(), e.k, e.lambda);
    d.insert(d.end(), s.l1p, -1.0);
    for (const auto& e : s.interior) d.insert(d.end(), e.k, -e.lambda);
    return Matrix::diagonal(d);
}

FeasibilityVerdict feasibility(const DefectSpectrum& s) {
    s.validate();
    FeasibilityVerdict v;
    if (s.is_infinite()) {
        const std::size_t big = std::max(s.l1, s.l1p), small = std::min(s.l1, s.l1p);
        if (big == small) {
            v = {FeasibilityKind::IrreducibleFeasible, "equal-extreme-dimensions", ConstructionHint::Inf};
        } else if (big - small == 1) {
            v = {FeasibilityKind::IrreducibleFeasible, "extreme-dimensions-differ-by-one", ConstructionHint::Diff1};
        } else {
            v = {FeasibilityKind::ReducibleOnly, "open", ConstructionHint::None};
        }
        return v;
    }
    if (s.l1 != s.l1p) {
        return {FeasibilityKind::Infeasible, "dim E_1 != dim E_-1", ConstructionHint::None};
    }
    const std::size_t distinct_positive = s.interior.size() + (s.l1 > 0 ? 1 : 0);
    if (distinct_positive >= 2)
        return {FeasibilityKind::IrreducibleFeasible, "multiple-positive-eigenvalues", ConstructionHint::PartI};
    if (distinct_positive == 0)
        return {FeasibilityKind::ReducibleOnly, "empty-spectrum", ConstructionHint::None};
    if (!s.interior.empty()) {
        // single interior eigenvalue; k = 1 is the 2x2 simple block, still irreducible
        return {FeasibilityKind::IrreducibleFeasible, "single-interior-eigenvalue", ConstructionHint::PartII};
    }
    // 1 is the only positive eigenvalue
    if (s.l1 == 1)
        return {FeasibilityKind::IrreducibleFeasible, "simple-extreme-eigenvalue", ConstructionHint::PartIII};
    return {FeasibilityKind::ReducibleOnly, "extreme-eigenvalue-multiplicity", ConstructionHint::None};
}

std::string hint_name(ConstructionHint h) {
    switch (h) {
        case ConstructionHint::None: return "none";
        case ConstructionHint::PartI: return "part-i";
        case ConstructionHint::PartII: return "part-ii";
        case ConstructionHint::PartIII: return "part-iii";
        case ConstructionHint::Inf: return "inf";
        case ConstructionHint::Diff1: return "diff1";
    }
    return "none";
}

std::string kind_name(FeasibilityKind k) {
    switch (k) {
        case FeasibilityKind::Infeasible: return "Infeasible";
        case FeasibilityKind::ReducibleOnly: return "ReducibleOnly";
        case FeasibilityKind::IrreducibleFeasible: return "IrreducibleFeasible";
    }
    return "Infeasible";
}

std::string spectrum_to_json(const DefectSpectrum& s) {
    nlohmann::ordered_json j;
    j["l1"] = s.l1;
    j["l1p"] = s.l1p;
    j["interior"] = nlohmann::ordered_json::array();
    for (const auto& e : s.interior)
        j["interior"].push_back({{"lambda", e.lambda}, {"k", e.k}});
    if (s.infinite) {
        nlohmann::ordered_json params;
        params["k"] = s.infinite->k;
        if (s.infinite->rule == "geometric") params["ratio"] = s.infinite->ratio;
        if (s.infinite->rule == "custom-list") params["values"] = s.infinite->values;
        j["infinite"] = {{"rule", s.infinite->rule}, {"params", params}};
    } else {
        j["infinite"] = nullptr;
    }
    return j.dump();
}

DefectSpectrum spectrum_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DefectSpectrum s;
    s.l1 = j.at("l1").get<std::size_t>();
    s.l1p = j.at("l1p").get<std::size_t>();
    for (const auto& e : j.at("interior"))
        s.interior.push_back({e.at("lambda").get<double>(), e.at("k").get<std::size_t>()});
    if (j.contains("infinite") && !j["infinite"].is_null()) {
        InfiniteRule r;
        r.rule = j["infinite"].at("rule").get<std::string>();
        if (j["infinite"].contains("params")) {
            const auto& p = j["infinite"]["params"];
            if (p.contains("k")) r.k = p["k"].get<std::size_t>();
            if (p.contains("ratio")) r.ratio = p["ratio"].get<double>();
            if (p.contains("values")) r.values = p["values"].get<std::vector<double>>();
        }
        s.infinite = r;
    }
    s.validate();
    return s;
}

}  // namespace bcl
