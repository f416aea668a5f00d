#include "bcl/bclbuild.hpp"

#include <cmath>

#include "json.hpp"

namespace bcl {

namespace {

// Positive eigenvalue groups in decreasing order; lambda = 1 first when present.
std::vector<FrameGroup> make_groups(const DefectSpectrum& s,
                                    const std::vector<Matrix>& block_unitaries) {
    std::vector<FrameGroup> groups;
    if (s.l1 > 0) groups.push_back({1.0, s.l1, Matrix::identity(s.l1)});
    for (const auto& e : s.interior) groups.push_back({e.lambda, e.k, Matrix::identity(e.k)});
    if (!block_unitaries.empty()) {
        if (block_unitaries.size() != groups.size())
            throw Error("DimensionMismatch",
                        "one block unitary per positive eigenvalue group expected");
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (block_unitaries[i].rows() != groups[i].k ||
                block_unitaries[i].cols() != groups[i].k)
                throw Error("DimensionMismatch", "block unitary has wrong size");
            groups[i].u = block_unitaries[i];
        }
    }
    return groups;
}

}  // namespace

Matrix Frame::projection() const {
    return multiply(ft, adjoint(ft));
}

Frame build_frame(const DefectSpectrum& s, const std::vector<Matrix>& block_unitaries,
                  const Tolerances& tol) {
    if (s.is_infinite()) throw Error("InfiniteSpectrum", "build_frame needs a finite spectrum");
    s.validate();
    if (s.l1 != s.l1p)
        throw Error("PreconditionViolation", "frames require dim E_1 = dim E_-1");

    Frame frame;
    frame.spectrum = s;
    frame.groups = make_groups(s, block_unitaries);
    for (const auto& g : frame.groups)
        if (!validate_structure(g.u, StructureKind::Unitary, tol).pass)
            throw Error("NotUnitary", "frame block unitary is not unitary");

    const std::size_t dim = s.total_dim();
    std::size_t m = 0;
    for (const auto& g : frame.groups) m += g.k;
    const std::size_t neg_base = m;  // positive section is E_1 then the interior groups

    frame.f = Matrix(dim, m);
    frame.ft = Matrix(dim, m);
    std::size_t off = 0;  // common offset within the positive / negative sections
    std::size_t col = 0;
    for (const auto& g : frame.groups) {
        const double a = std::sqrt(0.5 * (1.0 + g.lambda));
        const double b = std::sqrt(0.5 * (1.0 - g.lambda));
        for (std::size_t t = 0; t < g.k; ++t, ++col) {
            frame.f(off + t, col) = a;
            frame.ft(off + t, col) = b;
            for (std::size_t r = 0; r < g.k; ++r) {
                frame.f(neg_base + off + r, col) = b * g.u(r, t);
                frame.ft(neg_base + off + r, col) = -a * g.u(r, t);
            }
        }
        off += g.k;
    }
    return frame;
}

Frame build_frame(const DefectSpectrum& s, const Tolerances& tol) {
    return build_frame(s, {}, tol);
}

namespace {

// Shared assembler for parts (i) and (ii): the weighted-shift action on the
// frame basis, cycling through the groups, with an optional unimodular twist
// on the image of the first f column.
BCLTriple assemble_shift_unitary(const DefectSpectrum& s, const Frame& frame, Complex twist,
                                 const std::string& provenance) {
    const std::size_t m = frame.pair_count();
    const std::size_t dim = s.total_dim();
    const std::size_t ngroups = frame.groups.size();

    std::vector<std::size_t> base(ngroups, 0);
    for (std::size_t i = 1; i < ngroups; ++i) base[i] = base[i - 1] + frame.groups[i - 1].k;

    // U in the ordered frame basis (f columns then ft columns)
    Matrix uf(2 * m, 2 * m);
    for (std::size_t i = 0; i < ngroups; ++i) {
        const double lam = frame.groups[i].lambda;
        const double rho = std::sqrt(std::max(0.0, 1.0 - lam * lam));
        for (std::size_t t = 0; t < frame.groups[i].k; ++t) {
            const std::size_t c = base[i] + t;
            const Complex scale = (c == 0) ? twist : Complex{1.0};
            uf(c, c) = scale * rho;
            uf(m + c, c) = scale * (-lam);
            std::size_t tc;  // target column of the ft action
            double tlam, trho;
            if (t + 1 < frame.groups[i].k) {
                tc = c + 1;
                tlam = lam;
                trho = rho;
            } else {
                const std::size_t j = (i + 1) % ngroups;
                tc = base[j];
                tlam = frame.groups[j].lambda;
                trho = std::sqrt(std::max(0.0, 1.0 - tlam * tlam));
            }
            uf(tc, m + c) = tlam;
            uf(m + tc, m + c) = trho;
        }
    }

    // change to eigenbasis coordinates: U = F uf F^*
    Matrix fr(dim, 2 * m);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t c = 0; c < m; ++c) {
            fr(i, c) = frame.f(i, c);
            fr(i, m + c) = frame.ft(i, c);
        }
    BCLTriple triple;
    triple.dim = dim;
    triple.u = multiply(multiply(fr, uf), adjoint(fr));
    triple.p = frame.projection();
    triple.provenance = provenance;
    return triple;
}

}  // namespace

BCLTriple construct_part_i(const DefectSpectrum& s, const Frame& frame, const Tolerances&) {
    if (s.is_infinite()) throw Error("InfiniteSpectrum", "part (i) needs a finite spectrum");
    if (s.l1 != s.l1p)
        throw Error("PreconditionViolation", "part (i) requires dim E_1 = dim E_-1");
    if (frame.groups.size() < 2)
        throw Error("PreconditionViolation",
                    "part (i) requires at least two distinct positive eigenvalues");
    return assemble_shift_unitary(s, frame, Complex{1.0}, "part-i");
}

BCLTriple construct_part_ii(const DefectSpectrum& s, const Frame& frame, Complex alpha,
                            const Tolerances&) {
    if (s.is_infinite()) throw Error("InfiniteSpectrum", "part (ii) needs a finite spectrum");
    if (s.l1 != 0 || s.l1p != 0 || s.interior.size() != 1)
        throw Error("PreconditionViolation",
                    "part (ii) requires a single positive eigenvalue in (0,1)");
    if (std::abs(std::abs(alpha) - 1.0) > 1e-12 || std::abs(alpha - Complex{1.0}) <= 1e-12)
        throw Error("InvalidTwist", "alpha must be unimodular and different from 1");
    return assemble_shift_unitary(s, frame, alpha, "part-ii");
}

PartIIIResult construct_part_iii(const DefectSpectrum& s, const Tolerances&) {
    if (s.is_infinite()) throw Error("InfiniteSpectrum", "part (iii) needs a finite spectrum");
    if (!s.interior.empty() || s.l1 != s.l1p || s.l1 == 0)
        throw Error("PreconditionViolation",
                    "part (iii) requires 1 as the only positive eigenvalue, dim E_1 = dim E_-1 >= 1");
    const std::size_t l = s.l1;
    const std::size_t dim = 2 * l;
    PartIIIResult res;
    res.triple.dim = dim;
    res.triple.u = Matrix(dim, dim);
    // U = [[0, A], [B, 0]] with A = B = I
    for (std::size_t i = 0; i < l; ++i) {
        res.triple.u(i, l + i) = 1.0;
        res.triple.u(l + i, i) = 1.0;
    }
    res.triple.p = Matrix(dim, dim);
    for (std::size_t i = 0; i < l; ++i) res.triple.p(l + i, l + i) = 1.0;
    res.triple.provenance = "part-iii";
    if (l >= 2) {
        // W = span{v1} (+) span{v2} built from the eigenvector (e1, e1) of U
        Matrix w(dim, 2);
        w(0, 0) = 1.0;
        w(l, 1) = 1.0;
        res.witness = w;
    }
    return res;
}

double BlockResiduals::max() const {
    return std::max(std::max(t11, t12), std::max(t21, t22));
}

BlockResiduals verify_block_system(const BCLTriple& t, const DefectSpectrum& s,
                                   const Frame& frame) {
    if (t.dim != s.total_dim())
        throw Error("DimensionMismatch", "triple and spectrum dimensions differ");
    const Matrix tc = canonical_matrix(s);
    const Matrix fa = adjoint(frame.f), fta = adjoint(frame.ft);
    const Matrix u11 = multiply(fa, multiply(t.u, frame.f));
    const Matrix u21 = multiply(fta, multiply(t.u, frame.f));
    const Matrix t11 = multiply(fa, multiply(tc, frame.f));
    const Matrix t12 = multiply(fa, multiply(tc, frame.ft));
    const Matrix t21 = multiply(fta, multiply(tc, frame.f));
    const Matrix t22 = multiply(fta, multiply(tc, frame.ft));
    const std::size_t m = frame.pair_count();
    BlockResiduals r;
    r.t11 = max_abs(subtract(t11, subtract(Matrix::identity(m), multiply(u11, adjoint(u11)))));
    r.t12 = max_abs(add(t12, multiply(u11, adjoint(u21))));
    r.t21 = max_abs(add(t21, multiply(u21, adjoint(u11))));
    r.t22 = max_abs(add(t22, multiply(u21, adjoint(u21))));
    return r;
}

std::string triple_to_json(const BCLTriple& t) {
    return "{\"dim\": " + std::to_string(t.dim) + ", \"U\": " + matrix_to_json(t.u) +
           ", \"P\": " + matrix_to_json(t.p) + ", \"provenance\": \"" + t.provenance + "\"}";
}

BCLTriple triple_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BCLTriple t;
    t.dim = j.at("dim").get<std::size_t>();
    t.u = matrix_from_json(j.at("U").dump());
    t.p = matrix_from_json(j.at("P").dump());
    t.provenance = j.value("provenance", "external");
    if (t.u.rows() != t.dim || t.p.rows() != t.dim)
        throw Error("DimensionMismatch", "triple dim does not match matrices");
    return t;
}

}  // namespace bcl
