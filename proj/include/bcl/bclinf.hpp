// Infinite-dimensional constructions as exact lazy operators on finitely
// supported sequences: the equal-dimension construction over a bijection
// g: Z -> N, the dimensions-differing-by-one construction, windowed defect
// verification, and finite orbit-reachability proxies.

#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bcl/matcore.hpp"
#include "bcl/spectrum.hpp"

namespace bcl {

enum class Slot { F, FT };

struct BasisIndex {
    long long group = 0;  // Z label in Inf mode; n >= 0 in Diff1 mode
    Slot slot = Slot::F;
    std::size_t t = 1;    // 1-based position within the group

    auto operator<=>(const BasisIndex&) const = default;
};

using FiniteVector = std::map<BasisIndex, Complex>;

struct ActionTerm {
    BasisIndex index;
    Complex coeff;
};

enum class InfMode { Inf, Diff1 };

// Basis-indexed operator; every basis vector maps to at most two terms.
class LazyOperator {
public:
    using Action = std::function<std::vector<ActionTerm>(const BasisIndex&)>;

    LazyOperator() = default;
    LazyOperator(std::string name, Action action)
        : name_(std::move(name)), action_(std::move(action)) {}

    const std::string& name() const { return name_; }
    std::vector<ActionTerm> operator()(const BasisIndex& idx) const { return action_(idx); }

private:
    std::string name_;
    Action action_;
};

struct LazyPair {
    InfMode mode = InfMode::Inf;
    LazyOperator u, ustar, p, pperp, defect;
    // eigenvalue and multiplicity of a group label, and index validity
    std::function<double(long long)> lambda_of;
    std::function<std::size_t(long long)> k_of;
    std::function<bool(const BasisIndex&)> valid;
    std::size_t k0 = 0;  // Diff1 only
};

// Bijection Z -> N; the default interleaves 0,1,-1,2,-2,... onto 1,2,3,4,5,...
using Bijection = std::function<std::size_t(long long)>;
Bijection default_bijection();

LazyPair make_inf(const InfiniteRule& rule, std::size_t l1, const Bijection& g);
LazyPair make_inf(const InfiniteRule& rule, std::size_t l1);
LazyPair make_diff1(const InfiniteRule& rule, std::size_t k0);

FiniteVector apply(const LazyOperator& op, const FiniteVector& v);
double norm(const FiniteVector& v);

// Deterministic window enumeration: groups by |n| ascending (nonnegative
// first), slot F before FT, t ascending.
std::vector<BasisIndex> enumerate_window(const LazyPair& pair, std::size_t count);

// max |(Pperp - U Pperp U*) x - T x| coefficient over the first `window`
// basis vectors.
double windowed_defect_check(const LazyPair& pair, std::size_t window);

// Index-level closure of {start} under U, U*, P, Pperp, at most `depth` rounds.
std::set<BasisIndex> orbit_reach(const LazyPair& pair, const BasisIndex& start,
                                 std::size_t depth);

std::string index_to_json(const BasisIndex& idx);

}  // namespace bcl
