#include "bcl/bclinf.hpp"

#include <cmath>

namespace bcl {

namespace {

constexpr double kDropEps = 0.0;  // exact rule coefficients; drop literal zeros only

void push(std::vector<ActionTerm>& out, BasisIndex idx, Complex c) {
    if (std::abs(c) > kDropEps) out.push_back({idx, c});
}

double rho_of(double lambda) { return std::sqrt(std::max(0.0, 1.0 - lambda * lambda)); }

}  // namespace

Bijection default_bijection() {
    return [](long long n) -> std::size_t {
        return n >= 1 ? static_cast<std::size_t>(2 * n)
                      : static_cast<std::size_t>(1 - 2 * n);
    };
}

LazyPair make_inf(const InfiniteRule& rule, std::size_t l1, const Bijection& g) {
    // sampled bijectivity check on a window of Z
    {
        std::set<std::size_t> seen;
        for (long long n = -32; n <= 32; ++n) {
            const std::size_t v = g(n);
            if (v < 1 || !seen.insert(v).second)
                throw Error("NotBijection", "g is not injective into N on the sampled window");
        }
    }
    auto lam_nat = [rule, l1](std::size_t m) -> double {
        if (l1 > 0) return m == 1 ? 1.0 : rule.lambda(m - 1);
        return rule.lambda(m);
    };
    auto k_nat = [rule, l1](std::size_t m) -> std::size_t {
        if (l1 > 0 && m == 1) return l1;
        return rule.k;
    };

    LazyPair pair;
    pair.mode = InfMode::Inf;
    pair.lambda_of = [=](long long n) { return lam_nat(g(n)); };
    pair.k_of = [=](long long n) { return k_nat(g(n)); };
    auto lam = pair.lambda_of;
    auto kof = pair.k_of;
    pair.valid = [kof](const BasisIndex& i) { return i.t >= 1 && i.t <= kof(i.group); };

    pair.u = LazyOperator("U", [lam, kof](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        const double l = lam(i.group), r = rho_of(l);
        if (i.slot == Slot::F) {
            push(out, {i.group, Slot::F, i.t}, r);
            push(out, {i.group, Slot::FT, i.t}, -l);
        } else if (i.t < kof(i.group)) {
            push(out, {i.group, Slot::F, i.t + 1}, l);
            push(out, {i.group, Slot::FT, i.t + 1}, r);
        } else {
            const double l2 = lam(i.group + 1), r2 = rho_of(l2);
            push(out, {i.group + 1, Slot::F, 1}, l2);
            push(out, {i.group + 1, Slot::FT, 1}, r2);
        }
        return out;
    });

    // predecessor of an FT chain position: (n, t-1), crossing to group n-1
    auto pred_ft = [kof](const BasisIndex& i) -> BasisIndex {
        if (i.t >= 2) return {i.group, Slot::FT, i.t - 1};
        return {i.group - 1, Slot::FT, kof(i.group - 1)};
    };
    pair.ustar = LazyOperator("U*", [lam, pred_ft](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        const double l = lam(i.group), r = rho_of(l);
        if (i.slot == Slot::F) {
            push(out, {i.group, Slot::F, i.t}, r);
            push(out, pred_ft(i), l);
        } else {
            push(out, {i.group, Slot::F, i.t}, -l);
            push(out, pred_ft({i.group, Slot::FT, i.t}), r);
        }
        return out;
    });

    pair.p = LazyOperator("P", [](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.slot == Slot::FT) out.push_back({i, 1.0});
        return out;
    });
    pair.pperp = LazyOperator("Pperp", [](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.slot == Slot::F) out.push_back({i, 1.0});
        return out;
    });
    pair.defect = LazyOperator("T", [lam](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        const double l = lam(i.group), r = rho_of(l);
        if (i.slot == Slot::F) {
            push(out, {i.group, Slot::F, i.t}, l * l);
            push(out, {i.group, Slot::FT, i.t}, l * r);
        } else {
            push(out, {i.group, Slot::F, i.t}, l * r);
            push(out, {i.group, Slot::FT, i.t}, -l * l);
        }
        return out;
    });
    return pair;
}

LazyPair make_inf(const InfiniteRule& rule, std::size_t l1) {
    return make_inf(rule, l1, default_bijection());
}

LazyPair make_diff1(const InfiniteRule& rule, std::size_t k0) {
    auto lam = [rule](long long n) -> double {
        return n == 0 ? 1.0 : rule.lambda(static_cast<std::size_t>(n));
    };
    auto kof = [rule, k0](long long n) -> std::size_t {
        return n == 0 ? k0 : rule.k;
    };

    LazyPair pair;
    pair.mode = InfMode::Diff1;
    pair.k0 = k0;
    pair.lambda_of = lam;
    pair.k_of = kof;
    pair.valid = [kof, k0](const BasisIndex& i) {
        if (i.group < 0 || i.t < 1) return false;
        if (i.group == 0)
            return i.slot == Slot::F ? i.t <= k0 : i.t <= k0 + 1;
        return i.t <= kof(i.group);
    };

    pair.u = LazyOperator("U", [lam, kof, k0](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.group == 0) {
            if (i.slot == Slot::F) {
                push(out, {0, Slot::FT, i.t + 1}, 1.0);
            } else if (i.t <= k0) {
                push(out, {0, Slot::F, i.t}, 1.0);
            } else {
                const double l1v = lam(1), r1 = rho_of(l1v);
                push(out, {1, Slot::F, 1}, l1v);
                push(out, {1, Slot::FT, 1}, r1);
            }
            return out;
        }
        const double l = lam(i.group), r = rho_of(l);
        if (i.slot == Slot::F) {
            if (i.t < kof(i.group)) {
                push(out, {i.group, Slot::F, i.t + 1}, r);
                push(out, {i.group, Slot::FT, i.t + 1}, -l);
            } else {
                const double lp = lam(i.group - 1), rp = rho_of(lp);
                push(out, {i.group - 1, Slot::F, 1}, rp);
                push(out, {i.group - 1, Slot::FT, 1}, -lp);
            }
        } else {
            if (i.t < kof(i.group)) {
                push(out, {i.group, Slot::F, i.t + 1}, l);
                push(out, {i.group, Slot::FT, i.t + 1}, r);
            } else {
                const double ln = lam(i.group + 1), rn = rho_of(ln);
                push(out, {i.group + 1, Slot::F, 1}, ln);
                push(out, {i.group + 1, Slot::FT, 1}, rn);
            }
        }
        return out;
    });

    pair.ustar = LazyOperator("U*", [lam, kof, k0](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.group == 0) {
            if (i.slot == Slot::F) {
                push(out, {0, Slot::FT, i.t}, 1.0);
            } else if (i.t >= 2) {
                push(out, {0, Slot::F, i.t - 1}, 1.0);
            } else {
                push(out, {1, Slot::F, kof(1)}, -1.0);
            }
            return out;
        }
        const double l = lam(i.group), r = rho_of(l);
        // FT predecessor feeding group n position 1
        const BasisIndex prev = i.group >= 2
                                    ? BasisIndex{i.group - 1, Slot::FT, kof(i.group - 1)}
                                    : BasisIndex{0, Slot::FT, k0 + 1};
        if (i.slot == Slot::F) {
            if (i.t >= 2) {
                push(out, {i.group, Slot::F, i.t - 1}, r);
                push(out, {i.group, Slot::FT, i.t - 1}, l);
            } else {
                push(out, {i.group + 1, Slot::F, kof(i.group + 1)}, r);
                push(out, prev, l);
            }
        } else {
            if (i.t >= 2) {
                push(out, {i.group, Slot::F, i.t - 1}, -l);
                push(out, {i.group, Slot::FT, i.t - 1}, r);
            } else {
                push(out, {i.group + 1, Slot::F, kof(i.group + 1)}, -l);
                push(out, prev, r);
            }
        }
        return out;
    });

    pair.p = LazyOperator("P", [](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.slot == Slot::FT) out.push_back({i, 1.0});
        return out;
    });
    pair.pperp = LazyOperator("Pperp", [](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        if (i.slot == Slot::F) out.push_back({i, 1.0});
        return out;
    });
    pair.defect = LazyOperator("T", [lam](const BasisIndex& i) {
        std::vector<ActionTerm> out;
        const double l = lam(i.group), r = rho_of(l);
        if (i.slot == Slot::F) {
            push(out, {i.group, Slot::F, i.t}, l * l);
            push(out, {i.group, Slot::FT, i.t}, l * r);
        } else {
            push(out, {i.group, Slot::F, i.t}, l * r);
            push(out, {i.group, Slot::FT, i.t}, -l * l);
        }
        return out;
    });
    return pair;
}

FiniteVector apply(const LazyOperator& op, const FiniteVector& v) {
    FiniteVector out;
    for (const auto& [idx, coeff] : v) {
        if (coeff == Complex{}) continue;
        for (const auto& term : op(idx)) {
            Complex& slot = out[term.index];
            slot += coeff * term.coeff;
            if (slot == Complex{}) out.erase(term.index);
        }
    }
    return out;
}

double norm(const FiniteVector& v) {
    double s = 0.0;
    for (const auto& [idx, c] : v) s += std::norm(c);
    return std::sqrt(s);
}

std::vector<BasisIndex> enumerate_window(const LazyPair& pair, std::size_t count) {
    std::vector<BasisIndex> out;
    auto emit_group = [&](long long n) {
        const std::size_t kf = pair.mode == InfMode::Diff1 && n == 0 ? pair.k0 : pair.k_of(n);
        const std::size_t kft = pair.mode == InfMode::Diff1 && n == 0 ? pair.k0 + 1 : pair.k_of(n);
        for (std::size_t t = 1; t <= kf && out.size() < count; ++t)
            out.push_back({n, Slot::F, t});
        for (std::size_t t = 1; t <= kft && out.size() < count; ++t)
            out.push_back({n, Slot::FT, t});
    };
    if (pair.mode == InfMode::Inf) {
        for (long long a = 0; out.size() < count; ++a) {
            emit_group(a);
            if (out.size() < count && a > 0) emit_group(-a);
        }
    } else {
        for (long long n = 0; out.size() < count; ++n) emit_group(n);
    }
    return out;
}

double windowed_defect_check(const LazyPair& pair, std::size_t window) {
    if (window < 1) throw Error("PreconditionViolation", "window must be positive");
    double worst = 0.0;
    for (const BasisIndex& idx : enumerate_window(pair, window)) {
        FiniteVector x{{idx, 1.0}};
        FiniteVector lhs = bcl::apply(pair.pperp, x);
        FiniteVector conj = bcl::apply(pair.u, bcl::apply(pair.pperp, bcl::apply(pair.ustar, x)));
        FiniteVector rhs = bcl::apply(pair.defect, x);
        FiniteVector res;
        for (const auto& [i, c] : lhs) res[i] += c;
        for (const auto& [i, c] : conj) res[i] -= c;
        for (const auto& [i, c] : rhs) res[i] -= c;
        for (const auto& [i, c] : res) worst = std::max(worst, std::abs(c));
    }
    return worst;
}

std::set<BasisIndex> orbit_reach(const LazyPair& pair, const BasisIndex& start,
                                 std::size_t depth) {
    if (!pair.valid(start)) throw Error("IndexOutOfRule", "start index outside the rule");
    std::set<BasisIndex> reached{start};
    std::vector<BasisIndex> frontier{start};
    const LazyOperator* ops[] = {&pair.u, &pair.ustar, &pair.p, &pair.pperp};
    for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<BasisIndex> next;
        for (const BasisIndex& idx : frontier)
            for (const LazyOperator* op : ops)
                for (const auto& term : (*op)(idx))
                    if (std::abs(term.coeff) > 0.0 && reached.insert(term.index).second)
                        next.push_back(term.index);
        frontier = std::move(next);
    }
    return reached;
}

std::string index_to_json(const BasisIndex& idx) {
    return "{\"group\": " + std::to_string(idx.group) + ", \"slot\": \"" +
           (idx.slot == Slot::F ? "F" : "FT") + "\", \"t\": " + std::to_string(idx.t) + "}";
}

}  // namespace bcl
