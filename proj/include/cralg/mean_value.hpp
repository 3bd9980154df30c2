#ifndef CRALG_MEAN_VALUE_HPP
#define CRALG_MEAN_VALUE_HPP

#include <vector>

#include "cralg/linear.hpp"
#include "cralg/mpoly.hpp"

namespace cralg {

/// Nodes λ_i in (0,1) and weights r_i >= 0 with Σ r_i λ_i^k = 1/(k+1) for k < n, so that
/// f(b) - f(a) = (b-a) Σ r_i f'(a + λ_i (b-a)) for every f of degree <= n.
struct MeanValueRule {
    int n = 0;
    std::vector<Rational> nodes;
    std::vector<Rational> weights;
};

inline Rational rational_pow(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

inline bool check_moments(const MeanValueRule& rule) {
    if (rule.nodes.size() != rule.weights.size()) return false;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        if (!(rule.nodes[i] > 0 && rule.nodes[i] < 1)) return false;
        if (rule.weights[i] < 0) return false;
    }
    for (int k = 0; k < rule.n; ++k) {
        Rational s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * rational_pow(rule.nodes[i], k);
        if (s != make_rational(1, k + 1)) return false;
    }
    return true;
}

/// Nonnegative weights on the given nodes solving the first n moment equations, as a
/// vertex of the feasible polytope (so at most n weights are nonzero).
inline std::optional<MeanValueRule> mean_value_rule_on_nodes(int n, const std::vector<Rational>& nodes) {
    std::vector<std::vector<Rational>> A(static_cast<std::size_t>(n), std::vector<Rational>(nodes.size()));
    std::vector<Rational> b(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < nodes.size(); ++i) A[static_cast<std::size_t>(k)][i] = rational_pow(nodes[i], k);
        b[static_cast<std::size_t>(k)] = make_rational(1, k + 1);
    }
    auto sol = simplex_feasible(A, b);
    if (!sol) return std::nullopt;
    MeanValueRule rule;
    rule.n = n;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if ((*sol)[i] != 0) {
            rule.nodes.push_back(nodes[i]);
            rule.weights.push_back((*sol)[i]);
        }
    return rule;
}

inline std::vector<Rational> uniform_grid(int m) {
    std::vector<Rational> v;
    for (int i = 1; i <= m; ++i) v.push_back(make_rational(i, m + 1));
    return v;
}

/// Grows the grid {i/(m+1)} from m = n until nonnegative weights exist.
inline MeanValueRule mean_value_rule(int n, int max_n = 8) {
    if (n < 1) fail(ErrorCode::KOutOfRange, "mean_value_rule needs n >= 1", n);
    if (n > max_n) fail(ErrorCode::Unsupported, "mean_value_rule degree above the supported bound", n);
    for (int m = n; m <= 8 * n + 16; ++m)
        if (auto rule = mean_value_rule_on_nodes(n, uniform_grid(m))) return *rule;
    fail(ErrorCode::Unsupported, "no nonnegative rule found on the node grids tried", n);
}

/// f(b) - f(a) - (b-a) Σ r_i f'(a + λ_i (b-a)) as a polynomial in a, b.
inline MPoly mean_value_defect(const MeanValueRule& rule, const Poly& f) {
    MPoly a = MPoly::var("a"), b = MPoly::var("b");
    MPoly fa = MPoly::from_poly(f, "a"), fb = MPoly::from_poly(f, "b");
    MPoly df = MPoly::from_poly(f.derivative(), "t");
    MPoly sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * df.subst({{"t", a + rule.nodes[i] * (b - a)}});
    return fb - fa - (b - a) * sum;
}

} // namespace cralg

#endif // CRALG_MEAN_VALUE_HPP
