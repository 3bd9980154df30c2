#ifndef CRALG_VIRTUAL_ROOTS_HPP
#define CRALG_VIRTUAL_ROOTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cralg/algreal.hpp"

namespace cralg {

/// Bound B = max_{δ<d} (1 + |a_δ|) for a monic f = X^d + Σ a_δ X^δ.
inline Rational root_bound(const Poly& f) {
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "root_bound needs a monic polynomial");
    Rational b = 1;
    for (int i = 0; i < f.degree(); ++i) b = std::max(b, Rational(1 + abs(f.coeff(i))));
    return b;
}

struct VirtualRootTable {
    int degree = 0;
    Poly f;
    /// rows[δ-1][j-1] = ρ_{δ,j}, the virtual roots of g[δ] = f^{[d-δ]}
    std::vector<std::vector<AlgReal>> rows;
    /// g[δ] for δ = 0..d; g[0] is the constant 1
    std::vector<Poly> g;
    Rational bound;

    const AlgReal& rho(int delta, int j) const {
        return rows[static_cast<std::size_t>(delta - 1)][static_cast<std::size_t>(j - 1)];
    }

    /// ρ_{δ,j} with the sentinels -(B+1) for j = 0 and B+1 for j = δ+1.
    AlgReal rho_or_sentinel(int delta, int j) const {
        if (j <= 0) return AlgReal::rational(-(bound + 1));
        if (j > delta) return AlgReal::rational(bound + 1);
        return rho(delta, j);
    }
};

struct RootMultiset {
    std::vector<std::pair<AlgReal, int>> entries;

    int multiplicity_of(const AlgReal& x) const {
        for (const auto& [v, m] : entries)
            if (v == x) return m;
        return 0;
    }
};

inline int sigma_for(int delta, int j) { return ((delta - j) % 2 == 0) ? 1 : -1; }

namespace detail {

/// R_min with the real roots of g and g' supplied by the caller.
inline AlgReal r_min_with(const AlgReal& a, const AlgReal& b, const Poly& g, int sigma,
                          const std::vector<AlgReal>& g_roots, const std::vector<AlgReal>& dg_roots) {
    Order ab = algreal_compare(a, b);
    if (ab == Order::GT) fail(ErrorCode::EmptyInterval, "R_min with a > b");
    if (ab == Order::EQ) return a;
    Poly dg = g.derivative();
    for (const auto& r : dg_roots)
        if (a < r && r < b) fail(ErrorCode::NotMonotone, "derivative vanishes inside the interval");
    Rational sample = rational_between(a, b);
    if (sigma * dg.sign_at(sample) <= 0) fail(ErrorCode::NotMonotone, "sigma * f' is not positive inside");
    if (sigma * sign_at(g, a) >= 0) return a;
    if (sigma * sign_at(g, b) <= 0) return b;
    for (const auto& r : g_roots)
        if (a < r && r < b) return r;
    fail(ErrorCode::NoSignChange, "no root found between bracketing points");
}

} // namespace detail

/// The unique minimiser of |g| on [a, b] when σ g' > 0 inside.
inline AlgReal R_min(const AlgReal& a, const AlgReal& b, const Poly& g, int sigma) {
    if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "R_min of zero");
    std::vector<AlgReal> dg_roots, g_roots;
    if (g.degree() >= 1) g_roots = isolate_real_roots(g);
    if (g.degree() >= 2) dg_roots = isolate_real_roots(g.derivative());
    return detail::r_min_with(a, b, g, sigma, g_roots, dg_roots);
}

/// Virtual roots of a monic polynomial, row by row from f^{[d-1]} up to f.
inline VirtualRootTable virtual_roots(const Poly& f) {
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "virtual roots need a monic polynomial");
    if (f.degree() < 1) fail(ErrorCode::KOutOfRange, "virtual roots need degree >= 1");
    VirtualRootTable t;
    int d = f.degree();
    t.degree = d;
    t.f = f;
    t.bound = root_bound(f);
    t.g.resize(static_cast<std::size_t>(d) + 1);
    t.g[0] = Poly::constant(1);
    for (int delta = 1; delta <= d; ++delta) t.g[static_cast<std::size_t>(delta)] = normalized_derivative(f, d - delta);

    std::vector<std::vector<AlgReal>> roots(static_cast<std::size_t>(d) + 1);
    for (int delta = 1; delta <= d; ++delta) roots[static_cast<std::size_t>(delta)] = isolate_real_roots(t.g[static_cast<std::size_t>(delta)]);

    t.rows.push_back({AlgReal::rational(-t.g[1].coeff(0))});
    for (int delta = 2; delta <= d; ++delta) {
        std::vector<AlgReal> row;
        const Poly& g = t.g[static_cast<std::size_t>(delta)];
        for (int j = 1; j <= delta; ++j) {
            AlgReal a = t.rho_or_sentinel(delta - 1, j - 1);
            AlgReal b = t.rho_or_sentinel(delta - 1, j);
            row.push_back(detail::r_min_with(a, b, g, sigma_for(delta, j), roots[static_cast<std::size_t>(delta)],
                                             roots[static_cast<std::size_t>(delta - 1)]));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Checks the large-inequality characterisation of every ρ_{δ,j} against its
/// bracketing pair, plus ordering within rows and interlacing between rows.
inline bool verify_vr_inequalities(const VirtualRootTable& t) {
    int d = t.degree;
    if (static_cast<int>(t.rows.size()) != d) return false;
    for (int delta = 1; delta <= d; ++delta) {
        if (static_cast<int>(t.rows[static_cast<std::size_t>(delta - 1)].size()) != delta) return false;
        for (int j = 1; j < delta; ++j)
            if (t.rho(delta, j) > t.rho(delta, j + 1)) return false;
    }
    AlgReal lo = AlgReal::rational(-(t.bound + 1)), hi = AlgReal::rational(t.bound + 1);
    if (sign_at(t.g[1], t.rho(1, 1)) != 0) return false;
    for (int delta = 2; delta <= d; ++delta) {
        const Poly& g = t.g[static_cast<std::size_t>(delta)];
        for (int j = 1; j <= delta; ++j) {
            const AlgReal& x = t.rho(delta, j);
            AlgReal a = t.rho_or_sentinel(delta - 1, j - 1);
            AlgReal b = t.rho_or_sentinel(delta - 1, j);
            int s = sigma_for(delta, j);
            int xa = static_cast<int>(algreal_compare(x, a));  // sign(x - a)
            int bx = static_cast<int>(algreal_compare(b, x));  // sign(b - x)
            if (xa < 0 || bx < 0) return false;
            if (x < lo || x > hi) return false;
            int gx = sign_at(g, x), ga = sign_at(g, a), gb = sign_at(g, b);
            if (s * xa * gx > 0) return false;
            if (s * xa * ga > 0) return false;
            if (s * bx * gx < 0) return false;
            if (s * bx * gb < 0) return false;
        }
    }
    return true;
}

inline RootMultiset ftilde(const VirtualRootTable& t) {
    RootMultiset m;
    for (const auto& r : t.rows.back()) {
        if (!m.entries.empty() && m.entries.back().first == r) ++m.entries.back().second;
        else m.entries.emplace_back(r, 1);
    }
    return m;
}

/// Every real zero of f is a virtual root with at least its multiplicity, and the
/// multiplicities in f and in f̃ differ by an even number at every virtual root.
inline bool check_zero_cover(const Poly& f, const VirtualRootTable& t) {
    RootMultiset m = ftilde(t);
    for (const auto& r : isolate_real_roots(f)) {
        int mf = multiplicity(f, r), mt = m.multiplicity_of(r);
        if (mt < mf || (mt - mf) % 2 != 0) return false;
    }
    for (const auto& [r, mt] : m.entries) {
        int mf = multiplicity(f, r);
        if (mt < mf || (mt - mf) % 2 != 0) return false;
    }
    return true;
}

/// d - r where r counts sign changes in (f^{[d]}(a), ..., f^{[0]}(a)).
inline int budan_fourier_locate(const Poly& f, const Rational& a) {
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "budan_fourier_locate needs a monic polynomial");
    int d = f.degree();
    std::vector<int> signs;
    for (int delta = d; delta >= 0; --delta) {
        int s = delta == d ? 1 : normalized_derivative(f, delta).sign_at(a);
        if (s == 0) fail(ErrorCode::DerivativeVanishes, "normalized derivative vanishes at the probe", delta);
        signs.push_back(s);
    }
    int r = 0;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[i - 1]) ++r;
    return d - r;
}

/// a ∨ (b ∧ x)
inline AlgReal clamp_to(const AlgReal& x, const Rational& a, const Rational& b) {
    AlgReal A = AlgReal::rational(a), B = AlgReal::rational(b);
    if (x < A) return A;
    if (x > B) return B;
    return x;
}

inline AlgReal ivt_root(const Poly& f, const Rational& a, const Rational& b) {
    if (!(a < b)) fail(ErrorCode::BadInterval, "ivt_root needs a < b");
    if (f.sign_at(a) * f.sign_at(b) >= 0) fail(ErrorCode::NoSignChange, "f(a) f(b) is not negative");
    VirtualRootTable t = virtual_roots(f);
    for (const auto& r : t.rows.back()) {
        AlgReal mu = clamp_to(r, a, b);
        if (sign_at(f, mu) == 0) return mu;
    }
    fail(ErrorCode::NoSignChange, "no clamped virtual root is a zero");
}

struct Extremum {
    AlgReal value;
    AlgReal at;
};

struct Extrema {
    Extremum inf, sup;
};

/// Extreme values of a monic f on [a, b] among f(a), f(b) and f(ν_j),
/// ν_j = a ∨ (b ∧ ρ_{d-1,j}). Values are exact algebraic numbers.
inline Extrema extrema(const Poly& f, const Rational& a, const Rational& b) {
    if (!(a < b)) fail(ErrorCode::BadInterval, "extrema needs a < b");
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "extrema needs a monic polynomial");
    std::vector<AlgReal> points = {AlgReal::rational(a), AlgReal::rational(b)};
    if (f.degree() >= 2) {
        VirtualRootTable t = virtual_roots(f);
        for (const auto& r : t.rows[static_cast<std::size_t>(f.degree() - 2)]) points.push_back(clamp_to(r, a, b));
    }
    Extrema e{{poly_image(f, points[0]), points[0]}, {poly_image(f, points[0]), points[0]}};
    for (std::size_t i = 1; i < points.size(); ++i) {
        AlgReal v = poly_image(f, points[i]);
        if (v < e.inf.value) e.inf = {v, points[i]};
        if (v > e.sup.value) e.sup = {v, points[i]};
    }
    return e;
}

struct MinAbs {
    AlgReal value;
    AlgReal at;
    bool constant_sign;
};

/// inf |f| on [a, b] over a, b and μ_j = a ∨ (b ∧ ρ_{d,j}).
inline MinAbs min_abs(const Poly& f, const Rational& a, const Rational& b) {
    if (!(a < b)) fail(ErrorCode::BadInterval, "min_abs needs a < b");
    VirtualRootTable t = virtual_roots(f);
    std::vector<AlgReal> points = {AlgReal::rational(a), AlgReal::rational(b)};
    for (const auto& r : t.rows.back()) points.push_back(clamp_to(r, a, b));
    std::optional<MinAbs> best;
    for (const auto& p : points) {
        AlgReal v = poly_image(f, p);
        if (v < AlgReal::rational(0)) v = v.negated();
        if (!best || v < best->value) best = MinAbs{v, p, false};
    }
    best->constant_sign = best->value > AlgReal::rational(0);
    return *best;
}

/// g(x) = x^d + Σ c^{d-δ} a_δ x^δ.
inline Poly scale_roots(const Poly& f, const Rational& c) {
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "scale_roots needs a monic polynomial");
    int d = f.degree();
    std::vector<Rational> v(static_cast<std::size_t>(d) + 1);
    Rational pw = 1;
    for (int delta = d; delta >= 0; --delta) {
        v[static_cast<std::size_t>(delta)] = pw * f.coeff(delta);
        pw *= c;
    }
    return Poly(std::move(v));
}

/// ρ_{d,j}(g) = c ρ_{d,j}(f) for c >= 0 and c ρ_{d,d+1-j}(f) for c <= 0.
inline bool check_scale_relation(const Poly& f, const Rational& c) {
    VirtualRootTable tf = virtual_roots(f), tg = virtual_roots(scale_roots(f, c));
    int d = f.degree();
    for (int j = 1; j <= d; ++j) {
        const AlgReal& src = c >= 0 ? tf.rho(d, j) : tf.rho(d, d + 1 - j);
        if (tg.rho(d, j) != src.scaled(c)) return false;
    }
    return true;
}

} // namespace cralg

#endif // CRALG_VIRTUAL_ROOTS_HPP
