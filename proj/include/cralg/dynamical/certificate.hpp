#ifndef CRALG_DYNAMICAL_CERTIFICATE_HPP
#define CRALG_DYNAMICAL_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cralg/dynamical/syntax.hpp"
#include "cralg/linear.hpp"

namespace cralg::dyn {

enum class RelSet { Gt, Ge };

struct GenRef {
    RelSet set = RelSet::Gt;
    std::size_t index = 0;
    friend bool operator==(const GenRef& a, const GenRef& b) { return a.set == b.set && a.index == b.index; }
};

/// c * (product of gens) * square^2
struct ConeTerm {
    Rational c;
    std::vector<GenRef> gens;
    MPoly square;
};

/// h * eq[r]
struct IdealTerm {
    MPoly h;
    std::size_t r = 0;
};

/// s + p + z = 0 with s a product of R_{>0} elements, p in the cone, z in the ideal.
struct CollapseCertificate {
    std::vector<std::size_t> s;
    std::vector<ConeTerm> p;
    std::vector<IdealTerm> z;
};

inline const MPoly* resolve(const Presentation& pres, const GenRef& g) {
    const auto& v = g.set == RelSet::Gt ? pres.gt : pres.ge;
    return g.index < v.size() ? &v[g.index] : nullptr;
}

/// Monoid part, or nullopt on a dangling reference.
inline std::optional<MPoly> certificate_s(const Presentation& pres, const CollapseCertificate& cert) {
    MPoly s(1);
    for (std::size_t i : cert.s) {
        if (i >= pres.gt.size()) return std::nullopt;
        s *= pres.gt[i];
    }
    return s;
}

/// Expanded s + p + z, or nullopt when the certificate is malformed.
inline std::optional<MPoly> certificate_sum(const Presentation& pres, const CollapseCertificate& cert) {
    std::optional<MPoly> s = certificate_s(pres, cert);
    if (!s) return std::nullopt;
    MPoly total = *s;
    for (const auto& t : cert.p) {
        if (t.c < 0) return std::nullopt;
        MPoly prod(1);
        for (const auto& g : t.gens) {
            const MPoly* q = resolve(pres, g);
            if (!q) return std::nullopt;
            prod *= *q;
        }
        total += t.c * (prod * t.square * t.square);
    }
    for (const auto& t : cert.z) {
        if (t.r >= pres.eq.size()) return std::nullopt;
        total += t.h * pres.eq[t.r];
    }
    return total;
}

/// Rational scalars are harmless: multiplying by a common denominator D turns
/// a rational certificate into an integral one, the extra (D-1)s going into the cone.
inline bool check_certificate(const Presentation& pres, const CollapseCertificate& cert) {
    std::optional<MPoly> sum = certificate_sum(pres, cert);
    return sum && sum->is_zero();
}

namespace detail {

inline void monomials_up_to(const std::vector<std::string>& vars, int deg, std::size_t from, Monomial cur,
                            std::vector<Monomial>& out) {
    out.push_back(cur);
    if (deg == 0) return;
    for (std::size_t i = from; i < vars.size(); ++i) {
        Monomial next = cur;
        ++next[vars[i]];
        monomials_up_to(vars, deg - 1, i, next, out);
    }
}

inline std::vector<Monomial> monomials_up_to(const std::vector<std::string>& vars, int deg) {
    std::vector<Monomial> out;
    if (deg >= 0) monomials_up_to(vars, deg, 0, {}, out);
    return out;
}

// Exponent vectors over R_{>0} bounded by e, ordered by total size.
inline std::vector<std::vector<std::size_t>> monoid_elements(std::size_t n, int e) {
    std::vector<std::vector<int>> exps{std::vector<int>(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<int>> grown;
        for (const auto& x : exps)
            for (int k = 0; k <= e; ++k) {
                auto y = x;
                y[i] = k;
                grown.push_back(y);
            }
        exps = std::move(grown);
    }
    auto size = [](const std::vector<int>& x) {
        int s = 0;
        for (int k : x) s += k;
        return s;
    };
    std::stable_sort(exps.begin(), exps.end(),
                     [&](const auto& a, const auto& b) { return size(a) < size(b); });
    std::vector<std::vector<std::size_t>> out;
    for (const auto& x : exps) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < x[i]; ++k) idx.push_back(i);
        out.push_back(idx);
    }
    return out;
}

} // namespace detail

/// Bounded search over the template: s ranges over products with exponents
/// <= monoid_exponent_bound, p = sum c_t * pi_t * m_t^2 over subsets pi_t of
/// R_{>0} u R_{>=0} and monomials m_t with deg(pi_t m_t^2) <= degree_bound, and
/// z = sum h_i r_i with deg h_i <= degree_bound. Each s gives a linear
/// feasibility problem in (c, h). nullopt means nothing within the bounds.
inline std::optional<CollapseCertificate> search_certificate(const Presentation& pres, int degree_bound,
                                                             int monoid_exponent_bound) {
    if (degree_bound < 0 || monoid_exponent_bound < 0)
        fail(ErrorCode::PreconditionFailed, "search bounds must be nonnegative");
    std::vector<std::string> vars = pres.all_generators();

    // cone template columns
    std::vector<GenRef> pool;
    for (std::size_t i = 0; i < pres.gt.size(); ++i) pool.push_back({RelSet::Gt, i});
    for (std::size_t i = 0; i < pres.ge.size(); ++i) pool.push_back({RelSet::Ge, i});
    if (pool.size() > 12) fail(ErrorCode::Unsupported, "too many order relations for the subset template");
    struct Column {
        MPoly poly;
        ConeTerm cone;
        std::optional<std::pair<std::size_t, Monomial>> ideal;
        int sign = 1;
    };
    std::vector<Column> cols;
    for (std::size_t mask = 0; mask < (std::size_t(1) << pool.size()); ++mask) {
        std::vector<GenRef> gens;
        MPoly prod(1);
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) {
                gens.push_back(pool[i]);
                prod *= *resolve(pres, pool[i]);
            }
        int room = degree_bound - prod.degree();
        if (room < 0) continue;
        for (const auto& m : detail::monomials_up_to(vars, room / 2)) {
            MPoly sq = MPoly::term(1, m);
            cols.push_back({prod * sq * sq, {Rational(1), gens, sq}, std::nullopt, 1});
        }
    }
    for (std::size_t r = 0; r < pres.eq.size(); ++r)
        for (const auto& m : detail::monomials_up_to(vars, degree_bound)) {
            MPoly base = MPoly::term(1, m) * pres.eq[r];
            cols.push_back({base, {}, std::make_pair(r, m), 1});
            cols.push_back({-base, {}, std::make_pair(r, m), -1});
        }

    for (const auto& s_idx : detail::monoid_elements(pres.gt.size(), monoid_exponent_bound)) {
        CollapseCertificate cert;
        cert.s = s_idx;
        MPoly s = *certificate_s(pres, cert);
        // rows: one per monomial occurring anywhere
        std::map<Monomial, std::size_t> row;
        auto index = [&](const MPoly& p) {
            for (const auto& [m, c] : p.terms()) row.emplace(m, row.size());
        };
        index(s);
        for (const auto& c : cols) index(c.poly);
        std::vector<std::vector<Rational>> A(row.size(), std::vector<Rational>(cols.size(), Rational(0)));
        std::vector<Rational> b(row.size(), Rational(0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [m, c] : cols[j].poly.terms()) A[row[m]][j] = c;
        for (const auto& [m, c] : s.terms()) b[row[m]] = -c;
        auto x = simplex_feasible(A, b);
        if (!x) continue;
        std::map<std::size_t, MPoly> h;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if ((*x)[j] == 0) continue;
            if (cols[j].ideal) {
                auto [r, m] = *cols[j].ideal;
                h[r] += Rational(cols[j].sign) * (*x)[j] * MPoly::term(1, m);
            } else {
                ConeTerm t = cols[j].cone;
                t.c = (*x)[j];
                cert.p.push_back(t);
            }
        }
        for (const auto& [r, poly] : h)
            if (!poly.is_zero()) cert.z.push_back({poly, r});
        if (!check_certificate(pres, cert))
            throw std::logic_error("search produced a certificate that does not verify");
        return cert;
    }
    return std::nullopt;
}

} // namespace cralg::dyn

#endif // CRALG_DYNAMICAL_CERTIFICATE_HPP
