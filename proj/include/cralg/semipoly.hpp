#ifndef CRALG_SEMIPOLY_HPP
#define CRALG_SEMIPOLY_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cralg/fterm.hpp"
#include "cralg/mpoly.hpp"

namespace cralg {

/// sup over families of inf over members.
struct SemiPolyNF {
    std::vector<std::vector<MPoly>> families;

    static SemiPolyNF of(const MPoly& p) { return {{{p}}}; }

    bool is_single() const { return families.size() == 1 && families[0].size() == 1; }
    const MPoly& single() const { return families[0][0]; }
    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& f : families) s += f.size();
        return s;
    }

    std::set<std::string> variables() const {
        std::set<std::string> v;
        for (const auto& f : families)
            for (const auto& p : f) {
                auto s = p.variables();
                v.insert(s.begin(), s.end());
            }
        return v;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < families.size(); ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < families[i].size(); ++j) s += (j ? ", " : "") + families[i][j].str();
            s += "]";
        }
        return s + "]";
    }
};

inline Rational eval_nf(const SemiPolyNF& nf, const std::map<std::string, Rational>& point) {
    Rational best = 0;
    bool first = true;
    for (const auto& fam : nf.families) {
        Rational m = fam[0].eval(point);
        for (std::size_t j = 1; j < fam.size(); ++j) {
            Rational v = fam[j].eval(point);
            if (v < m) m = v;
        }
        if (first || m > best) best = m;
        first = false;
    }
    return best;
}

namespace detail {

constexpr std::size_t nf_size_cap = 20000;

// Sorted members, a single smallest constant, and families that contain another family dropped.
inline SemiPolyNF nf_prune(std::vector<std::vector<MPoly>> fams) {
    std::vector<std::vector<MPoly>> canon;
    for (auto& f : fams) {
        std::set<MPoly> s;
        std::optional<Rational> cmin;
        for (auto& p : f) {
            if (p.is_constant()) {
                Rational c = p.constant_term();
                if (!cmin || c < *cmin) cmin = c;
            } else {
                s.insert(p);
            }
        }
        if (cmin) s.insert(MPoly(*cmin));
        canon.emplace_back(s.begin(), s.end());
    }
    std::sort(canon.begin(), canon.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    // Constant-only families: keep the largest.
    std::optional<Rational> cmax;
    for (auto& f : canon) {
        if (f.size() == 1 && f[0].is_constant()) {
            Rational c = f[0].constant_term();
            if (!cmax || c > *cmax) cmax = c;
        }
    }
    std::vector<std::vector<MPoly>> out;
    for (auto& f : canon) {
        if (f.size() == 1 && f[0].is_constant()) continue;
        bool absorbed = false;
        for (const auto& g : out)
            if (std::includes(f.begin(), f.end(), g.begin(), g.end())) {
                absorbed = true;
                break;
            }
        // A family holding a constant no larger than the constant family is dominated.
        if (!absorbed && cmax) {
            for (const auto& p : f)
                if (p.is_constant() && p.constant_term() <= *cmax) absorbed = true;
        }
        if (!absorbed) out.push_back(std::move(f));
    }
    if (cmax) out.push_back({MPoly(*cmax)});
    SemiPolyNF nf{std::move(out)};
    if (nf.size() > nf_size_cap) fail(ErrorCode::Unsupported, "normal form exceeds the size cap");
    return nf;
}

inline SemiPolyNF nf_sup(const SemiPolyNF& a, const SemiPolyNF& b) {
    auto f = a.families;
    f.insert(f.end(), b.families.begin(), b.families.end());
    return nf_prune(std::move(f));
}

inline SemiPolyNF nf_inf(const SemiPolyNF& a, const SemiPolyNF& b) {
    if (a.families.size() * b.families.size() > nf_size_cap)
        fail(ErrorCode::Unsupported, "normal form exceeds the size cap");
    std::vector<std::vector<MPoly>> f;
    for (const auto& x : a.families)
        for (const auto& y : b.families) {
            auto z = x;
            z.insert(z.end(), y.begin(), y.end());
            f.push_back(std::move(z));
        }
    return nf_prune(std::move(f));
}

inline SemiPolyNF nf_add(const SemiPolyNF& a, const SemiPolyNF& b) {
    if (a.families.size() * b.families.size() > nf_size_cap)
        fail(ErrorCode::Unsupported, "normal form exceeds the size cap");
    std::vector<std::vector<MPoly>> f;
    for (const auto& x : a.families)
        for (const auto& y : b.families) {
            if (x.size() * y.size() > nf_size_cap) fail(ErrorCode::Unsupported, "normal form exceeds the size cap");
            std::vector<MPoly> z;
            for (const auto& p : x)
                for (const auto& q : y) z.push_back(p + q);
            f.push_back(std::move(z));
        }
    return nf_prune(std::move(f));
}

inline SemiPolyNF nf_scale(const Rational& c, const SemiPolyNF& a) {
    if (c == 0) return SemiPolyNF::of(MPoly(Rational(0)));
    auto f = a.families;
    for (auto& fam : f)
        for (auto& p : fam) p = c * p;
    return nf_prune(std::move(f));
}

// -(sup_i inf_j f_ij) = sup over choice functions phi of inf_i -f_{i,phi(i)}.
inline SemiPolyNF nf_neg(const SemiPolyNF& a) {
    std::vector<std::vector<MPoly>> acc{{}};
    for (const auto& fam : a.families) {
        if (acc.size() * fam.size() > nf_size_cap) fail(ErrorCode::Unsupported, "normal form exceeds the size cap");
        std::vector<std::vector<MPoly>> next;
        for (const auto& partial : acc)
            for (const auto& p : fam) {
                auto z = partial;
                z.push_back(-p);
                next.push_back(std::move(z));
            }
        acc = nf_prune(std::move(next)).families;
    }
    return nf_prune(std::move(acc));
}

// f+ g+ = (fg inf (f^2+1)g) sup 0.
inline SemiPolyNF nf_pos_product(const MPoly& f, const MPoly& g) {
    MPoly zero(Rational(0));
    if (f.is_constant() && g.is_constant()) {
        Rational a = f.constant_term(), b = g.constant_term();
        Rational v = (a > 0 && b > 0) ? Rational(a * b) : Rational(0);
        return SemiPolyNF::of(MPoly(v));
    }
    if (f.is_constant()) {
        Rational a = f.constant_term();
        if (a <= 0) return SemiPolyNF::of(zero);
        return SemiPolyNF{{{a * g}, {zero}}};
    }
    if (g.is_constant()) return nf_pos_product(g, f);
    MPoly one(Rational(1));
    return nf_prune({{f * g, (f * f + one) * g}, {zero}});
}

// Product of sup_i inf_k f_ik+ and sup_j inf_l g_jl+.
inline SemiPolyNF nf_pos_times_pos(const SemiPolyNF& a, const SemiPolyNF& b) {
    std::optional<SemiPolyNF> result;
    for (const auto& x : a.families)
        for (const auto& y : b.families) {
            std::optional<SemiPolyNF> cell;
            for (const auto& f : x)
                for (const auto& g : y) {
                    SemiPolyNF pp = nf_pos_product(f, g);
                    cell = cell ? nf_inf(*cell, pp) : pp;
                }
            result = result ? nf_sup(*result, *cell) : *cell;
        }
    return *result;
}

inline SemiPolyNF nf_mul(const SemiPolyNF& a, const SemiPolyNF& b) {
    if (a.is_single() && b.is_single()) return SemiPolyNF::of(a.single() * b.single());
    if (a.is_single() && a.single().is_constant()) {
        Rational c = a.single().constant_term();
        return c >= 0 ? nf_scale(c, b) : nf_neg(nf_scale(-c, b));
    }
    if (b.is_single() && b.single().is_constant()) return nf_mul(b, a);
    // uv = u+v+ + u-v- - u+v- - u-v+, where (sup inf f)+ = sup inf f+.
    SemiPolyNF an = nf_neg(a), bn = nf_neg(b);
    SemiPolyNF pos = nf_add(nf_pos_times_pos(a, b), nf_pos_times_pos(an, bn));
    SemiPolyNF neg = nf_add(nf_pos_times_pos(a, bn), nf_pos_times_pos(an, b));
    return nf_add(pos, nf_neg(neg));
}

} // namespace detail

inline SemiPolyNF normalize(const FTerm& t) {
    using namespace detail;
    switch (t.kind()) {
    case FKind::Var: return SemiPolyNF::of(MPoly::var(t.name()));
    case FKind::Const: return SemiPolyNF::of(MPoly(t.value()));
    case FKind::Neg: return nf_neg(normalize(t.args()[0]));
    default: break;
    }
    SemiPolyNF acc = normalize(t.args()[0]);
    for (std::size_t i = 1; i < t.args().size(); ++i) {
        SemiPolyNF b = normalize(t.args()[i]);
        switch (t.kind()) {
        case FKind::Add: acc = nf_add(acc, b); break;
        case FKind::Mul: acc = nf_mul(acc, b); break;
        case FKind::Sup: acc = nf_sup(acc, b); break;
        case FKind::Inf: acc = nf_inf(acc, b); break;
        default: break;
        }
    }
    return acc;
}

} // namespace cralg

#endif // CRALG_SEMIPOLY_HPP
