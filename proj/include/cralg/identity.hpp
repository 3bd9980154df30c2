#ifndef CRALG_IDENTITY_HPP
#define CRALG_IDENTITY_HPP

#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cralg/algreal.hpp"
#include "cralg/fterm.hpp"
#include "cralg/linear.hpp"
#include "cralg/semipoly.hpp"

namespace cralg {

enum class FPred { Eq, Ge, Gt };

/// The statement `term pred 0`.
struct FAtom {
    FTerm term;
    FPred pred;
};

inline FAtom eq_atom(const FTerm& a, const FTerm& b) { return {a - b, FPred::Eq}; }
inline FAtom le_atom(const FTerm& a, const FTerm& b) { return {b - a, FPred::Ge}; }
inline FAtom lt_atom(const FTerm& a, const FTerm& b) { return {b - a, FPred::Gt}; }
inline FAtom orth_atom(const FTerm& a, const FTerm& b) { return {inf(abs_t(a), abs_t(b)), FPred::Eq}; }

inline bool pred_holds(FPred p, int sign) {
    switch (p) {
    case FPred::Eq: return sign == 0;
    case FPred::Ge: return sign >= 0;
    case FPred::Gt: return sign > 0;
    }
    return false;
}

inline bool atom_holds(const FAtom& a, const std::map<std::string, Rational>& point) {
    return pred_holds(a.pred, sign(a.term.eval(point)));
}

enum class IdentityVerdict { Equal, Counterexample };

struct LGroupResult {
    IdentityVerdict verdict = IdentityVerdict::Equal;
    std::map<std::string, Rational> point;
    std::size_t cells = 0;
    bool equal() const { return verdict == IdentityVerdict::Equal; }
};

namespace detail {

// Scaled so the first coefficient is 1; the sign of the form may flip.
inline LinForm direction_of(const LinForm& d) {
    Rational a = d.coeff.begin()->second;
    Rational inv = 1 / a;
    return inv * d;
}

class LGroupSolver {
public:
    LGroupSolver(std::vector<FAtom> hyps, FAtom concl, std::size_t cap)
        : hyps_(std::move(hyps)), concl_(std::move(concl)), cap_(cap) {
        for (const auto& h : hyps_) h.term.collect_vars(vars_);
        concl_.term.collect_vars(vars_);
    }

    LGroupResult run() {
        LGroupResult r;
        solve({}, r);
        return r;
    }

private:
    struct Split {
        LinForm d;
    };

    bool feasible(const std::vector<LinConstraint>& cons) { return fm_feasible(cons).feasible(); }

    // Sign of d over the region when it is constant there: 1 means d >= 0 throughout, -1 means d <= 0.
    int settled_sign(const std::vector<LinConstraint>& region, const LinForm& d) {
        if (d.is_constant()) return d.constant >= 0 ? 1 : -1;
        LinForm dir = direction_of(d);
        int orient = d.coeff.begin()->second > 0 ? 1 : -1;
        auto it = known_.find(dir);
        if (it != known_.end()) return it->second * orient;
        int s = 0;
        auto cons = region;
        cons.push_back({-dir, Rel::Gt});
        if (!feasible(cons)) {
            s = 1;
        } else {
            cons.back() = {dir, Rel::Gt};
            if (!feasible(cons)) s = -1;
        }
        if (s != 0) known_[dir] = s;
        return s * orient;
    }

    std::optional<LinForm> eval(const FTerm& t, const std::vector<LinConstraint>& region, std::optional<Split>& split) {
        switch (t.kind()) {
        case FKind::Var: return LinForm::var(t.name());
        case FKind::Const: return LinForm::cst(t.value());
        case FKind::Neg: {
            auto a = eval(t.args()[0], region, split);
            if (!a) return std::nullopt;
            return -*a;
        }
        case FKind::Add: {
            LinForm s;
            for (const auto& a : t.args()) {
                auto v = eval(a, region, split);
                if (!v) return std::nullopt;
                s += *v;
            }
            return s;
        }
        case FKind::Mul: {
            LinForm s = LinForm::cst(Rational(1));
            for (const auto& a : t.args()) {
                auto v = eval(a, region, split);
                if (!v) return std::nullopt;
                if (v->is_constant()) s = v->constant * s;
                else if (s.is_constant()) s = s.constant * *v;
                else fail(ErrorCode::NonLinearTerm, "product of non-constant terms in " + t.str());
            }
            return s;
        }
        case FKind::Sup:
        case FKind::Inf: {
            auto cur = eval(t.args()[0], region, split);
            if (!cur) return std::nullopt;
            for (std::size_t i = 1; i < t.args().size(); ++i) {
                auto nx = eval(t.args()[i], region, split);
                if (!nx) return std::nullopt;
                LinForm d = *nx - *cur;
                int s = settled_sign(region, d);
                if (s == 0) {
                    split = Split{direction_of(d)};
                    return std::nullopt;
                }
                if ((t.kind() == FKind::Sup) == (s > 0)) cur = nx;
            }
            return cur;
        }
        }
        return std::nullopt;
    }

    static LinConstraint constraint_for(const LinForm& f, FPred p) {
        return {f, p == FPred::Eq ? Rel::Eq : p == FPred::Ge ? Rel::Ge : Rel::Gt};
    }

    void branch(const std::vector<LinConstraint>& region, const LinForm& d, LGroupResult& r) {
        splits_.insert(d);
        if (splits_.size() > cap_)
            fail(ErrorCode::Unsupported, "cell enumeration needs more than " + std::to_string(cap_) + " affine forms");
        auto saved = known_;
        auto a = region;
        a.push_back({d, Rel::Ge});
        solve(a, r);
        known_ = saved;
        if (!r.equal()) return;
        auto b = region;
        b.push_back({-d, Rel::Ge});
        solve(b, r);
        known_ = saved;
    }

    void solve(std::vector<LinConstraint> region, LGroupResult& r) {
        if (!r.equal()) return;
        for (const auto& h : hyps_) {
            std::optional<Split> split;
            auto f = eval(h.term, region, split);
            if (!f) return branch(region, split->d, r);
            region.push_back(constraint_for(*f, h.pred));
            if (!feasible(region)) {
                ++r.cells;
                return;
            }
        }
        std::optional<Split> split;
        auto f = eval(concl_.term, region, split);
        if (!f) return branch(region, split->d, r);
        ++r.cells;
        // Look for a point of the cell violating the conclusion.
        std::vector<LinForm> bad;
        switch (concl_.pred) {
        case FPred::Eq: bad = {*f, -*f}; break;
        case FPred::Ge: bad = {-*f}; break;
        case FPred::Gt: bad = {}; break;
        }
        std::vector<std::vector<LinConstraint>> tries;
        for (const auto& b : bad) {
            auto cons = region;
            cons.push_back({b, Rel::Gt});
            tries.push_back(cons);
        }
        if (concl_.pred == FPred::Gt) {
            auto cons = region;
            cons.push_back({-*f, Rel::Ge});
            tries.push_back(cons);
        }
        for (const auto& cons : tries) {
            auto res = fm_feasible(cons);
            if (!res.feasible()) continue;
            std::map<std::string, Rational> pt;
            for (const auto& v : vars_) {
                auto it = res.witness.find(v);
                pt[v] = it == res.witness.end() ? Rational(0) : it->second;
            }
            bool hyps_ok = true;
            for (const auto& h : hyps_) hyps_ok = hyps_ok && atom_holds(h, pt);
            if (!hyps_ok || atom_holds(concl_, pt))
                throw std::logic_error("cell witness does not refute the conclusion");
            r.verdict = IdentityVerdict::Counterexample;
            r.point = std::move(pt);
            return;
        }
    }

    std::vector<FAtom> hyps_;
    FAtom concl_;
    std::size_t cap_;
    std::set<std::string> vars_;
    std::set<LinForm> splits_;
    // Settled signs of split directions in the current region.
    std::map<LinForm, int> known_;
};

} // namespace detail

constexpr std::size_t lgroup_form_cap = 12;

/// Decides a Horn rule of the additive fragment over the rationals.
inline LGroupResult lgroup_rule(const std::vector<FAtom>& hyps, const FAtom& concl,
                                std::size_t cap = lgroup_form_cap) {
    return detail::LGroupSolver(hyps, concl, cap).run();
}

inline LGroupResult lgroup_identity(const FTerm& t1, const FTerm& t2, std::size_t cap = lgroup_form_cap) {
    return lgroup_rule({}, eq_atom(t1, t2), cap);
}

struct UnivariateResult {
    IdentityVerdict verdict = IdentityVerdict::Equal;
    std::optional<AlgReal> at;
    std::string var;
    bool equal() const { return verdict == IdentityVerdict::Equal; }
};

/// A continuous one-variable function given by polynomial pieces: pieces[i] holds on the
/// open interval between breaks[i-1] and breaks[i], and by continuity at the breaks as well.
struct Piecewise {
    std::vector<AlgReal> breaks;
    std::vector<Poly> pieces;

    static Piecewise of(const Poly& p) { return {{}, {p}}; }

    // A rational point inside interval i.
    Rational sample(std::size_t i) const {
        const std::size_t n = breaks.size();
        if (n == 0) return 0;
        if (i == 0) return floor_q(breaks.front().lo()) - 1;
        if (i == n) return floor_q(breaks.back().hi()) + 1;
        return rational_between(breaks[i - 1], breaks[i]);
    }
};

namespace detail {

inline std::vector<AlgReal> merge_breaks(const std::vector<AlgReal>& a, const std::vector<AlgReal>& b) {
    std::vector<AlgReal> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size()) {
            out.push_back(a[i++]);
            continue;
        }
        if (i == a.size()) {
            out.push_back(b[j++]);
            continue;
        }
        Order o = algreal_compare(a[i], b[j]);
        if (o == Order::EQ) {
            out.push_back(a[i++].is_point() ? a[i - 1] : b[j]);
            ++j;
        } else if (o == Order::LT) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    return out;
}

// Pieces of f on the intervals of the finer break list `to`.
inline std::vector<Poly> spread(const Piecewise& f, const std::vector<AlgReal>& to) {
    std::vector<Poly> out;
    std::size_t k = 0;
    out.push_back(f.pieces[0]);
    for (const auto& b : to) {
        if (k < f.breaks.size() && algreal_compare(b, f.breaks[k]) == Order::EQ) ++k;
        out.push_back(f.pieces[k]);
    }
    return out;
}

inline Piecewise simplify(Piecewise f) {
    Piecewise g{{}, {f.pieces[0]}};
    for (std::size_t i = 0; i < f.breaks.size(); ++i) {
        if (f.pieces[i + 1] == g.pieces.back()) continue;
        g.breaks.push_back(f.breaks[i]);
        g.pieces.push_back(f.pieces[i + 1]);
    }
    return g;
}

template <class Op>
Piecewise combine(const Piecewise& f, const Piecewise& g, Op op) {
    Piecewise h;
    h.breaks = merge_breaks(f.breaks, g.breaks);
    auto a = spread(f, h.breaks), b = spread(g, h.breaks);
    for (std::size_t i = 0; i < a.size(); ++i) h.pieces.push_back(op(a[i], b[i]));
    return simplify(std::move(h));
}

// Adds the real roots of each piece that fall inside its own interval.
inline Piecewise split_at_roots(const Piecewise& f, bool sup, const Piecewise* other = nullptr) {
    Piecewise h;
    std::vector<AlgReal> breaks = other ? merge_breaks(f.breaks, other->breaks) : f.breaks;
    auto a = spread(f, breaks);
    std::vector<Poly> b = other ? spread(*other, breaks) : std::vector<Poly>(a.size(), Poly());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Poly d = a[i] - b[i];
        std::vector<AlgReal> inner;
        if (d.degree() >= 1) {
            for (auto& r : isolate_real_roots(d)) {
                if (i > 0 && algreal_compare(r, breaks[i - 1]) != Order::GT) continue;
                if (i < breaks.size() && algreal_compare(r, breaks[i]) != Order::LT) continue;
                inner.push_back(r);
            }
        }
        Piecewise local{inner, {}};
        for (std::size_t k = 0; k <= inner.size(); ++k) {
            Poly pick = a[i];
            if (other) {
                Rational s;
                if (inner.empty()) {
                    Piecewise whole{breaks, std::vector<Poly>(breaks.size() + 1)};
                    s = whole.sample(i);
                } else if (k == 0) {
                    s = i > 0 ? rational_between(breaks[i - 1], inner[0]) : floor_q(inner[0].lo()) - 1;
                } else if (k == inner.size()) {
                    s = i < breaks.size() ? rational_between(inner.back(), breaks[i]) : floor_q(inner.back().hi()) + 1;
                } else {
                    s = rational_between(inner[k - 1], inner[k]);
                }
                bool first = (sign(d.eval(s)) >= 0) == sup;
                pick = first ? a[i] : b[i];
            }
            local.pieces.push_back(pick);
        }
        if (i > 0) h.breaks.push_back(breaks[i - 1]);
        for (std::size_t k = 0; k < local.pieces.size(); ++k) {
            if (k > 0) h.breaks.push_back(inner[k - 1]);
            h.pieces.push_back(local.pieces[k]);
        }
    }
    return other ? simplify(std::move(h)) : h;
}

inline Piecewise piecewise_of(const FTerm& t, const std::string& var) {
    switch (t.kind()) {
    case FKind::Var: return Piecewise::of(Poly::x());
    case FKind::Const: return Piecewise::of(Poly::constant(t.value()));
    case FKind::Neg: {
        Piecewise f = piecewise_of(t.args()[0], var);
        for (auto& p : f.pieces) p = Rational(-1) * p;
        return f;
    }
    default: break;
    }
    Piecewise acc = piecewise_of(t.args()[0], var);
    for (std::size_t i = 1; i < t.args().size(); ++i) {
        Piecewise g = piecewise_of(t.args()[i], var);
        switch (t.kind()) {
        case FKind::Add: acc = combine(acc, g, [](const Poly& a, const Poly& b) { return a + b; }); break;
        case FKind::Mul: acc = combine(acc, g, [](const Poly& a, const Poly& b) { return a * b; }); break;
        case FKind::Sup: acc = split_at_roots(acc, true, &g); break;
        case FKind::Inf: acc = split_at_roots(acc, false, &g); break;
        default: break;
        }
    }
    return acc;
}

} // namespace detail

/// Decides a one-variable Horn rule over the real algebraic numbers. Each atom is turned into
/// a piecewise polynomial whose breaks include its zeros; between breaks every atom has constant
/// truth value, so one rational probe per interval and the breaks themselves settle the rule.
inline UnivariateResult fring_rule_univariate(const std::vector<FAtom>& hyps, const FAtom& concl) {
    std::set<std::string> vars;
    for (const auto& h : hyps) h.term.collect_vars(vars);
    concl.term.collect_vars(vars);
    if (vars.size() > 1) fail(ErrorCode::Multivariate, "univariate decision needs at most one variable");
    UnivariateResult res;
    res.var = vars.empty() ? "x" : *vars.begin();

    std::vector<Piecewise> atoms;
    std::vector<FPred> preds;
    std::vector<AlgReal> all;
    auto add = [&](const FAtom& a) {
        Piecewise f = detail::split_at_roots(detail::piecewise_of(a.term, res.var), true);
        all = detail::merge_breaks(all, f.breaks);
        atoms.push_back(std::move(f));
        preds.push_back(a.pred);
    };
    for (const auto& h : hyps) add(h);
    add(concl);

    std::vector<std::vector<Poly>> spread;
    for (const auto& f : atoms) spread.push_back(detail::spread(f, all));
    // At break i the left-hand piece applies by continuity.
    auto refutes_at_break = [&](std::size_t i) {
        const AlgReal& x = all[i];
        auto holds = [&](std::size_t a) {
            const Poly& p = spread[a][i];
            int s = x.is_point() ? sign(p.eval(x.lo())) : sign_at(p, x);
            return pred_holds(preds[a], s);
        };
        for (std::size_t a = 0; a + 1 < atoms.size(); ++a)
            if (!holds(a)) return false;
        return !holds(atoms.size() - 1);
    };
    Piecewise grid{all, {}};
    auto refutes_in = [&](std::size_t i, Rational& s) {
        s = grid.sample(i);
        for (std::size_t a = 0; a + 1 < atoms.size(); ++a)
            if (!pred_holds(preds[a], sign(spread[a][i].eval(s)))) return false;
        return !pred_holds(preds.back(), sign(spread.back()[i].eval(s)));
    };
    auto found = [&](const AlgReal& x) {
        res.verdict = IdentityVerdict::Counterexample;
        res.at = x;
        return res;
    };
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].is_point() && refutes_at_break(i)) return found(all[i]);
    for (std::size_t i = 0; i <= all.size(); ++i) {
        Rational s;
        if (refutes_in(i, s)) return found(AlgReal::rational(s));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        if (!all[i].is_point() && refutes_at_break(i)) return found(all[i]);
    return res;
}

inline UnivariateResult fring_identity_univariate(const FTerm& t1, const FTerm& t2) {
    return fring_rule_univariate({}, eq_atom(t1, t2));
}

/// Random rational point; coordinates are sometimes 0 or +-(the previous one)
/// so that hypotheses like ab = 0 or a^2 = b^2 are reachable.
inline std::map<std::string, Rational> sample_point(const std::set<std::string>& vars, std::mt19937_64& rng) {
    std::map<std::string, Rational> pt;
    std::optional<Rational> prev;
    for (const auto& v : vars) {
        std::uint64_t r = rng();
        int mode = static_cast<int>(r % 5);
        Rational x;
        if (mode == 0) {
            x = 0;
        } else if (mode == 1 && prev) {
            x = (r >> 3) % 2 ? *prev : Rational(-*prev);
        } else {
            long num = static_cast<long>((r >> 8) % 13) - 6;
            long den = static_cast<long>((r >> 16) % 4) + 1;
            x = make_rational(num, den);
        }
        pt[v] = x;
        prev = x;
    }
    return pt;
}

/// Falsifier only: returns the first sampled point satisfying the hypotheses and not the conclusion.
inline std::optional<std::map<std::string, Rational>> fring_falsify_rule(const std::vector<FAtom>& hyps,
                                                                        const FAtom& concl, int trials,
                                                                        std::uint64_t seed) {
    std::set<std::string> vars;
    for (const auto& h : hyps) h.term.collect_vars(vars);
    concl.term.collect_vars(vars);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        auto pt = sample_point(vars, rng);
        bool ok = true;
        for (const auto& h : hyps) ok = ok && atom_holds(h, pt);
        if (ok && !atom_holds(concl, pt)) return pt;
    }
    return std::nullopt;
}

inline std::optional<std::map<std::string, Rational>> fring_falsify_sample(const FTerm& t1, const FTerm& t2,
                                                                          int trials, std::uint64_t seed) {
    return fring_falsify_rule({}, eq_atom(t1, t2), trials, seed);
}

} // namespace cralg

#endif // CRALG_IDENTITY_HPP
