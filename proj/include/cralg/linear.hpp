#ifndef CRALG_LINEAR_HPP
#define CRALG_LINEAR_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cralg/algreal.hpp"
#include "cralg/rational.hpp"

namespace cralg {

/// Affine form constant + sum coeff[v] * v.
struct LinForm {
    Rational constant = 0;
    std::map<std::string, Rational> coeff;

    static LinForm var(const std::string& v, const Rational& a = 1) {
        LinForm f;
        if (a != 0) f.coeff[v] = a;
        return f;
    }
    static LinForm cst(const Rational& c) {
        LinForm f;
        f.constant = c;
        return f;
    }

    bool is_constant() const { return coeff.empty(); }

    Rational eval(const std::map<std::string, Rational>& point) const {
        Rational s = constant;
        for (const auto& [v, a] : coeff) {
            auto it = point.find(v);
            if (it == point.end()) fail(ErrorCode::MissingVariable, "no value for variable " + v);
            s += a * it->second;
        }
        return s;
    }

    LinForm& operator+=(const LinForm& o) {
        constant += o.constant;
        for (const auto& [v, a] : o.coeff) {
            Rational& t = coeff[v];
            t += a;
            if (t == 0) coeff.erase(v);
        }
        return *this;
    }
    friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
    friend LinForm operator*(const Rational& s, const LinForm& f) {
        LinForm r;
        if (s == 0) return r;
        r.constant = s * f.constant;
        for (const auto& [v, a] : f.coeff) r.coeff[v] = s * a;
        return r;
    }
    LinForm operator-() const { return Rational(-1) * *this; }
    friend LinForm operator-(const LinForm& a, const LinForm& b) { return a + (-b); }
    friend bool operator==(const LinForm& a, const LinForm& b) {
        return a.constant == b.constant && a.coeff == b.coeff;
    }
    friend bool operator<(const LinForm& a, const LinForm& b) {
        if (a.constant != b.constant) return a.constant < b.constant;
        return a.coeff < b.coeff;
    }

    std::string str() const {
        std::string s;
        for (const auto& [v, a] : coeff) {
            if (!s.empty()) s += a < 0 ? " - " : " + ";
            else if (a < 0) s += "-";
            Rational m = abs(a);
            if (m != 1) s += m.get_str() + "*";
            s += v;
        }
        if (constant != 0 || s.empty()) {
            if (s.empty()) s = constant.get_str();
            else s += (constant < 0 ? " - " : " + ") + Rational(abs(constant)).get_str();
        }
        return s;
    }
};

enum class Rel { Gt, Ge, Eq };

struct LinConstraint {
    LinForm form;
    Rel rel;
};

enum class Feasibility { Feasible, Infeasible };

struct FeasibilityResult {
    Feasibility verdict = Feasibility::Infeasible;
    std::map<std::string, Rational> witness;
    bool feasible() const { return verdict == Feasibility::Feasible; }
};

namespace detail {

struct FMRow {
    std::vector<Rational> a;
    Rational c;
    bool strict;
};

inline bool row_holds_constant(const FMRow& r) { return r.strict ? r.c > 0 : r.c >= 0; }

inline bool row_is_constant(const FMRow& r) {
    for (const auto& v : r.a)
        if (v != 0) return false;
    return true;
}

/// Scales so that the first nonzero coefficient is +-1, then keeps only the tightest row
/// per coefficient direction.
inline std::vector<FMRow> prune(std::vector<FMRow> rows, bool& infeasible) {
    std::map<std::vector<Rational>, FMRow> best;
    std::vector<FMRow> out;
    for (auto& r : rows) {
        if (row_is_constant(r)) {
            if (!row_holds_constant(r)) infeasible = true;
            continue;
        }
        Rational lead;
        for (const auto& v : r.a)
            if (v != 0) {
                lead = abs(v);
                break;
            }
        for (auto& v : r.a) v /= lead;
        r.c /= lead;
        auto it = best.find(r.a);
        if (it == best.end()) {
            best.emplace(r.a, r);
        } else if (r.c < it->second.c || (r.c == it->second.c && r.strict)) {
            it->second = r;
        }
    }
    for (auto& [k, r] : best) out.push_back(std::move(r));
    return out;
}

inline Rational choose_value(const std::optional<Rational>& lo, bool lo_strict,
                             const std::optional<Rational>& hi, bool hi_strict) {
    auto ok = [&](const Rational& x) {
        if (lo && (lo_strict ? !(x > *lo) : !(x >= *lo))) return false;
        if (hi && (hi_strict ? !(x < *hi) : !(x <= *hi))) return false;
        return true;
    };
    if (ok(Rational(0))) return Rational(0);
    if (!lo) return floor_q(*hi) - 1;
    if (!hi) return floor_q(*lo) + 1;
    Rational s = simplest_between(*lo, *hi);
    if (ok(s)) return s;
    return (*lo + *hi) / 2;
}

} // namespace detail

/// Exact feasibility of a system of affine constraints (> 0, >= 0, = 0) by Gaussian
/// elimination of the equalities followed by Fourier-Motzkin elimination. A witness
/// point is produced by back substitution when feasible.
inline FeasibilityResult fm_feasible(const std::vector<LinConstraint>& cons) {
    using detail::FMRow;
    std::vector<std::string> names;
    {
        std::set<std::string> s;
        for (const auto& c : cons)
            for (const auto& [v, a] : c.form.coeff) s.insert(v);
        names.assign(s.begin(), s.end());
    }
    std::size_t n = names.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[names[i]] = i;

    auto to_row = [&](const LinForm& f, bool strict) {
        FMRow r{std::vector<Rational>(n, Rational(0)), f.constant, strict};
        for (const auto& [v, a] : f.coeff) r.a[index[v]] = a;
        return r;
    };

    std::vector<FMRow> eqs, rows;
    for (const auto& c : cons) {
        if (c.rel == Rel::Eq) eqs.push_back(to_row(c.form, false));
        else rows.push_back(to_row(c.form, c.rel == Rel::Gt));
    }

    // x_pivot = -(c + sum_{j != pivot} a_j x_j) / a_pivot
    struct Subst {
        std::size_t var;
        FMRow expr;
    };
    std::vector<Subst> substs;
    FeasibilityResult res;
    while (!eqs.empty()) {
        FMRow e = eqs.back();
        eqs.pop_back();
        std::size_t piv = n;
        for (std::size_t j = 0; j < n; ++j)
            if (e.a[j] != 0) {
                piv = j;
                break;
            }
        if (piv == n) {
            if (e.c != 0) return res;
            continue;
        }
        FMRow expr{std::vector<Rational>(n, Rational(0)), -e.c / e.a[piv], false};
        for (std::size_t j = 0; j < n; ++j)
            if (j != piv) expr.a[j] = -e.a[j] / e.a[piv];
        auto apply = [&](FMRow& r) {
            Rational k = r.a[piv];
            if (k == 0) return;
            r.a[piv] = 0;
            for (std::size_t j = 0; j < n; ++j) r.a[j] += k * expr.a[j];
            r.c += k * expr.c;
        };
        for (auto& r : eqs) apply(r);
        for (auto& r : rows) apply(r);
        for (auto& s : substs) apply(s.expr);
        substs.push_back({piv, expr});
    }

    bool infeasible = false;
    rows = detail::prune(std::move(rows), infeasible);
    if (infeasible) return res;

    std::vector<bool> eliminated(n, false);
    for (const auto& s : substs) eliminated[s.var] = true;

    struct Level {
        std::size_t var;
        std::vector<FMRow> rows;
    };
    std::vector<Level> levels;
    for (;;) {
        // pick the remaining variable with the fewest generated combinations
        std::size_t pick = n;
        std::size_t best_cost = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (eliminated[j]) continue;
            std::size_t p = 0, q = 0;
            for (const auto& r : rows) {
                if (r.a[j] > 0) ++p;
                else if (r.a[j] < 0) ++q;
            }
            std::size_t cost = p * q;
            if (pick == n || cost < best_cost) {
                pick = j;
                best_cost = cost;
            }
        }
        if (pick == n) break;
        levels.push_back({pick, rows});
        eliminated[pick] = true;
        std::vector<FMRow> pos, neg, next;
        for (auto& r : rows) {
            if (r.a[pick] > 0) pos.push_back(r);
            else if (r.a[pick] < 0) neg.push_back(r);
            else next.push_back(r);
        }
        for (const auto& P : pos)
            for (const auto& N : neg) {
                Rational a = P.a[pick], b = -N.a[pick];
                FMRow r{std::vector<Rational>(n, Rational(0)), b * P.c + a * N.c, P.strict || N.strict};
                for (std::size_t j = 0; j < n; ++j) r.a[j] = b * P.a[j] + a * N.a[j];
                r.a[pick] = 0;
                next.push_back(std::move(r));
            }
        rows = detail::prune(std::move(next), infeasible);
        if (infeasible) return res;
    }

    std::vector<Rational> x(n, Rational(0));
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        std::size_t v = it->var;
        std::optional<Rational> lo, hi;
        bool lo_s = false, hi_s = false;
        for (const auto& r : it->rows) {
            if (r.a[v] == 0) continue;
            Rational rest = r.c;
            for (std::size_t j = 0; j < n; ++j)
                if (j != v) rest += r.a[j] * x[j];
            Rational bound = -rest / r.a[v];
            if (r.a[v] > 0) {
                if (!lo || bound > *lo || (bound == *lo && r.strict)) {
                    lo = bound;
                    lo_s = r.strict;
                }
            } else {
                if (!hi || bound < *hi || (bound == *hi && r.strict)) {
                    hi = bound;
                    hi_s = r.strict;
                }
            }
        }
        x[v] = detail::choose_value(lo, lo_s, hi, hi_s);
    }
    for (auto it = substs.rbegin(); it != substs.rend(); ++it) {
        Rational val = it->expr.c;
        for (std::size_t j = 0; j < n; ++j) val += it->expr.a[j] * x[j];
        x[it->var] = val;
    }
    res.verdict = Feasibility::Feasible;
    for (std::size_t i = 0; i < n; ++i) res.witness[names[i]] = x[i];
    return res;
}

/// Decides whether some rational point makes every strict form > 0 and every
/// nonstrict form >= 0.
inline Feasibility linear_system_feasible(const std::vector<LinForm>& strict,
                                          const std::vector<LinForm>& nonstrict) {
    std::vector<LinConstraint> cons;
    for (const auto& f : strict) cons.push_back({f, Rel::Gt});
    for (const auto& f : nonstrict) cons.push_back({f, Rel::Ge});
    return fm_feasible(cons).verdict;
}

/// Checks a witness against a constraint list.
inline bool satisfies(const std::vector<LinConstraint>& cons, const std::map<std::string, Rational>& point) {
    for (const auto& c : cons) {
        std::map<std::string, Rational> p = point;
        for (const auto& [v, a] : c.form.coeff) p.emplace(v, Rational(0));
        Rational val = c.form.eval(p);
        if (c.rel == Rel::Gt && !(val > 0)) return false;
        if (c.rel == Rel::Ge && !(val >= 0)) return false;
        if (c.rel == Rel::Eq && val != 0) return false;
    }
    return true;
}

/// Finds x >= 0 with A x = b by the two-phase simplex method (phase one only),
/// exact arithmetic and Bland's rule. Returns nullopt when infeasible.
inline std::optional<std::vector<Rational>> simplex_feasible(std::vector<std::vector<Rational>> A,
                                                             std::vector<Rational> b) {
    std::size_t m = A.size();
    std::size_t n = m ? A[0].size() : 0;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& v : A[i]) v = -v;
        }
    // tableau columns: n originals, m artificials, then rhs
    std::size_t cols = n + m;
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][cols] = b[i];
        basis[i] = n + i;
    }
    // objective: minimize sum of artificials; reduced costs r_j = -sum_i T[i][j] for j < n
    std::vector<Rational> obj(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < n || j == cols) obj[j] -= T[i][j];
    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rational ratio = T[i][cols] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break; // unbounded direction cannot occur in phase one
        Rational pv = T[leave][enter];
        for (auto& v : T[leave]) v /= pv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
        }
        if (obj[enter] != 0) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (obj[cols] != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T[i][cols];
    return x;
}

} // namespace cralg

#endif // CRALG_LINEAR_HPP
