#ifndef CRALG_SERIES_HPP
#define CRALG_SERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cralg/fterm.hpp"
#include "cralg/rational.hpp"

namespace cralg {

/// Formal power series in eps with rational coefficients, computed lazily.
/// The generator receives the index and the already computed prefix; it must be pure.
class Series {
public:
    using Gen = std::function<Rational(std::size_t, const std::vector<Rational>&)>;

    Series() : Series(constant(Rational(0))) {}
    explicit Series(Gen g) : p_(std::make_shared<Impl>()) { p_->gen = std::move(g); }

    static Series constant(const Rational& c) {
        return Series([c](std::size_t k, const std::vector<Rational>&) { return k == 0 ? c : Rational(0); });
    }
    static Series zero() { return constant(Rational(0)); }
    /// A finite prefix followed by zeros.
    static Series polynomial(std::vector<Rational> cs) {
        return Series([cs = std::move(cs)](std::size_t k, const std::vector<Rational>&) {
            return k < cs.size() ? cs[k] : Rational(0);
        });
    }
    static Series eps_pow(std::size_t j) {
        return Series([j](std::size_t k, const std::vector<Rational>&) { return Rational(k == j ? 1 : 0); });
    }
    static Series from_fn(std::function<Rational(std::size_t)> f) {
        return Series([f = std::move(f)](std::size_t k, const std::vector<Rational>&) { return f(k); });
    }

    Rational coeff(std::size_t k) const {
        std::lock_guard<std::mutex> lock(p_->m);
        while (p_->cache.size() <= k) {
            Rational c = p_->gen(p_->cache.size(), p_->cache);
            p_->cache.push_back(c);
        }
        return p_->cache[k];
    }
    std::vector<Rational> prefix(std::size_t n) const {
        std::vector<Rational> out;
        for (std::size_t k = 0; k < n; ++k) out.push_back(coeff(k));
        return out;
    }
    std::size_t cached() const {
        std::lock_guard<std::mutex> lock(p_->m);
        return p_->cache.size();
    }

    std::string str(std::size_t n = 6) const {
        std::string s;
        for (std::size_t k = 0; k < n; ++k) {
            Rational c = coeff(k);
            if (c == 0) continue;
            std::string mag = abs_value(c) == 1 && k > 0 ? "" : abs_value(c).get_str();
            std::string mono = k == 0 ? "" : k == 1 ? "e" : "e^" + std::to_string(k);
            if (!mag.empty() && !mono.empty()) mag += "*";
            s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            s += mag + mono;
        }
        return (s.empty() ? "0" : s) + " + O(e^" + std::to_string(n) + ")";
    }

private:
    struct Impl {
        Gen gen;
        std::mutex m;
        std::vector<Rational> cache;
    };
    std::shared_ptr<Impl> p_;
};

inline Series operator+(const Series& a, const Series& b) {
    return Series([a, b](std::size_t k, const std::vector<Rational>&) { return Rational(a.coeff(k) + b.coeff(k)); });
}
inline Series operator-(const Series& a) {
    return Series([a](std::size_t k, const std::vector<Rational>&) { return Rational(-a.coeff(k)); });
}
inline Series operator-(const Series& a, const Series& b) {
    return Series([a, b](std::size_t k, const std::vector<Rational>&) { return Rational(a.coeff(k) - b.coeff(k)); });
}
inline Series operator*(const Rational& s, const Series& a) {
    return Series([s, a](std::size_t k, const std::vector<Rational>&) { return Rational(s * a.coeff(k)); });
}
inline Series operator*(const Series& a, const Series& b) {
    return Series([a, b](std::size_t k, const std::vector<Rational>&) {
        Rational s = 0;
        for (std::size_t i = 0; i <= k; ++i) s += a.coeff(i) * b.coeff(k - i);
        return s;
    });
}

/// Multiplication by eps^j.
inline Series shift_up(const Series& a, std::size_t j) {
    return Series([a, j](std::size_t k, const std::vector<Rational>&) { return k < j ? Rational(0) : a.coeff(k - j); });
}
/// Division by eps^j; the caller knows the first j coefficients vanish.
inline Series shift_down(const Series& a, std::size_t j) {
    return Series([a, j](std::size_t k, const std::vector<Rational>&) { return a.coeff(k + j); });
}

/// Potential sign: Pos(k)/Neg(k) at the first nonzero coefficient, else ZeroUpTo(K).
struct SignState {
    enum Kind { Pos, Neg, ZeroUpTo } kind;
    std::size_t index;

    bool determined() const { return kind != ZeroUpTo; }
    int sign() const { return kind == Pos ? 1 : kind == Neg ? -1 : 0; }
    std::string str() const {
        const char* n = kind == Pos ? "Pos" : kind == Neg ? "Neg" : "ZeroUpTo";
        return std::string(n) + "(" + std::to_string(index) + ")";
    }
    friend bool operator==(const SignState& a, const SignState& b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

inline SignState kappa(const Series& s, std::size_t budget) {
    for (std::size_t k = 0; k <= budget; ++k) {
        int sg = sign(s.coeff(k));
        if (sg > 0) return {SignState::Pos, k};
        if (sg < 0) return {SignState::Neg, k};
    }
    return {SignState::ZeroUpTo, budget};
}

/// kappa_k as a value in {-1, 0, 1}.
inline int kappa_at(const Series& s, std::size_t k) { return kappa(s, k).sign(); }

/// v(s) when it is at most the budget.
inline std::optional<std::size_t> valuation(const Series& s, std::size_t budget) {
    SignState st = kappa(s, budget);
    if (!st.determined()) return std::nullopt;
    return st.index;
}

/// c_k(|s|) = kappa_k(s) c_k(s).
inline Series abs(const Series& a) {
    auto sgn = std::make_shared<int>(0);
    return Series([a, sgn](std::size_t k, const std::vector<Rational>&) {
        Rational c = a.coeff(k);
        if (*sgn == 0) *sgn = sign(c);
        return Rational(*sgn * c);
    });
}
inline Series sup(const Series& a, const Series& b) {
    return make_rational(1, 2) * (a + b + abs(a - b));
}
inline Series inf(const Series& a, const Series& b) {
    return make_rational(1, 2) * (a + b - abs(a - b));
}

/// Inverse of a series with nonzero constant term.
inline Series invert_unit(const Series& s, std::size_t budget = 0) {
    Rational s0 = s.coeff(0);
    if (s0 == 0)
        fail(ErrorCode::NotAUnitUpTo, "kappa_0 is 0: the series is not a unit", static_cast<long>(budget));
    Rational inv0 = 1 / s0;
    return Series([s, inv0](std::size_t k, const std::vector<Rational>& r) {
        if (k == 0) return inv0;
        Rational acc = 0;
        for (std::size_t i = 1; i <= k; ++i) acc += s.coeff(i) * r[k - i];
        return Rational(-inv0 * acc);
    });
}

namespace detail {
inline void check_nonneg(const Series& s, std::size_t budget, const char* what) {
    SignState st = kappa(s, budget);
    if (st.kind == SignState::Neg)
        fail(ErrorCode::HypothesisViolatedAt, std::string(what) + " fails at exponent " + std::to_string(st.index),
             static_cast<long>(st.index));
}
} // namespace detail

/// rho with rho*zeta = xi^2 and 0 <= rho <= xi, for 0 <= xi <= zeta.
/// The hypotheses are checked up to the budget; coefficients below v(zeta) are 0.
inline Series frac(const Series& xi, const Series& zeta, std::size_t budget) {
    detail::check_nonneg(xi, budget, "0 <= xi");
    detail::check_nonneg(zeta - xi, budget, "xi <= zeta");
    struct State {
        std::optional<Series> tail;
    };
    auto st = std::make_shared<State>();
    return Series([xi, zeta, st](std::size_t k, const std::vector<Rational>&) {
        if (!st->tail) {
            if (kappa_at(zeta, k) == 0) return Rational(0);
            // v(zeta) = v: zeta = eps^v u with u a unit, xi = eps^v beta, rho = eps^v beta^2 / u.
            std::size_t v = kappa(zeta, k).index;
            Series beta = shift_down(xi, v);
            Series u = shift_down(zeta, v);
            st->tail = shift_up(beta * beta * invert_unit(u), v);
        }
        return st->tail->coeff(k);
    });
}

/// xi with alpha = beta*xi, for 0 <= alpha <= beta and beta > 0 with v(beta) within the budget.
inline Series val2_witness(const Series& alpha, const Series& beta, std::size_t budget) {
    auto v = valuation(beta, budget);
    if (!v || kappa_at(beta, *v) < 0)
        fail(ErrorCode::UndeterminedSign, "beta > 0 not visible within the budget", static_cast<long>(budget));
    for (std::size_t j = 0; j < *v; ++j)
        if (alpha.coeff(j) != 0)
            fail(ErrorCode::HypothesisViolatedAt, "alpha <= beta fails", static_cast<long>(j));
    return shift_down(alpha, *v) * invert_unit(shift_down(beta, *v));
}

/// Square root of s >= 0 with even valuation and a square leading coefficient.
inline Series sqrt_pos(const Series& s, std::size_t budget) {
    auto v = valuation(s, budget);
    if (!v) fail(ErrorCode::UndeterminedSign, "no nonzero coefficient within the budget", static_cast<long>(budget));
    if (*v % 2) fail(ErrorCode::OddValuation, "valuation " + std::to_string(*v) + " is odd", static_cast<long>(*v));
    Rational lead = s.coeff(*v), r0;
    if (lead < 0 || !rational_sqrt(lead, r0))
        fail(ErrorCode::LeadingNotASquare, "leading coefficient " + lead.get_str() + " is not a rational square");
    Series u = shift_down(s, *v);
    Series root([u, r0](std::size_t k, const std::vector<Rational>& r) {
        if (k == 0) return r0;
        Rational acc = u.coeff(k);
        for (std::size_t i = 1; i < k; ++i) acc -= r[i] * r[k - i];
        return Rational(acc / (2 * r0));
    });
    return shift_up(root, *v / 2);
}

/// Polynomial with series coefficients, lowest degree first.
using SeriesPoly = std::vector<Series>;

inline Series eval_series_poly(const SeriesPoly& P, const Series& x) {
    Series acc = Series::zero();
    for (auto it = P.rbegin(); it != P.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline SeriesPoly derivative(const SeriesPoly& P) {
    SeriesPoly d;
    for (std::size_t i = 1; i < P.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * P[i]);
    if (d.empty()) d.push_back(Series::zero());
    return d;
}

namespace detail {

inline void check_hensel(const SeriesPoly& P) {
    if (P.size() < 2) fail(ErrorCode::PreconditionFailed, "polynomial of degree < 1");
    if (P[0].coeff(0) != 0) fail(ErrorCode::PreconditionFailed, "v(P(0)) = 0");
    if (P[1].coeff(0) == 0) fail(ErrorCode::PreconditionFailed, "v(P'(0)) > 0");
}

} // namespace detail

/// The m-th Newton iterate from 0, computed exactly (P' stays a unit along the way),
/// so v(P(x_{m+1})) >= 2 v(P(x_m)) and v(P(x_m)) >= 2^m.
inline Series hensel_iterate(const SeriesPoly& P, unsigned m) {
    detail::check_hensel(P);
    SeriesPoly dP = derivative(P);
    Series x = Series::zero();
    for (unsigned i = 0; i < m; ++i) x = x - eval_series_poly(P, x) * invert_unit(eval_series_poly(dP, x));
    return x;
}

/// The unique root of valuation > 0; coefficient k comes from the iterate with 2^m > k.
inline Series hensel_root(const SeriesPoly& P) {
    detail::check_hensel(P);
    auto iterates = std::make_shared<std::map<unsigned, Series>>();
    return Series([P, iterates](std::size_t k, const std::vector<Rational>&) {
        unsigned m = 0;
        while ((std::size_t(1) << m) <= k) ++m;
        auto it = iterates->find(m);
        if (it == iterates->end()) it = iterates->emplace(m, hensel_iterate(P, m)).first;
        return it->second.coeff(k);
    });
}

/// eps^shift * body, with shift any integer.
struct Laurent {
    long shift = 0;
    Series body;

    static Laurent of(const Series& s) { return {0, s}; }

    // c_k(gamma) = c_{k - shift}(body).
    Rational coeff(long k) const { return k < shift ? Rational(0) : body.coeff(static_cast<std::size_t>(k - shift)); }
    int kappa_at(long k) const { return k < shift ? 0 : cralg::kappa_at(body, static_cast<std::size_t>(k - shift)); }
    /// Potential sign scanned over exponents shift..shift+budget; the index is the exponent.
    std::optional<long> valuation(std::size_t budget) const {
        auto v = cralg::valuation(body, budget);
        if (!v) return std::nullopt;
        return shift + static_cast<long>(*v);
    }

    Laurent aligned(long s) const {
        return {s, shift_up(body, static_cast<std::size_t>(shift - s))};
    }
};

inline Laurent operator+(const Laurent& a, const Laurent& b) {
    long s = std::min(a.shift, b.shift);
    return {s, a.aligned(s).body + b.aligned(s).body};
}
inline Laurent operator-(const Laurent& a) { return {a.shift, -a.body}; }
inline Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
inline Laurent operator*(const Laurent& a, const Laurent& b) { return {a.shift + b.shift, a.body * b.body}; }

/// No apartness visible in exponents below shift_min + budget.
inline bool equal_up_to(const Laurent& a, const Laurent& b, std::size_t budget) {
    Laurent d = a - b;
    return !d.valuation(budget).has_value();
}

/// Invertible exactly when some coefficient is visibly nonzero; otherwise NotAUnitUpTo(budget).
inline Laurent laurent_inverse(const Laurent& g, std::size_t budget) {
    auto v = cralg::valuation(g.body, budget);
    if (!v) fail(ErrorCode::NotAUnitUpTo, "no nonzero coefficient within the budget", static_cast<long>(budget));
    return {-(g.shift + static_cast<long>(*v)), invert_unit(shift_down(g.body, *v))};
}

/// t^start * body with t = eps^(1/denom).
struct PuiseuxSeries {
    long denom = 1;
    long start = 0;
    Series body;

    /// c_{l/denom}.
    Rational coeff(long l) const { return l < start ? Rational(0) : body.coeff(static_cast<std::size_t>(l - start)); }
    int kappa_at(long l) const { return l < start ? 0 : cralg::kappa_at(body, static_cast<std::size_t>(l - start)); }
    /// Valuation as a numerator over denom, when visible within the budget.
    std::optional<long> valuation_num(std::size_t budget) const {
        auto v = cralg::valuation(body, budget);
        if (!v) return std::nullopt;
        return start + static_cast<long>(*v);
    }
};

inline PuiseuxSeries puiseux_embed(const PuiseuxSeries& s, long d_new) {
    if (d_new < 1 || d_new % s.denom != 0)
        fail(ErrorCode::PreconditionFailed, "new denominator must be a multiple of " + std::to_string(s.denom));
    long f = d_new / s.denom;
    Series body = s.body;
    Series spread([body, f](std::size_t k, const std::vector<Rational>&) {
        return k % static_cast<std::size_t>(f) ? Rational(0) : body.coeff(k / static_cast<std::size_t>(f));
    });
    return {d_new, s.start * f, spread};
}

namespace detail {
inline long lcm_long(long a, long b) {
    long x = a, y = b;
    while (y) {
        long t = x % y;
        x = y;
        y = t;
    }
    return a / x * b;
}
inline std::pair<PuiseuxSeries, PuiseuxSeries> common(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    long d = lcm_long(a.denom, b.denom);
    PuiseuxSeries x = puiseux_embed(a, d), y = puiseux_embed(b, d);
    long s = std::min(x.start, y.start);
    x = {d, s, shift_up(x.body, static_cast<std::size_t>(x.start - s))};
    y = {d, s, shift_up(y.body, static_cast<std::size_t>(y.start - s))};
    return {x, y};
}
} // namespace detail

inline PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    auto [x, y] = detail::common(a, b);
    return {x.denom, x.start, x.body + y.body};
}
inline PuiseuxSeries operator-(const PuiseuxSeries& a) { return {a.denom, a.start, -a.body}; }
inline PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    long d = detail::lcm_long(a.denom, b.denom);
    PuiseuxSeries x = puiseux_embed(a, d), y = puiseux_embed(b, d);
    return {d, x.start + y.start, x.body * y.body};
}

/// Coefficientwise limit of members sharing (start, denom). witness(l) is the index from
/// which c_{l/d} no longer changes; it is cross-checked against the next `window` members.
inline PuiseuxSeries puiseux_limit(std::function<PuiseuxSeries(std::size_t)> member,
                                   std::function<std::size_t(long)> witness, std::size_t window = 4) {
    PuiseuxSeries first = member(0);
    long d = first.denom, j = first.start;
    Series body([member, witness, window, d, j](std::size_t k, const std::vector<Rational>&) {
        long l = j + static_cast<long>(k);
        std::size_t n = witness(l);
        std::optional<Rational> value;
        for (std::size_t m = n; m <= n + window; ++m) {
            PuiseuxSeries a = member(m);
            if (a.denom != d || a.start != j)
                fail(ErrorCode::InconsistentWitness, "members do not share (start, denom)", l);
            Rational c = a.coeff(l);
            if (value && c != *value)
                fail(ErrorCode::InconsistentWitness, "coefficient " + std::to_string(l) + " still moves after N", l);
            value = c;
        }
        return *value;
    });
    return {d, j, body};
}

/// Evaluation of a lattice-ring term on series.
inline Series eval_fterm(const FTerm& t, const std::map<std::string, Series>& env) {
    switch (t.kind()) {
    case FKind::Var: {
        auto it = env.find(t.name());
        if (it == env.end()) fail(ErrorCode::MissingVariable, "no series for variable " + t.name());
        return it->second;
    }
    case FKind::Const: return Series::constant(t.value());
    case FKind::Neg: return -eval_fterm(t.args()[0], env);
    default: break;
    }
    Series acc = eval_fterm(t.args()[0], env);
    for (std::size_t i = 1; i < t.args().size(); ++i) {
        Series b = eval_fterm(t.args()[i], env);
        switch (t.kind()) {
        case FKind::Add: acc = acc + b; break;
        case FKind::Mul: acc = acc * b; break;
        case FKind::Sup: acc = sup(acc, b); break;
        case FKind::Inf: acc = inf(acc, b); break;
        default: break;
        }
    }
    return acc;
}

} // namespace cralg

#endif // CRALG_SERIES_HPP
