#ifndef CRALG_ALGREAL_HPP
#define CRALG_ALGREAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cralg/poly.hpp"
#include "cralg/sturm.hpp"

namespace cralg {

enum class Order { LT = -1, EQ = 0, GT = 1 };

inline Rational floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

/// Rational with the smallest denominator in [a, b].
inline Rational simplest_between(const Rational& a, const Rational& b) {
    if (a > b) return simplest_between(b, a);
    if (a <= 0 && b >= 0) return Rational(0);
    if (b < 0) return -simplest_between(-b, -a);
    Rational fl = floor_q(a);
    if (fl == a) return a;
    if (fl + 1 <= b) return fl + 1;
    Rational r = fl + 1 / simplest_between(1 / (b - fl), 1 / (a - fl));
    r.canonicalize();
    return r;
}

/// A real algebraic number: squarefree monic defining polynomial plus an isolating
/// interval. When lo < hi the root lies strictly inside and neither endpoint is a root;
/// when lo == hi the number is that rational.
class AlgReal {
public:
    AlgReal() : AlgReal(rational(Rational(0))) {}

    static AlgReal rational(const Rational& q) {
        AlgReal r(std::make_shared<const Poly>(Poly{-q, Rational(1)}), q, q);
        return r;
    }

    /// `def` need not be squarefree or monic; the interval must contain exactly one of its
    /// real roots, and (if lo < hi) neither endpoint may be a root.
    static AlgReal from_interval(const Poly& def, const Rational& lo, const Rational& hi) {
        if (lo > hi) fail(ErrorCode::BadInterval, "isolating interval with lo > hi");
        Poly q = squarefree_part(def);
        if (q.degree() < 1) fail(ErrorCode::BadInterval, "constant defining polynomial");
        if (lo == hi) {
            if (q.eval(lo) != 0) fail(ErrorCode::BadInterval, "point interval is not a root");
            return rational(lo);
        }
        if (q.eval(lo) == 0 || q.eval(hi) == 0)
            fail(ErrorCode::BadInterval, "isolating interval endpoint is a root");
        if (SturmChain(q).count(lo, hi) != 1)
            fail(ErrorCode::BadInterval, "interval does not isolate exactly one root");
        if (q.degree() == 1) return rational(-q.coeff(0));
        return AlgReal(std::make_shared<const Poly>(std::move(q)), lo, hi);
    }

    const Poly& defining() const { return *def_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool is_point() const { return lo_ == hi_; }

    /// One bisection step. The new interval is nested in the old one.
    void refine() {
        if (is_point()) return;
        Rational m = (lo_ + hi_) / 2;
        int s = def_->sign_at(m);
        if (s == 0) {
            lo_ = hi_ = m;
        } else if (s == slo_) {
            lo_ = m;
        } else {
            hi_ = m;
        }
    }

    void refine_below(const Rational& width) {
        while (!is_point() && hi_ - lo_ > width) refine();
    }

    /// Exact rational value if the number is rational and detected as such within
    /// `max_steps` bisections.
    std::optional<Rational> try_rational(int max_steps = 64) const {
        if (is_point()) return lo_;
        AlgReal c = *this;
        for (int i = 0; i <= max_steps; ++i) {
            if (c.is_point()) return c.lo_;
            Rational q = simplest_between(c.lo_, c.hi_);
            if (c.def_->eval(q) == 0) return q;
            for (int k = 0; k < 4; ++k) c.refine();
        }
        return std::nullopt;
    }

    /// Replaces the interval by the rational point when the value is detectably rational.
    AlgReal snapped(int max_steps = 64) const {
        if (auto q = try_rational(max_steps)) return rational(*q);
        return *this;
    }

    AlgReal negated() const {
        if (is_point()) return rational(-lo_);
        Poly d = def_->reflect();
        if (d.lc() < 0) d = -d;
        return AlgReal(std::make_shared<const Poly>(d.monic()), -hi_, -lo_);
    }

    /// c * this
    AlgReal scaled(const Rational& c) const {
        if (c == 0) return rational(Rational(0));
        if (is_point()) return rational(c * lo_);
        Poly d = def_->scale_var(1 / c).monic();
        Rational a = c * lo_, b = c * hi_;
        if (c < 0) std::swap(a, b);
        return AlgReal(std::make_shared<const Poly>(std::move(d)), a, b);
    }

    /// Midpoint approximation as a decimal string (presentation only).
    std::string decimal(int digits = 6) const {
        AlgReal c = *this;
        Rational w(1);
        for (int i = 0; i < digits + 2; ++i) w /= 10;
        c.refine_below(w);
        return to_decimal((c.lo_ + c.hi_) / 2, digits);
    }

    std::string str() const {
        if (is_point()) return lo_.get_str();
        return "root of " + def_->str() + " in (" + lo_.get_str() + ", " + hi_.get_str() + ")";
    }

private:
    AlgReal(std::shared_ptr<const Poly> def, Rational lo, Rational hi)
        : def_(std::move(def)), lo_(std::move(lo)), hi_(std::move(hi)) {
        slo_ = is_point() ? 0 : def_->sign_at(lo_);
    }

    std::shared_ptr<const Poly> def_;
    Rational lo_, hi_;
    int slo_ = 0;
};

/// Exact order of two algebraic numbers; equality is decided through the gcd of the
/// defining polynomials on the overlap of the intervals.
inline Order algreal_compare(AlgReal x, AlgReal y) {
    for (;;) {
        if (x.is_point() && y.is_point()) {
            int c = cmp(x.lo(), y.lo());
            return c < 0 ? Order::LT : (c > 0 ? Order::GT : Order::EQ);
        }
        if (x.hi() < y.lo() || (x.hi() == y.lo())) return Order::LT;
        if (y.hi() < x.lo() || (y.hi() == x.lo())) return Order::GT;
        if (x.is_point()) {
            if (y.defining().eval(x.lo()) == 0) return Order::EQ;
            y.refine();
            continue;
        }
        if (y.is_point()) {
            if (x.defining().eval(y.lo()) == 0) return Order::EQ;
            x.refine();
            continue;
        }
        Poly g = gcd(x.defining(), y.defining());
        if (g.degree() >= 1) {
            Rational L = std::max(x.lo(), y.lo()), H = std::min(x.hi(), y.hi());
            if (g.sign_at(L) != g.sign_at(H)) return Order::EQ;
        }
        x.refine();
        y.refine();
    }
}

inline bool operator<(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) == Order::LT; }
inline bool operator>(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) == Order::GT; }
inline bool operator<=(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) != Order::GT; }
inline bool operator>=(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) != Order::LT; }
inline bool operator==(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) == Order::EQ; }
inline bool operator!=(const AlgReal& a, const AlgReal& b) { return algreal_compare(a, b) != Order::EQ; }

inline const AlgReal& min_of(const AlgReal& a, const AlgReal& b) { return b < a ? b : a; }
inline const AlgReal& max_of(const AlgReal& a, const AlgReal& b) { return b > a ? b : a; }

/// A rational strictly between a and b; requires a < b.
inline Rational rational_between(AlgReal a, AlgReal b) {
    if (!(a < b)) fail(ErrorCode::EmptyInterval, "rational_between needs a < b");
    for (;;) {
        if (a.hi() <= b.lo()) {
            Rational q = simplest_between(a.hi(), b.lo());
            AlgReal qa = AlgReal::rational(q);
            if (a < qa && qa < b) return q;
            q = (a.hi() + b.lo()) / 2;
            qa = AlgReal::rational(q);
            if (a < qa && qa < b) return q;
        }
        a.refine();
        b.refine();
    }
}

/// Exact sign of p at x.
inline int sign_at(const Poly& p, AlgReal x) {
    if (p.is_zero()) return 0;
    if (x.is_point()) return p.sign_at(x.lo());
    Poly g = gcd(p, x.defining());
    if (g.degree() >= 1 && g.sign_at(x.lo()) != g.sign_at(x.hi())) return 0;
    if (p.degree() == 0) return sgn(p.lc());
    SturmChain chain(squarefree_part(p));
    for (;;) {
        if (x.is_point()) return p.sign_at(x.lo());
        if (chain.count(x.lo(), x.hi()) == 0) return p.sign_at(x.hi());
        x.refine();
    }
}

/// Multiplicity of x as a root of p (0 when p(x) != 0).
inline int multiplicity(const Poly& p, const AlgReal& x) {
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "multiplicity in the zero polynomial");
    int k = 0;
    Poly q = p;
    while (!q.is_zero() && sign_at(q, x) == 0) {
        ++k;
        q = q.derivative();
    }
    return k;
}

namespace detail {

inline void isolate_rec(const SturmChain& chain, const Rational& a, const Rational& b, int n,
                        std::vector<AlgReal>& out) {
    // n distinct roots in (a, b]; b is never a root here.
    if (n == 0) return;
    const Poly& q = chain.base();
    if (n == 1) {
        out.push_back(AlgReal::from_interval(q, a, b).snapped(16));
        return;
    }
    Rational m = (a + b) / 2;
    if (q.eval(m) == 0) {
        Rational d = (b - a) / 4;
        while (q.eval(m - d) == 0 || q.eval(m + d) == 0 || chain.count(m - d, m + d) != 1) d /= 2;
        int left = chain.count(a, m - d);
        isolate_rec(chain, a, m - d, left, out);
        out.push_back(AlgReal::rational(m));
        isolate_rec(chain, m + d, b, n - left - 1, out);
        return;
    }
    int left = chain.count(a, m);
    isolate_rec(chain, a, m, left, out);
    isolate_rec(chain, m, b, n - left, out);
}

} // namespace detail

/// Distinct real roots of p in increasing order, with disjoint isolating intervals.
inline std::vector<AlgReal> isolate_real_roots(const Poly& p) {
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "isolate_real_roots of zero");
    std::vector<AlgReal> out;
    Poly q = squarefree_part(p);
    if (q.degree() < 1) return out;
    SturmChain chain(q);
    Rational B = cauchy_bound(q);
    detail::isolate_rec(chain, -B, B, chain.count(-B, B), out);
    return out;
}

/// Interval enclosure of p over [lo, hi] by Horner's scheme.
inline std::pair<Rational, Rational> interval_eval(const Poly& p, const Rational& lo, const Rational& hi) {
    Rational L = 0, H = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        Rational cands[4] = {L * lo, L * hi, H * lo, H * hi};
        Rational nl = cands[0], nh = cands[0];
        for (auto& v : cands) {
            if (v < nl) nl = v;
            if (v > nh) nh = v;
        }
        L = nl + *it;
        H = nh + *it;
    }
    return {L, H};
}

/// Characteristic polynomial of a square rational matrix (Faddeev-LeVerrier).
inline Poly charpoly(const std::vector<std::vector<Rational>>& A) {
    std::size_t n = A.size();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rational>> AM(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational s = 0;
                for (std::size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
                AM[i][j] = s;
            }
        // M_k = A M_{k-1} + c_{n-k+1} I
        for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
        M = AM;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    return Poly(std::move(c));
}

/// The algebraic number f(x). Its defining polynomial is the characteristic polynomial
/// of multiplication by f in Q[X]/(def x); the interval comes from interval evaluation.
inline AlgReal poly_image(const Poly& f, AlgReal x) {
    if (x.is_point()) return AlgReal::rational(f.eval(x.lo()));
    const Poly& q = x.defining();
    Poly r = f % q;
    if (r.degree() <= 0) return AlgReal::rational(r.coeff(0));
    std::size_t n = static_cast<std::size_t>(q.degree());
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    Poly col = r;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) A[i][j] = col.coeff(static_cast<int>(i));
        col = (col * Poly::x()) % q;
    }
    Poly chi = squarefree_part(charpoly(A));
    SturmChain chain(chi);
    for (;;) {
        if (x.is_point()) return AlgReal::rational(f.eval(x.lo()));
        auto [L, H] = interval_eval(f, x.lo(), x.hi());
        if (L < H && chi.eval(L) != 0 && chi.eval(H) != 0 && chain.count(L, H) == 1)
            return AlgReal::from_interval(chi, L, H).snapped(8);
        x.refine();
    }
}

} // namespace cralg

#endif // CRALG_ALGREAL_HPP
