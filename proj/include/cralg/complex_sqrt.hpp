#ifndef CRALG_COMPLEX_SQRT_HPP
#define CRALG_COMPLEX_SQRT_HPP

#include <string>

#include "cralg/algreal.hpp"

namespace cralg {

/// Square root u + iv of a + ib, with u, v real algebraic numbers.
struct ComplexSqrt {
    AlgReal u, v;
    Poly quartic_u;  // 4x^4 - 4a x^2 - b^2
    Poly quartic_v;  // 4x^4 + 4a x^2 - b^2
    /// u^2 and -v^2 are the two roots of Q(t) = 4t^2 - 4at - b^2 (checked by composition and
    /// by locating u^2 >= a/2 >= -v^2), so Vieta gives u^2 - v^2 = a and 4 u^2 v^2 = b^2.
    bool difference_certified = false;
    /// sign(uv) = sign(b), which with 4 u^2 v^2 = b^2 gives 2uv = b exactly.
    bool product_certified = false;
    std::string sign_rule;
};

inline ComplexSqrt complex_sqrt(const Rational& a, const Rational& b) {
    ComplexSqrt r;
    Rational b2 = b * b;
    r.quartic_u = Poly{-b2, Rational(0), Rational(-4 * a), Rational(0), Rational(4)};
    r.quartic_v = Poly{-b2, Rational(0), Rational(4 * a), Rational(0), Rational(4)};
    r.sign_rule = "u >= 0; v takes the sign of b so that u*v*b >= 0";
    if (a == 0 && b == 0) {
        r.u = r.v = AlgReal::rational(Rational(0));
        r.difference_certified = r.product_certified = true;
        return r;
    }
    auto ru = isolate_real_roots(r.quartic_u);
    auto rv = isolate_real_roots(r.quartic_v);
    r.u = ru.back().snapped();
    r.v = rv.back().snapped();
    if (b < 0) r.v = r.v.negated();

    Poly Q{-b2, Rational(-4 * a), Rational(4)};
    Poly X2{Rational(0), Rational(0), Rational(1)};
    bool compose_ok = r.quartic_u == Q.compose(X2) && r.quartic_v == Q.compose(-X2);
    Rational half_a = a / 2;
    bool u_upper = sign_at(Poly{-half_a, Rational(0), Rational(1)}, r.u) >= 0;  // u^2 >= a/2
    bool v_lower = sign_at(Poly{half_a, Rational(0), Rational(1)}, r.v) >= 0;   // -v^2 <= a/2
    bool roots_ok = sign_at(r.quartic_u, r.u) == 0 && sign_at(r.quartic_v, r.v) == 0;
    // Vieta on Q: sum of roots -(-4a)/4 = a, product -b^2/4
    bool vieta = -Q.coeff(1) / Q.coeff(2) == a && Q.coeff(0) / Q.coeff(2) == -b2 / 4;
    r.difference_certified = compose_ok && u_upper && v_lower && roots_ok && vieta;

    AlgReal zero = AlgReal::rational(Rational(0));
    int su = static_cast<int>(algreal_compare(r.u, zero));
    int sv = static_cast<int>(algreal_compare(r.v, zero));
    r.product_certified = r.difference_certified && su * sv == sgn(b);
    return r;
}

/// Refines u and v until the enclosure of 2uv lies within 2^{-k} of b.
inline bool product_within(const ComplexSqrt& c, const Rational& b, int k) {
    Rational tol = 1;
    for (int i = 0; i < k; ++i) tol /= 2;
    AlgReal u = c.u, v = c.v;
    for (int step = 0; step < 4 * k + 200; ++step) {
        Rational cands[4] = {u.lo() * v.lo(), u.lo() * v.hi(), u.hi() * v.lo(), u.hi() * v.hi()};
        Rational lo = cands[0], hi = cands[0];
        for (auto& x : cands) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (2 * lo >= b - tol && 2 * hi <= b + tol) return true;
        u.refine();
        v.refine();
    }
    return false;
}

} // namespace cralg

#endif // CRALG_COMPLEX_SQRT_HPP
