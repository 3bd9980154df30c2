#ifndef CRALG_POLY_HPP
#define CRALG_POLY_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cralg/error.hpp"
#include "cralg/rational.hpp"

namespace cralg {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has an empty coefficient list.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rational& a) { return Poly(std::vector<Rational>{a}); }
    static Poly x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }
    static Poly monomial(const Rational& a, int k) {
        std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
        v.back() = a;
        return Poly(std::move(v));
    }
    static Poly from_ints(std::initializer_list<long> coeffs) {
        std::vector<Rational> v;
        for (long a : coeffs) v.emplace_back(a);
        return Poly(std::move(v));
    }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const {
        if (k < 0 || k > degree()) return Rational(0);
        return c_[static_cast<std::size_t>(k)];
    }
    const Rational& lc() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const { return degree() <= 0; }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rational> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot make the zero polynomial monic");
        Poly r = *this;
        Rational l = lc();
        for (auto& a : r.c_) a /= l;
        return r;
    }

    /// p(-x)
    Poly reflect() const {
        Poly r = *this;
        for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    /// p(c*x)
    Poly scale_var(const Rational& c) const {
        Poly r = *this;
        Rational pw = 1;
        for (auto& a : r.c_) {
            a *= pw;
            pw *= c;
        }
        r.trim();
        return r;
    }

    /// p(x + c)
    Poly shift(const Rational& c) const {
        Poly r;
        Poly lin{c, Rational(1)};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
        return r;
    }

    /// p(q(x))
    Poly compose(const Poly& q) const {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + constant(*it);
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Rational& s, const Poly& p) {
        if (s == 0) return Poly();
        Poly r = p;
        for (auto& a : r.c_) a *= s;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int k) const {
        Poly r = constant(1), base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    /// Euclidean division; returns (quotient, remainder).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
        std::vector<Rational> r = c_;
        int dd = d.degree();
        if (degree() < dd) return {Poly(), *this};
        std::vector<Rational> q(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
        for (int k = degree(); k >= dd; --k) {
            const Rational& top = r[static_cast<std::size_t>(k)];
            if (top == 0) continue;
            Rational f = top / d.lc();
            q[static_cast<std::size_t>(k - dd)] = f;
            for (int i = 0; i <= dd; ++i) r[static_cast<std::size_t>(k - dd + i)] -= f * d.c_[static_cast<std::size_t>(i)];
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    std::string str(const std::string& var = "X") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Rational a = c_[static_cast<std::size_t>(k)];
            if (a == 0) continue;
            if (a < 0) os << (first ? "-" : " - ");
            else if (!first) os << " + ";
            Rational m = abs(a);
            if (m != 1 || k == 0) os << m.get_str();
            if (k > 0) {
                if (m != 1) os << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// p / gcd(p, p'), made monic.
inline Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree part of zero");
    if (p.degree() == 0) return Poly::constant(1);
    return (p / gcd(p, p.derivative())).monic();
}

/// The k-th derivative of a monic f divided by its leading coefficient.
inline Poly normalized_derivative(const Poly& f, int k) {
    if (!f.is_monic()) fail(ErrorCode::NotMonic, "normalized_derivative needs a monic polynomial");
    if (k < 0 || k >= f.degree())
        fail(ErrorCode::KOutOfRange, "derivative order out of range", k);
    Poly g = f;
    for (int i = 0; i < k; ++i) g = g.derivative();
    return g.monic();
}

inline Rational poly_eval(const Poly& p, const Rational& x) { return p.eval(x); }

/// Comma-separated coefficients, lowest degree first, e.g. "-4,0,1".
inline Poly parse_poly_coeffs(const std::string& text) {
    std::vector<Rational> v;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            v.push_back(parse_rational(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return Poly(std::move(v));
}

/// Cauchy bound: every complex root satisfies |x| < 1 + max |a_i / a_d|.
inline Rational cauchy_bound(const Poly& p) {
    if (p.is_zero()) fail(ErrorCode::ZeroPolynomial, "root bound of zero");
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.lc())));
    return m + 1;
}

} // namespace cralg

#endif // CRALG_POLY_HPP
