#ifndef CRALG_MPOLY_HPP
#define CRALG_MPOLY_HPP

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cralg/linear.hpp"
#include "cralg/poly.hpp"

namespace cralg {

/// Exponent vector keyed by variable name; zero exponents are never stored.
using Monomial = std::map<std::string, int>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

inline Monomial operator*(Monomial a, const Monomial& b) {
    for (const auto& [v, e] : b) a[v] += e;
    return a;
}

/// Sparse multivariate polynomial over Q with named variables.
class MPoly {
public:
    MPoly() = default;
    MPoly(const Rational& c) {
        if (c != 0) t_[Monomial{}] = c;
    }
    MPoly(long c) : MPoly(Rational(c)) {}

    static MPoly var(const std::string& v) {
        MPoly p;
        p.t_[Monomial{{v, 1}}] = 1;
        return p;
    }
    static MPoly term(const Rational& c, Monomial m) {
        MPoly p;
        for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
        if (c != 0) p.t_[std::move(m)] = c;
        return p;
    }
    static MPoly from_poly(const Poly& p, const std::string& v) {
        MPoly r;
        for (int k = 0; k <= p.degree(); ++k)
            if (p.coeff(k) != 0) r.t_[k == 0 ? Monomial{} : Monomial{{v, k}}] = p.coeff(k);
        return r;
    }
    static MPoly from_linform(const LinForm& f) {
        MPoly r(f.constant);
        for (const auto& [v, a] : f.coeff) r += Rational(a) * var(v);
        return r;
    }

    const std::map<Monomial, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    Rational constant_term() const {
        auto it = t_.find(Monomial{});
        return it == t_.end() ? Rational(0) : it->second;
    }
    int degree() const {
        int d = is_zero() ? -1 : 0;
        for (const auto& [m, c] : t_) d = std::max(d, total_degree(m));
        return d;
    }
    std::set<std::string> variables() const {
        std::set<std::string> s;
        for (const auto& [m, c] : t_)
            for (const auto& [v, e] : m) s.insert(v);
        return s;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [m, c] : o.t_) {
            auto it = t_.find(m);
            if (it == t_.end()) {
                t_.emplace(m, c);
            } else {
                it->second += c;
                if (it->second == 0) t_.erase(it);
            }
        }
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    MPoly& operator-=(const MPoly& o) { return *this += -o; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                Monomial m = ma * mb;
                Rational c = ca * cb;
                auto it = r.t_.find(m);
                if (it == r.t_.end()) {
                    r.t_.emplace(std::move(m), c);
                } else {
                    it->second += c;
                    if (it->second == 0) r.t_.erase(it);
                }
            }
        return r;
    }
    friend MPoly operator*(const Rational& s, const MPoly& p) {
        if (s == 0) return MPoly();
        MPoly r = p;
        for (auto& [m, c] : r.t_) c *= s;
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    friend bool operator<(const MPoly& a, const MPoly& b) { return a.t_ < b.t_; }

    MPoly pow(int k) const {
        MPoly r(1), b = *this;
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    Rational eval(const std::map<std::string, Rational>& point) const {
        Rational s = 0;
        for (const auto& [m, c] : t_) {
            Rational v = c;
            for (const auto& [x, e] : m) {
                auto it = point.find(x);
                if (it == point.end()) fail(ErrorCode::MissingVariable, "no value for variable " + x);
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), static_cast<unsigned long>(e));
                mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), static_cast<unsigned long>(e));
                v *= p;
            }
            s += v;
        }
        return s;
    }

    /// Simultaneous substitution of polynomials for variables.
    MPoly subst(const std::map<std::string, MPoly>& s) const {
        MPoly r;
        for (const auto& [m, c] : t_) {
            MPoly t(c);
            Monomial keep;
            for (const auto& [v, e] : m) {
                auto it = s.find(v);
                if (it == s.end()) keep[v] = e;
                else t *= it->second.pow(e);
            }
            r += t * term(1, keep);
        }
        return r;
    }

    bool is_linear() const { return degree() <= 1; }

    LinForm to_linform() const {
        if (!is_linear()) fail(ErrorCode::NonLinearTerm, "polynomial " + str() + " is not affine");
        LinForm f;
        for (const auto& [m, c] : t_) {
            if (m.empty()) f.constant = c;
            else f.coeff[m.begin()->first] = c;
        }
        return f;
    }

    Poly to_poly(const std::string& v) const {
        std::vector<Rational> c;
        for (const auto& [m, a] : t_) {
            int e = 0;
            for (const auto& [x, k] : m) {
                if (x != v) fail(ErrorCode::Multivariate, "polynomial in more than one variable");
                e = k;
            }
            if (static_cast<int>(c.size()) <= e) c.resize(static_cast<std::size_t>(e) + 1, Rational(0));
            c[static_cast<std::size_t>(e)] += a;
        }
        return Poly(std::move(c));
    }

    /// Canonical text, terms by decreasing total degree then lexicographically.
    std::string str() const {
        if (is_zero()) return "0";
        std::vector<std::pair<Monomial, Rational>> v(t_.begin(), t_.end());
        std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            int da = total_degree(a.first), db = total_degree(b.first);
            if (da != db) return da > db;
            return a.first < b.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : v) {
            if (c < 0) os << (first ? "-" : " - ");
            else if (!first) os << " + ";
            Rational a = abs(c);
            bool unit = a == 1 && !m.empty();
            if (!unit) os << a.get_str();
            bool firstvar = unit;
            for (const auto& [x, e] : m) {
                if (!firstvar) os << "*";
                firstvar = false;
                os << x;
                if (e > 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::map<Monomial, Rational> t_;
};

/// Recursive-descent parser for polynomial expressions:
///   expr := term (('+'|'-') term)*,  term := factor (('*'|'/' number) factor)*,
///   factor := ['-'] atom ['^' int],  atom := number | ident | ident '(' expr, ... ')' | '(' expr ')'.
/// Applications f(a, b) become opaque variables named "f(a,b)" with canonical argument text.
class MPolyParser {
public:
    explicit MPolyParser(std::string text) : s_(std::move(text)) {}

    MPoly parse() {
        MPoly p = expr();
        skip();
        if (i_ != s_.size()) error("trailing input");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::ParseError, what + " at position " + std::to_string(i_) + " in '" + s_ + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    MPoly expr() {
        MPoly p = term();
        for (;;) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }
    MPoly term() {
        MPoly p = factor();
        for (;;) {
            if (eat('*')) {
                p *= factor();
            } else if (eat('/')) {
                MPoly d = factor();
                if (!d.is_constant() || d.is_zero()) error("division by a non-constant");
                p = Rational(1 / d.constant_term()) * p;
            } else {
                return p;
            }
        }
    }
    MPoly factor() {
        if (eat('-')) return -factor();
        MPoly a = atom();
        if (eat('^')) {
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) error("expected exponent");
            a = a.pow(std::stoi(s_.substr(st, i_ - st)));
        }
        return a;
    }
    MPoly atom() {
        skip();
        if (i_ >= s_.size()) error("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            MPoly p = expr();
            if (!eat(')')) error("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
            return MPoly(parse_rational(s_.substr(st, i_ - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
                ++i_;
            std::string name = s_.substr(st, i_ - st);
            if (eat('(')) {
                std::string app = name + "(";
                bool first = true;
                do {
                    if (!first) app += ",";
                    app += expr().str();
                    first = false;
                } while (eat(','));
                if (!eat(')')) error("expected ')' after arguments");
                return MPoly::var(app + ")");
            }
            return MPoly::var(name);
        }
        error(std::string("unexpected character '") + c + "'");
    }

    std::string s_;
    std::size_t i_ = 0;
};

inline MPoly parse_mpoly(const std::string& text) { return MPolyParser(text).parse(); }

} // namespace cralg

#endif // CRALG_MPOLY_HPP
