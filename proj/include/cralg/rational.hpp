#ifndef CRALG_RATIONAL_HPP
#define CRALG_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "cralg/error.hpp"

namespace cralg {

/// Exact rational scalar. GMP keeps it canonical (gcd 1, positive denominator)
/// as long as every constructor path goes through canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "n", "-n", "p/q" and finite decimals such as "1.25".
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
    if (s[0] == '+') s.erase(0, 1);

    auto digits_ok = [](std::string_view d, bool allow_sign) {
        if (d.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && d[0] == '-') i = 1;
        if (i == d.size()) return false;
        for (; i < d.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
        return true;
    };

    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg) ip.erase(0, 1);
        if (ip.empty()) ip = "0";
        if (!digits_ok(ip, false) || (!fp.empty() && !digits_ok(fp, false)))
            fail(ErrorCode::ParseError, "bad decimal literal '" + std::string(text) + "'");
        Integer num(ip + fp), den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }

    auto slash = s.find('/');
    std::string ns = s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(ns, true) || !digits_ok(ds, false))
        fail(ErrorCode::ParseError, "bad rational literal '" + std::string(text) + "'");
    Integer den(ds);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q{Integer(ns), den};
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational abs_value(const Rational& q) { return abs(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact square root when q is the square of a rational.
inline bool rational_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

/// Decimal rendering with `digits` places after the point, truncated toward zero.
/// Presentation only.
inline std::string to_decimal(const Rational& q, int digits) {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rational scaled = abs(q) * scale;
    Integer whole = scaled.get_num() / scaled.get_den();
    std::string w = whole.get_str();
    if (static_cast<int>(w.size()) <= digits) w.insert(0, static_cast<std::size_t>(digits) + 1 - w.size(), '0');
    std::string out = q < 0 ? "-" : "";
    out += w.substr(0, w.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + w.substr(w.size() - static_cast<std::size_t>(digits));
    return out;
}

} // namespace cralg

#endif // CRALG_RATIONAL_HPP
