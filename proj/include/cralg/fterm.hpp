#ifndef CRALG_FTERM_HPP
#define CRALG_FTERM_HPP

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cralg/rational.hpp"

namespace cralg {

enum class FKind { Var, Const, Add, Mul, Neg, Sup, Inf };

/// Lattice-ring term tree. Add, Mul, Sup and Inf are n-ary (at least one argument).
class FTerm {
public:
    struct Node {
        FKind kind;
        std::string name;
        Rational value;
        std::vector<FTerm> args;
    };

    FTerm() : FTerm(constant(Rational(0))) {}

    static FTerm var(const std::string& v) { return make({FKind::Var, v, Rational(0), {}}); }
    static FTerm constant(const Rational& c) { return make({FKind::Const, "", c, {}}); }
    static FTerm op(FKind k, std::vector<FTerm> args) {
        if (args.empty()) fail(ErrorCode::ParseError, "operator without arguments");
        if (args.size() == 1 && k != FKind::Neg) return args[0];
        return make({k, "", Rational(0), std::move(args)});
    }

    FKind kind() const { return n_->kind; }
    const std::string& name() const { return n_->name; }
    const Rational& value() const { return n_->value; }
    const std::vector<FTerm>& args() const { return n_->args; }

    Rational eval(const std::map<std::string, Rational>& point) const {
        switch (kind()) {
        case FKind::Var: {
            auto it = point.find(name());
            if (it == point.end()) fail(ErrorCode::MissingVariable, "no value for variable " + name());
            return it->second;
        }
        case FKind::Const: return value();
        case FKind::Neg: return -args()[0].eval(point);
        case FKind::Add: {
            Rational s = 0;
            for (const auto& a : args()) s += a.eval(point);
            return s;
        }
        case FKind::Mul: {
            Rational s = 1;
            for (const auto& a : args()) s *= a.eval(point);
            return s;
        }
        case FKind::Sup:
        case FKind::Inf: {
            Rational s = args()[0].eval(point);
            for (std::size_t i = 1; i < args().size(); ++i) {
                Rational v = args()[i].eval(point);
                if (kind() == FKind::Sup ? v > s : v < s) s = v;
            }
            return s;
        }
        }
        return Rational(0);
    }

    void collect_vars(std::set<std::string>& out) const {
        if (kind() == FKind::Var) out.insert(name());
        for (const auto& a : args()) a.collect_vars(out);
    }
    std::set<std::string> variables() const {
        std::set<std::string> s;
        collect_vars(s);
        return s;
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (const auto& a : args()) s += a.size();
        return s;
    }

    std::string str() const {
        switch (kind()) {
        case FKind::Var: return name();
        case FKind::Const: return value().get_str();
        default: break;
        }
        static const char* names[] = {"var", "const", "+", "*", "-", "sup", "inf"};
        std::string s = std::string("(") + names[static_cast<int>(kind())];
        for (const auto& a : args()) s += " " + a.str();
        return s + ")";
    }

private:
    static FTerm make(Node n) {
        FTerm t(0);
        t.n_ = std::make_shared<const Node>(std::move(n));
        return t;
    }
    explicit FTerm(int) {}
    std::shared_ptr<const Node> n_;
};

inline FTerm operator+(const FTerm& a, const FTerm& b) { return FTerm::op(FKind::Add, {a, b}); }
inline FTerm operator*(const FTerm& a, const FTerm& b) { return FTerm::op(FKind::Mul, {a, b}); }
inline FTerm operator-(const FTerm& a) { return FTerm::op(FKind::Neg, {a}); }
inline FTerm operator-(const FTerm& a, const FTerm& b) { return a + (-b); }
inline FTerm operator*(const Rational& c, const FTerm& a) { return FTerm::constant(c) * a; }
inline FTerm sup(const FTerm& a, const FTerm& b) { return FTerm::op(FKind::Sup, {a, b}); }
inline FTerm inf(const FTerm& a, const FTerm& b) { return FTerm::op(FKind::Inf, {a, b}); }
inline FTerm abs_t(const FTerm& a) { return sup(a, -a); }
inline FTerm pos_t(const FTerm& a) { return sup(a, FTerm::constant(Rational(0))); }
inline FTerm negpart_t(const FTerm& a) { return sup(-a, FTerm::constant(Rational(0))); }

/// Simultaneous substitution of terms for variables.
inline FTerm fsubst(const FTerm& t, const std::map<std::string, FTerm>& s) {
    if (t.kind() == FKind::Var) {
        auto it = s.find(t.name());
        return it == s.end() ? t : it->second;
    }
    if (t.kind() == FKind::Const) return t;
    std::vector<FTerm> args;
    for (const auto& a : t.args()) args.push_back(fsubst(a, s));
    return FTerm::op(t.kind(), std::move(args));
}

inline FTerm fpow(const FTerm& t, int k) {
    std::vector<FTerm> f(static_cast<std::size_t>(k), t);
    return FTerm::op(FKind::Mul, f);
}

/// s-expression reader: (sup t ...), (inf t ...), (+ t ...), (* t ...), (- t), (- a b),
/// (var x), (const p/q), (abs t), (pos t), (negp t); bare identifiers and numbers allowed.
class FTermParser {
public:
    explicit FTermParser(std::string text) : s_(std::move(text)) {}

    FTerm parse() {
        FTerm t = term();
        skip();
        if (i_ != s_.size()) error("trailing input");
        return t;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::ParseError, what + " at position " + std::to_string(i_) + " in '" + s_ + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    std::string atom() {
        skip();
        std::size_t st = i_;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
        if (st == i_) error("expected an atom");
        return s_.substr(st, i_ - st);
    }
    static bool numeric(const std::string& a) {
        std::size_t i = (a[0] == '-' || a[0] == '+') ? 1 : 0;
        return i < a.size() && (std::isdigit(static_cast<unsigned char>(a[i])) || a[i] == '.');
    }
    FTerm term() {
        skip();
        if (i_ >= s_.size()) error("unexpected end");
        if (s_[i_] != '(') {
            std::string a = atom();
            if (numeric(a)) return FTerm::constant(parse_rational(a));
            return FTerm::var(a);
        }
        ++i_;
        std::string head = atom();
        std::vector<FTerm> args;
        if (head == "var") {
            std::string v = atom();
            close();
            return FTerm::var(v);
        }
        if (head == "const") {
            std::string v = atom();
            close();
            return FTerm::constant(parse_rational(v));
        }
        for (;;) {
            skip();
            if (i_ >= s_.size()) error("unbalanced parentheses");
            if (s_[i_] == ')') {
                ++i_;
                break;
            }
            args.push_back(term());
        }
        if (args.empty()) error("operator '" + head + "' without arguments");
        auto unary = [&](const char* what) {
            if (args.size() != 1) error(std::string(what) + " takes one argument");
        };
        if (head == "sup" || head == "max") return FTerm::op(FKind::Sup, args);
        if (head == "inf" || head == "min") return FTerm::op(FKind::Inf, args);
        if (head == "+") return FTerm::op(FKind::Add, args);
        if (head == "*") return FTerm::op(FKind::Mul, args);
        if (head == "-") {
            if (args.size() == 1) return -args[0];
            if (args.size() == 2) return args[0] - args[1];
            error("'-' takes one or two arguments");
        }
        if (head == "abs") {
            unary("abs");
            return abs_t(args[0]);
        }
        if (head == "pos") {
            unary("pos");
            return pos_t(args[0]);
        }
        if (head == "negp") {
            unary("negp");
            return negpart_t(args[0]);
        }
        error("unknown operator '" + head + "'");
    }
    void close() {
        skip();
        if (i_ >= s_.size() || s_[i_] != ')') error("expected ')'");
        ++i_;
    }

    std::string s_;
    std::size_t i_ = 0;
};

inline FTerm parse_fterm(const std::string& text) { return FTermParser(text).parse(); }

} // namespace cralg

#endif // CRALG_FTERM_HPP
