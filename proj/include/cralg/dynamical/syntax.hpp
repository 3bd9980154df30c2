#ifndef CRALG_DYNAMICAL_SYNTAX_HPP
#define CRALG_DYNAMICAL_SYNTAX_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cralg/mpoly.hpp"

namespace cralg::dyn {

// Terms are polynomials over Z in variables and opaque applications such as
// "sup(x*y,-x)"; the arguments of an application are themselves normalized
// polynomials, so ring axioms are handled by normal form everywhere.

struct App {
    std::string head;
    std::vector<MPoly> args;
};

inline bool is_app(const std::string& name) { return name.find('(') != std::string::npos; }

inline App split_app(const std::string& name) {
    std::size_t open = name.find('(');
    if (open == std::string::npos || name.back() != ')')
        fail(ErrorCode::ParseError, "not an application: " + name);
    App a{name.substr(0, open), {}};
    int depth = 0;
    std::size_t start = open + 1;
    for (std::size_t i = open + 1; i + 1 < name.size(); ++i) {
        char c = name[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0) {
            a.args.push_back(parse_mpoly(name.substr(start, i - start)));
            start = i + 1;
        }
    }
    a.args.push_back(parse_mpoly(name.substr(start, name.size() - 1 - start)));
    return a;
}

inline MPoly make_app(const std::string& head, const std::vector<MPoly>& args);

namespace detail {

// Lattice abbreviations are unfolded into sup so that a single symbol remains.
inline MPoly unfold(const std::string& head, const std::vector<MPoly>& a) {
    auto arity = [&](std::size_t n) {
        if (a.size() != n) fail(ErrorCode::ParseError, head + " expects " + std::to_string(n) + " arguments");
    };
    if (head == "inf" || head == "min") {
        arity(2);
        return -make_app("sup", {-a[0], -a[1]});
    }
    if (head == "max") {
        arity(2);
        return make_app("sup", a);
    }
    if (head == "abs") {
        arity(1);
        return make_app("sup", {a[0], -a[0]});
    }
    if (head == "pos") {
        arity(1);
        return make_app("sup", {a[0], MPoly(0)});
    }
    if (head == "negp") {
        arity(1);
        return make_app("sup", {-a[0], MPoly(0)});
    }
    std::string name = head + "(";
    for (std::size_t i = 0; i < a.size(); ++i) name += (i ? "," : "") + a[i].str();
    return MPoly::var(name + ")");
}

} // namespace detail

inline MPoly make_app(const std::string& head, const std::vector<MPoly>& args) {
    return detail::unfold(head, args);
}

/// Simultaneous substitution reaching inside applications; unmapped variables stay.
inline MPoly term_subst(const MPoly& t, const std::map<std::string, MPoly>& s) {
    std::map<std::string, MPoly> full;
    for (const auto& v : t.variables()) {
        if (is_app(v)) {
            App a = split_app(v);
            for (auto& arg : a.args) arg = term_subst(arg, s);
            full[v] = make_app(a.head, a.args);
        } else if (auto it = s.find(v); it != s.end()) {
            full[v] = it->second;
        }
    }
    return full.empty() ? t : t.subst(full);
}

/// Parses a term and unfolds lattice abbreviations (inf, abs, pos, negp).
inline MPoly parse_term(const std::string& text) { return term_subst(parse_mpoly(text), {}); }

/// Plain variables, including those under applications.
inline void collect_term_vars(const MPoly& t, std::set<std::string>& out) {
    for (const auto& v : t.variables()) {
        if (!is_app(v)) {
            out.insert(v);
            continue;
        }
        for (const auto& arg : split_app(v).args) collect_term_vars(arg, out);
    }
}

inline std::set<std::string> term_vars(const MPoly& t) {
    std::set<std::string> out;
    collect_term_vars(t, out);
    return out;
}

inline void collect_term_heads(const MPoly& t, std::set<std::string>& out) {
    for (const auto& v : t.variables()) {
        if (!is_app(v)) continue;
        App a = split_app(v);
        out.insert(a.head);
        for (const auto& arg : a.args) collect_term_heads(arg, out);
    }
}

/// True when every coefficient, also inside applications, is an integer.
inline bool is_integral(const MPoly& t) {
    for (const auto& [m, c] : t.terms())
        if (c.get_den() != 1) return false;
    for (const auto& v : t.variables())
        if (is_app(v))
            for (const auto& arg : split_app(v).args)
                if (!is_integral(arg)) return false;
    return true;
}

enum class Pred { Eq, Ge, Gt, Unit };

inline const char* pred_name(Pred p) {
    switch (p) {
    case Pred::Eq: return "=0";
    case Pred::Ge: return ">=0";
    case Pred::Gt: return ">0";
    case Pred::Unit: return "U";
    }
    return "?";
}

inline Pred parse_pred(const std::string& s) {
    if (s == "=0") return Pred::Eq;
    if (s == ">=0") return Pred::Ge;
    if (s == ">0") return Pred::Gt;
    if (s == "U") return Pred::Unit;
    fail(ErrorCode::SchemaError, "unknown predicate '" + s + "'");
}

/// `term pred`, e.g. (x*y - 1, =0).
struct Atom {
    Pred pred = Pred::Eq;
    MPoly term;

    std::string str() const {
        if (pred == Pred::Unit) return "U(" + term.str() + ")";
        const char* rel = pred == Pred::Eq ? " = 0" : pred == Pred::Ge ? " >= 0" : " > 0";
        return term.str() + rel;
    }
    friend bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.term == b.term; }
    friend bool operator<(const Atom& a, const Atom& b) {
        return a.pred != b.pred ? a.pred < b.pred : a.term < b.term;
    }
};

inline Atom subst_atom(const Atom& a, const std::map<std::string, MPoly>& s) {
    return {a.pred, term_subst(a.term, s)};
}

/// The collapse atom 1 = 0.
inline Atom collapse_atom() { return {Pred::Eq, MPoly(1)}; }

inline bool is_collapse(const Atom& a) {
    return a.pred == Pred::Eq && a.term.is_constant() && abs(a.term.constant_term()) == 1;
}

struct Disjunct {
    std::vector<std::string> fresh;
    std::vector<Atom> atoms;
};

/// hyps |- Introduce fresh_1 such that atoms_1 op ... ; no disjunct means collapse.
struct Rule {
    std::string name;
    std::vector<Atom> hyps;
    std::vector<Disjunct> branches;

    bool is_horn() const { return branches.size() == 1 && branches[0].fresh.empty(); }

    std::set<std::string> free_vars() const {
        std::set<std::string> v;
        for (const auto& a : hyps) collect_term_vars(a.term, v);
        for (const auto& b : branches)
            for (const auto& a : b.atoms) {
                std::set<std::string> w = term_vars(a.term);
                for (const auto& x : w)
                    if (std::find(b.fresh.begin(), b.fresh.end(), x) == b.fresh.end()) v.insert(x);
            }
        return v;
    }

    std::string str() const {
        std::string s = name + ": ";
        for (std::size_t i = 0; i < hyps.size(); ++i) s += (i ? ", " : "") + hyps[i].str();
        s += " |- ";
        if (branches.empty()) return s + "bottom";
        for (std::size_t k = 0; k < branches.size(); ++k) {
            if (k) s += " op ";
            if (!branches[k].fresh.empty()) {
                s += "exists";
                for (const auto& f : branches[k].fresh) s += " " + f;
                s += " ";
            }
            for (std::size_t i = 0; i < branches[k].atoms.size(); ++i)
                s += (i ? ", " : "") + branches[k].atoms[i].str();
        }
        return s;
    }
};

/// Branch variables must not clash with the rule's free variables.
inline void validate_rule(const Rule& r) {
    std::set<std::string> hv;
    for (const auto& a : r.hyps) collect_term_vars(a.term, hv);
    for (const auto& b : r.branches) {
        std::set<std::string> seen;
        for (const auto& f : b.fresh) {
            if (is_app(f) || f.empty()) fail(ErrorCode::SchemaError, r.name + ": bad fresh variable '" + f + "'");
            if (hv.count(f)) fail(ErrorCode::SchemaError, r.name + ": fresh variable " + f + " occurs in hypotheses");
            if (!seen.insert(f).second) fail(ErrorCode::SchemaError, r.name + ": repeated fresh variable " + f);
        }
    }
}

struct Signature {
    std::vector<std::pair<std::string, int>> predicates;
    std::vector<std::pair<std::string, int>> functions;
    std::vector<std::string> constants;

    bool has_predicate(Pred p) const {
        for (const auto& [n, a] : predicates)
            if (n == pred_name(p)) return true;
        return false;
    }
    bool has_function(const std::string& f) const {
        for (const auto& [n, a] : functions)
            if (n == f) return true;
        return false;
    }
};

inline void validate_signature(const Signature& s) {
    std::set<std::string> names;
    for (const auto& [n, a] : s.predicates)
        if (!names.insert("p:" + n).second) fail(ErrorCode::SchemaError, "duplicate predicate " + n);
    for (const auto& [n, a] : s.functions)
        if (!names.insert("f:" + n).second) fail(ErrorCode::SchemaError, "duplicate function " + n);
    for (const auto& n : s.constants)
        if (!names.insert("c:" + n).second) fail(ErrorCode::SchemaError, "duplicate constant " + n);
}

struct Theory {
    std::string name;
    Signature signature;
    std::vector<Rule> rules;

    const Rule* find(const std::string& rule) const {
        for (const auto& r : rules)
            if (r.name == rule) return &r;
        return nullptr;
    }

    /// The ideal axioms (0 = 0, sums, multiples) are what licenses normal-form
    /// combination steps in proofs.
    bool has_ring_machinery() const {
        return (find("ac0") || find("ga0")) && (find("ac1") || find("ga1")) && find("ac2");
    }

    /// Adds a rule proved elsewhere so later proofs can cite it.
    Theory with_rule(Rule r) const {
        validate_rule(r);
        Theory t = *this;
        t.rules.push_back(std::move(r));
        return t;
    }
};

/// Generators G and relation sets R_{>0}, R_{>=0}, R_{=0} over Z[G].
struct Presentation {
    std::vector<std::string> generators;
    std::vector<MPoly> gt, ge, eq;

    std::vector<std::string> all_generators() const {
        std::set<std::string> g(generators.begin(), generators.end());
        for (const auto* set : {&gt, &ge, &eq})
            for (const auto& t : *set) collect_term_vars(t, g);
        return {g.begin(), g.end()};
    }

    std::vector<Atom> atoms() const {
        std::vector<Atom> out;
        for (const auto& t : gt) out.push_back({Pred::Gt, t});
        for (const auto& t : ge) out.push_back({Pred::Ge, t});
        for (const auto& t : eq) out.push_back({Pred::Eq, t});
        return out;
    }
};

} // namespace cralg::dyn

#endif // CRALG_DYNAMICAL_SYNTAX_HPP
