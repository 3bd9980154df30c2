// Rule corpora shared by the unit tests and the acceptance binary.
#ifndef CRALG_TESTS_FRING_CORPUS_HPP
#define CRALG_TESTS_FRING_CORPUS_HPP

#include <string>
#include <vector>

#include "cralg/identity.hpp"
#include "cralg/lattice_sort.hpp"

namespace corpus {

using namespace cralg;

struct Rule {
    std::string name;
    std::vector<FAtom> hyps;
    FAtom concl;
};

inline FTerm V(const char* n) { return FTerm::var(n); }
inline FTerm C(long c) { return FTerm::constant(Rational(c)); }
inline FAtom ge0(const FTerm& t) { return {t, FPred::Ge}; }
inline FAtom gt0(const FTerm& t) { return {t, FPred::Gt}; }

/// Identities and rules in lattice-ordered groups.
inline std::vector<Rule> lgroup_facts() {
    FTerm x = V("x"), y = V("y"), z = V("z"), t = V("t"), x2 = V("x'"), y2 = V("y'");
    FTerm u = V("u"), v = V("v"), w = V("w");
    auto two = [](const FTerm& a) { return a + a; };
    auto P = pos_t;
    auto N = negpart_t;
    auto A = abs_t;
    std::vector<Rule> r;
    auto eq = [&](std::string n, FTerm a, FTerm b, std::vector<FAtom> h = {}) {
        r.push_back({std::move(n), std::move(h), eq_atom(a, b)});
    };
    auto le = [&](std::string n, FTerm a, FTerm b, std::vector<FAtom> h = {}) {
        r.push_back({std::move(n), std::move(h), le_atom(a, b)});
    };
    eq("1", x + y, A(x - y) + two(inf(x, y)));
    eq("2a", P(inf(x, y)), inf(P(x), P(y)));
    eq("2b", N(inf(x, y)), sup(N(x), N(y)));
    eq("2c", P(sup(x, y)), sup(P(x), P(y)));
    eq("2d", N(sup(x, y)), inf(N(x), N(y)));
    le("3a", two(P(inf(x, y))), P(x + y));
    le("3b", P(x + y), P(x) + P(y));
    le("4a", A(x + y), A(x) + A(y));
    eq("4b", A(x) + A(y), A(x + y) + two(inf(P(x), N(y))) + two(inf(N(x), P(y))));
    le("5a", A(x - y), A(x) + A(y));
    eq("5b", A(x) + A(y), A(x - y) + two(inf(P(x), P(y))) + two(inf(N(x), N(y))));
    eq("6", sup(A(x + y), A(x - y)), A(x) + A(y));
    eq("7", inf(A(x + y), A(x - y)), A(A(x) - A(y)));
    eq("8", A(x - y), sup(x, y) - inf(x, y));
    eq("9", A(sup(x, z) - sup(y, z)) + A(inf(x, z) - inf(y, z)), A(x - y));
    eq("10", A(P(x) - P(y)) + A(N(x) - N(y)), A(x - y));
    eq("11", sup(inf(x, y), z), inf(x, sup(y, z)), {le_atom(z, x)});
    eq("12", x + y, sup(x, z) + inf(y, t), {eq_atom(x + y, z + t)});
    for (int n = 2; n <= 3; ++n) {
        std::vector<FTerm> alts;
        for (int k = 1; k <= n; ++k) alts.push_back(C(k) * y + C(n - k) * x);
        r.push_back({"13 (n=" + std::to_string(n) + ")", {le_atom(FTerm::op(FKind::Inf, alts), C(n) * x)},
                     le_atom(y, x)});
    }
    for (int n = 2; n <= 4; ++n) {
        std::vector<FTerm> xs;
        for (int i = 1; i <= n; ++i) xs.push_back(FTerm::var("x" + std::to_string(i)));
        std::vector<FTerm> sum;
        for (int k = 1; k <= n; ++k)
            for (const auto& s : subsets_of_size(n, k)) {
                std::vector<FTerm> in;
                for (int i : s) in.push_back(xs[i]);
                FTerm m = FTerm::op(FKind::Inf, in);
                sum.push_back(k % 2 ? m : -m);
            }
        eq("14 (n=" + std::to_string(n) + ")", FTerm::op(FKind::Sup, xs), FTerm::op(FKind::Add, sum));
    }
    FAtom xy = orth_atom(x, y);
    eq("15a", A(x + y), A(x - y), {xy});
    r.push_back({"15b", {eq_atom(A(x + y), A(x - y))}, xy});
    eq("15c", A(x + y), sup(A(x), A(y)), {xy});
    r.push_back({"15d", {eq_atom(A(x + y), sup(A(x), A(y)))}, xy});
    eq("16a", A(x + y), A(x) + A(y), {xy});
    eq("16b", A(x) + A(y), sup(A(x), A(y)), {xy});
    r.push_back({"16c", {eq_atom(A(x + y), A(x) + A(y)), eq_atom(A(x) + A(y), sup(A(x), A(y)))}, xy});
    std::vector<FAtom> h17 = {orth_atom(x, y), orth_atom(x2, y), orth_atom(x, y2), orth_atom(x2, y2),
                              eq_atom(x + y, x2 + y2)};
    r.push_back({"17a", h17, eq_atom(x, x2)});
    r.push_back({"17b", h17, eq_atom(y, y2)});
    std::vector<FAtom> uvw = {ge0(u), ge0(v), ge0(w)};
    auto with = [&](std::vector<FAtom> h) {
        h.insert(h.begin(), uvw.begin(), uvw.end());
        return h;
    };
    eq("18a", u + v, A(u - v), with({orth_atom(u, v)}));
    r.push_back({"18b", with({eq_atom(u + v, A(u - v))}), orth_atom(u, v)});
    le("19", inf(u + v, w), inf(u, w) + inf(v, w), uvw);
    le("20", sup(x + y, w), sup(x, w) + sup(y, w), {ge0(w)});
    eq("21", inf(u + v, w), inf(u, w), with({orth_atom(v, w)}));
    eq("22", inf(u + v, w), inf(u, w) + inf(v, w), with({orth_atom(u, v)}));
    return r;
}

/// Axioms of lattice-ordered groups.
inline std::vector<Rule> lgroup_axioms() {
    FTerm x = V("x"), y = V("y"), z = V("z"), y1 = V("y1"), y2 = V("y2");
    auto A = abs_t;
    std::vector<Rule> r;
    auto eq = [&](std::string n, FTerm a, FTerm b) { r.push_back({std::move(n), {}, eq_atom(a, b)}); };
    eq("grl", x + sup(y, z), sup(x + y, x + z));
    eq("gr1", sup(x, inf(y1, y2)), inf(sup(x, y1), sup(x, y2)));
    eq("gr2", inf(x, sup(y1, y2)), sup(inf(x, y1), inf(x, y2)));
    eq("gr3", sup(inf(x, y), x), x);
    eq("gr4", inf(sup(x, y), x), x);
    eq("gr5", inf(x, y) + sup(x, y), x + y);
    eq("gr6", x, pos_t(x) - negpart_t(x));
    eq("gr7a", A(x), pos_t(x) + negpart_t(x));
    eq("gr7b", A(x), sup(pos_t(x), negpart_t(x)));
    return r;
}

/// Rules of f-rings and reduced f-rings, over the variables a, b, c, x, y.
inline std::vector<Rule> fring_rules() {
    FTerm a = V("a"), b = V("b"), c = V("c"), x = V("x"), y = V("y");
    auto P = pos_t;
    auto N = negpart_t;
    auto A = abs_t;
    FTerm one = C(1), zero = C(0);
    std::vector<Rule> r;
    auto eq = [&](std::string n, FTerm l, FTerm rr, std::vector<FAtom> h = {}) {
        r.push_back({std::move(n), std::move(h), eq_atom(l, rr)});
    };
    eq("afr", P(a) * sup(b, c), sup(P(a) * b, P(a) * c));
    eq("afr'", P(a) * inf(b, c), inf(P(a) * b, P(a) * c));
    eq("afr0", inf(N(b), P(a) * P(b)), zero);
    eq("afr1", P(a) * N(a), zero);
    eq("afr2", A(a) * A(b), A(a * b));
    eq("afr3a", P(a * b), P(a) * P(b) + N(a) * N(b));
    eq("afr3b", N(a * b), P(a) * N(b) + N(a) * P(b));
    eq("afr4", A(P(c) * a), P(c) * A(a));
    eq("afr5", inf(a, b) * sup(a, b), a * b);
    eq("afr6a", a * a, P(a) * P(a) + N(a) * N(a));
    eq("afr6b", A(a) * A(a), a * a);
    eq("afr7", a * P(b), sup(inf(a * b, (a * a + one) * b), inf(-((a * a + one) * b), zero)));
    eq("sup", (sup(x, y) - x) * (sup(x, y) - y), zero);
    eq("Afr", a * sup(b, c), sup(a * b, a * c), {ge0(a)});
    eq("Afr'", a * inf(b, c), inf(a * b, a * c), {ge0(a)});
    eq("Afr0", inf(b, a * c), zero, {eq_atom(inf(b, c), zero), ge0(a)});
    eq("Afr1", a * b, zero, {eq_atom(inf(a, b), zero)});
    r.push_back({"Afr2", {orth_atom(b, c)}, orth_atom(a * b, a * c)});
    r.push_back({"Ato1", {ge0(b), eq_atom(a * b, one)}, ge0(a)});
    r.push_back({"Ato2", {ge0(c), ge0(a * (a * a + c))}, ge0(a * a * a)});
    r.push_back({"Afrnz1", {ge0(x * x * x)}, ge0(x)});
    r.push_back({"Afrnz2", {eq_atom(a * b, zero)}, orth_atom(a, b)});
    r.push_back({"Aonz", {ge0(c), ge0(x * (x * x + c))}, ge0(x)});
    r.push_back({"Aonz3", {ge0(a), ge0(b), eq_atom(a * a, b * b)}, eq_atom(a, b)});
    return r;
}

/// One-variable instances: each rule variable is replaced by a polynomial in x.
inline std::vector<std::map<std::string, FTerm>> univariate_substitutions() {
    FTerm x = V("x");
    FTerm one = C(1), two = C(2);
    return {
        {{"a", x}, {"b", x - one}, {"c", two - x}, {"x", x}, {"y", one - x}},
        {{"a", x * x - two}, {"b", x}, {"c", one - x * x}, {"x", x * x - two}, {"y", x}},
        {{"a", one - x}, {"b", x * x * x - x}, {"c", x}, {"x", x * x * x - x}, {"y", C(0) - x}},
    };
}

inline Rule instantiate(const Rule& r, const std::map<std::string, FTerm>& s) {
    Rule out{r.name, {}, {fsubst(r.concl.term, s), r.concl.pred}};
    for (const auto& h : r.hyps) out.hyps.push_back({fsubst(h.term, s), h.pred});
    return out;
}

} // namespace corpus

#endif // CRALG_TESTS_FRING_CORPUS_HPP
