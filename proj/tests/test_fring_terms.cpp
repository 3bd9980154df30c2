#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "cralg/identity.hpp"
#include "cralg/lattice_sort.hpp"
#include "cralg/semipoly.hpp"
#include "fring_corpus.hpp"
#include "gen.hpp"

using namespace cralg;
using corpus::C;
using corpus::V;

namespace {

Rational Q(long n, long d = 1) { return make_rational(n, d); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::SchemaError;
}

using Families = std::set<std::set<std::string>>;

Families shape(const SemiPolyNF& nf) {
    Families out;
    for (const auto& f : nf.families) {
        std::set<std::string> s;
        for (const auto& p : f) s.insert(p.str());
        out.insert(s);
    }
    return out;
}

std::map<std::string, Rational> random_point(const std::set<std::string>& vars, gen::Source& src) {
    std::map<std::string, Rational> pt;
    for (const auto& v : vars) pt[v] = src.rational(5, 6);
    return pt;
}

bool rule_holds_at(const corpus::Rule& r, const std::map<std::string, Rational>& pt) {
    for (const auto& h : r.hyps)
        if (!atom_holds(h, pt)) return true;
    return atom_holds(r.concl, pt);
}

} // namespace

TEST(FTerm, ParseAndPrint) {
    FTerm t = parse_fterm("(sup (+ x (const 1/2)) (inf y (- z)))");
    EXPECT_EQ(t.str(), "(sup (+ x 1/2) (inf y (- z)))");
    EXPECT_EQ(parse_fterm(t.str()).str(), t.str());
    EXPECT_EQ(parse_fterm("(var x)").str(), "x");
    EXPECT_EQ(parse_fterm("(- a b)").str(), "(+ a (- b))");
    EXPECT_EQ(parse_fterm("(abs x)").str(), abs_t(V("x")).str());
    EXPECT_EQ(parse_fterm("(* 3 x)").eval({{"x", Q(2)}}), 6);
    EXPECT_EQ(parse_fterm("(pos (- x))").eval({{"x", Q(2)}}), 0);
    EXPECT_EQ(parse_fterm("(negp x)").eval({{"x", Q(-2)}}), 2);
    EXPECT_EQ(code_of([] { parse_fterm("(sup x"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_fterm("(frob x)"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_fterm("(sup)"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_fterm("x y"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { V("x").eval({}); }), ErrorCode::MissingVariable);
}

TEST(Normalize, Examples) {
    FTerm x = V("x"), y = V("y"), z = V("z");
    EXPECT_EQ(shape(normalize(sup(x, y))), (Families{{"x"}, {"y"}}));
    EXPECT_EQ(shape(normalize(x + sup(y, z))), (Families{{"x + y"}, {"x + z"}}));
    EXPECT_EQ(shape(normalize(abs_t(x))), (Families{{"x"}, {"-x"}}));
    EXPECT_EQ(shape(normalize(-sup(x, y))), (Families{{"-x", "-y"}}));
    EXPECT_EQ(shape(normalize(C(0))), (Families{{"0"}}));
}

TEST(Normalize, EvalNf) {
    MPoly x = MPoly::var("x"), y = MPoly::var("y"), z = MPoly::var("z");
    SemiPolyNF a{{{x}, {-x}}};
    EXPECT_EQ(eval_nf(a, {{"x", Q(-3)}}), 3);
    SemiPolyNF b{{{x + y}, {x + z}}};
    EXPECT_EQ(eval_nf(b, {{"x", Q(1)}, {"y", Q(2)}, {"z", Q(0)}}), 3);
    SemiPolyNF c{{{MPoly(Rational(0))}}};
    EXPECT_EQ(eval_nf(c, {{"q", Q(7)}}), 0);
    EXPECT_EQ(code_of([&] { eval_nf(b, {{"x", Q(1)}}); }), ErrorCode::MissingVariable);
}

// Every corpus term, products included, evaluates like its normal form.
TEST(Normalize, SoundnessProperty) {
    std::vector<FTerm> terms;
    for (const auto& set : {corpus::lgroup_facts(), corpus::lgroup_axioms(), corpus::fring_rules()})
        for (const auto& r : set) {
            if (r.concl.term.variables().size() > 4) continue;
            terms.push_back(r.concl.term);
            for (const auto& h : r.hyps) terms.push_back(h.term);
        }
    terms.push_back(parse_fterm("(* (sup x (- y)) (inf (* x x) (+ y 1)))"));
    terms.push_back(parse_fterm("(* (abs (- x y)) (abs (+ x y)) (pos z))"));
    gen::Source src(11);
    int capped = 0;
    for (const auto& t : terms) {
        SemiPolyNF nf;
        try {
            nf = normalize(t);
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::Unsupported);
            ++capped;
            continue;
        }
        auto vars = t.variables();
        for (int i = 0; i < 300; ++i) {
            auto pt = random_point(vars, src);
            ASSERT_EQ(t.eval(pt), eval_nf(nf, pt)) << t.str() << " nf " << nf.str();
        }
    }
    // Only the four-variable inclusion-exclusion sum exceeds the size cap.
    EXPECT_LE(capped, 1);
}

TEST(Sort, Numeric) {
    EXPECT_EQ(sort_k(std::vector<Rational>{3, 1, 2}, 2), 2);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(sort_k(std::vector<Rational>{5, 5, 5}, k), 5);
    EXPECT_EQ(code_of([] { sort_k(std::vector<Rational>{1, 2}, 3); }), ErrorCode::KOutOfRange);
    EXPECT_EQ(code_of([] { sort_k(std::vector<Rational>{1, 2}, 0); }), ErrorCode::KOutOfRange);
    std::vector<AlgReal> alg = isolate_real_roots(Poly::from_ints({-2, 0, 1}));
    alg.push_back(AlgReal::rational(0));
    EXPECT_EQ(sort_k(alg, 2), AlgReal::rational(0));
    gen::Source src(5);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(src.integer(1, 6));
        std::vector<Rational> xs;
        for (int i = 0; i < n; ++i) xs.push_back(src.rational(4, 3));
        auto sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(sort_all(xs), sorted);
    }
}

TEST(Sort, Symbolic) {
    std::vector<FTerm> xy = {V("x"), V("y")};
    EXPECT_EQ(sort_k_term(xy, 1).str(), "(inf x y)");
    EXPECT_EQ(sort_k_term(xy, 2).str(), "(sup x y)");
    EXPECT_EQ(code_of([&] { sort_k_term(xy, 3); }), ErrorCode::KOutOfRange);
}

TEST(Sort, DualityAndMonotonicity) {
    for (int n = 1; n <= 4; ++n) {
        std::vector<FTerm> xs;
        for (int i = 1; i <= n; ++i) xs.push_back(FTerm::var("x" + std::to_string(i)));
        for (int k = 1; k <= n; ++k) {
            EXPECT_TRUE(lgroup_identity(sort_k_term(xs, k), sort_k_term_dual(xs, k)).equal()) << n << " " << k;
            if (k < n) {
                EXPECT_TRUE(lgroup_rule({}, le_atom(sort_k_term(xs, k), sort_k_term(xs, k + 1))).equal());
            }
        }
    }
    // Reversed monotonicity is false.
    std::vector<FTerm> xs = {V("x"), V("y"), V("z")};
    auto bad = lgroup_rule({}, le_atom(sort_k_term(xs, 2), sort_k_term(xs, 1)));
    ASSERT_FALSE(bad.equal());
    EXPECT_GT(sort_k_term(xs, 2).eval(bad.point), sort_k_term(xs, 1).eval(bad.point));
}

TEST(LGroup, Examples) {
    FTerm x = V("x"), y = V("y");
    EXPECT_TRUE(lgroup_identity(sup(abs_t(x + y), abs_t(x - y)), abs_t(x) + abs_t(y)).equal());
    EXPECT_TRUE(lgroup_identity(inf(x, y) + sup(x, y), x + y).equal());
    auto r = lgroup_identity(abs_t(x + y), abs_t(x) + abs_t(y));
    ASSERT_FALSE(r.equal());
    EXPECT_NE(abs_t(x + y).eval(r.point), (abs_t(x) + abs_t(y)).eval(r.point));
    EXPECT_LT(r.point["x"] * r.point["y"], 0);
    EXPECT_TRUE(lgroup_identity(x, x).equal());
    EXPECT_TRUE(lgroup_identity(C(2) * sup(x, C(1)), sup(x + x, C(2))).equal());
    EXPECT_FALSE(lgroup_identity(C(-2) * sup(x, C(1)), sup(-(x + x), C(-2))).equal());
    EXPECT_EQ(code_of([&] { lgroup_identity(x * y, y * x); }), ErrorCode::NonLinearTerm);
}

TEST(LGroup, CapReportsUnsupported) {
    std::vector<FTerm> xs;
    for (int i = 1; i <= 6; ++i) xs.push_back(FTerm::var("x" + std::to_string(i)));
    EXPECT_EQ(code_of([&] { lgroup_identity(sort_k_term(xs, 3), sort_k_term_dual(xs, 3)); }),
              ErrorCode::Unsupported);
    EXPECT_TRUE(lgroup_identity(sort_k_term(xs, 3), sort_k_term_dual(xs, 3), 40).equal());
}

TEST(LGroup, FactCorpus) {
    gen::Source src(3);
    for (const auto& r : corpus::lgroup_facts()) {
        auto res = lgroup_rule(r.hyps, r.concl);
        EXPECT_TRUE(res.equal()) << "item " << r.name;
        EXPECT_GT(res.cells, 0u);
        std::set<std::string> vars;
        r.concl.term.collect_vars(vars);
        for (const auto& h : r.hyps) h.term.collect_vars(vars);
        for (int i = 0; i < 50; ++i) EXPECT_TRUE(rule_holds_at(r, random_point(vars, src))) << r.name;
    }
    for (const auto& r : corpus::lgroup_axioms()) EXPECT_TRUE(lgroup_rule(r.hyps, r.concl).equal()) << r.name;
}

// The modular law needs z <= x; with x <= z it fails.
TEST(LGroup, ModularLawOrientation) {
    FTerm x = V("x"), y = V("y"), z = V("z");
    auto r = lgroup_rule({le_atom(x, z)}, eq_atom(sup(inf(x, y), z), inf(x, sup(y, z))));
    ASSERT_FALSE(r.equal());
    EXPECT_LE(r.point["x"], r.point["z"]);
    EXPECT_TRUE(lgroup_rule({le_atom(z, x)}, eq_atom(sup(inf(x, y), z), inf(x, sup(y, z)))).equal());
}

TEST(LGroup, HypothesesMatter) {
    FTerm u = V("u"), v = V("v"), w = V("w");
    // Item 21 without orthogonality.
    auto r = lgroup_rule({corpus::ge0(u), corpus::ge0(v), corpus::ge0(w)}, eq_atom(inf(u + v, w), inf(u, w)));
    ASSERT_FALSE(r.equal());
    EXPECT_GT(inf(u + v, w).eval(r.point), inf(u, w).eval(r.point));
    // Strict conclusions.
    EXPECT_TRUE(lgroup_rule({corpus::gt0(u), corpus::ge0(v)}, corpus::gt0(u + v)).equal());
    EXPECT_FALSE(lgroup_rule({corpus::ge0(u), corpus::ge0(v)}, corpus::gt0(u + v)).equal());
    // Inconsistent hypotheses make anything hold.
    EXPECT_TRUE(lgroup_rule({corpus::gt0(u), corpus::gt0(-u)}, eq_atom(u, C(7))).equal());
}

TEST(LGroup, AgreesWithSamplingOnRandomTerms) {
    std::mt19937_64 rng(99);
    std::vector<FTerm> leaves = {V("x"), V("y"), V("z"), C(1), C(-2)};
    std::function<FTerm(int)> gen_term = [&](int depth) -> FTerm {
        if (depth == 0) return leaves[rng() % leaves.size()];
        switch (rng() % 5) {
        case 0: return sup(gen_term(depth - 1), gen_term(depth - 1));
        case 1: return inf(gen_term(depth - 1), gen_term(depth - 1));
        case 2: return gen_term(depth - 1) + gen_term(depth - 1);
        case 3: return -gen_term(depth - 1);
        default: return FTerm::constant(Rational(static_cast<long>(rng() % 3) + 1)) * gen_term(depth - 1);
        }
    };
    int refuted = 0;
    for (int i = 0; i < 60; ++i) {
        FTerm a = gen_term(3), b = gen_term(3);
        auto res = lgroup_identity(a, b, 40);
        auto sample = fring_falsify_sample(a, b, 200, static_cast<std::uint64_t>(i));
        if (res.equal()) {
            EXPECT_FALSE(sample.has_value()) << a.str() << " vs " << b.str();
        } else {
            ++refuted;
            EXPECT_NE(a.eval(res.point), b.eval(res.point));
        }
        // Self-identity after a lattice rewrite.
        EXPECT_TRUE(lgroup_identity(a, inf(sup(a, b), a), 40).equal());
    }
    EXPECT_GT(refuted, 0);
}

TEST(Univariate, Examples) {
    FTerm x = V("x");
    EXPECT_TRUE(fring_identity_univariate(pos_t(x) * negpart_t(x), C(0)).equal());
    EXPECT_TRUE(fring_identity_univariate(abs_t(x) * abs_t(x), x * x).equal());
    auto r = fring_identity_univariate(sup(x, C(1) - x), FTerm::op(FKind::Sup, {C(1), x, C(1) - x}));
    ASSERT_FALSE(r.equal());
    ASSERT_TRUE(r.at->is_point());
    EXPECT_EQ(r.at->lo(), Q(1, 2));
    EXPECT_EQ(code_of([] { fring_identity_univariate(V("x"), V("y")); }), ErrorCode::Multivariate);
    EXPECT_TRUE(fring_identity_univariate(C(3), C(3)).equal());
    auto neg = fring_identity_univariate(x * sup(C(0), C(1)), sup(C(0), x));
    ASSERT_FALSE(neg.equal());
    EXPECT_LT(neg.at->lo(), 0);
}

// Differences that only show at irrational points.
TEST(Univariate, IrrationalBreakpoints) {
    FTerm x = V("x");
    FTerm s = x * x - C(2);
    // x^2 - 2 = 0 forces x = +-sqrt 2; concluding x > 0 fails at -sqrt 2.
    auto r = fring_rule_univariate({eq_atom(s, C(0))}, corpus::gt0(x));
    ASSERT_FALSE(r.equal());
    EXPECT_FALSE(r.at->is_point());
    EXPECT_LT(*r.at, AlgReal::rational(0));
    EXPECT_EQ(sign_at(Poly::from_ints({-2, 0, 1}), *r.at), 0);
    EXPECT_TRUE(fring_rule_univariate({eq_atom(s, C(0)), corpus::ge0(x)}, corpus::gt0(x - C(1))).equal());
    EXPECT_TRUE(fring_identity_univariate(abs_t(s) * abs_t(x), abs_t(s * x)).equal());
}

TEST(FRing, RuleCorpusUnivariate) {
    for (const auto& r : corpus::fring_rules())
        for (const auto& s : corpus::univariate_substitutions()) {
            auto inst = corpus::instantiate(r, s);
            EXPECT_TRUE(fring_rule_univariate(inst.hyps, inst.concl).equal()) << r.name;
        }
}

TEST(FRing, RuleCorpusSampling) {
    for (const auto& r : corpus::fring_rules())
        EXPECT_FALSE(fring_falsify_rule(r.hyps, r.concl, 1000, 7).has_value()) << r.name;
}

TEST(FRing, FalsifierFindsMissingHypothesis) {
    FTerm a = V("a"), b = V("b"), c = V("c");
    auto pt = fring_falsify_sample(a * sup(b, c), sup(a * b, a * c), 500, 1);
    ASSERT_TRUE(pt.has_value());
    EXPECT_LT((*pt)["a"], 0);
    EXPECT_EQ(pt, fring_falsify_sample(a * sup(b, c), sup(a * b, a * c), 500, 1));
    EXPECT_FALSE(fring_falsify_sample(pos_t(a) * sup(b, c), sup(pos_t(a) * b, pos_t(a) * c), 500, 1));
    EXPECT_FALSE(fring_falsify_sample(a, a, 100, 4));
    // The concrete point a = -1, b = 0, c = 1.
    std::map<std::string, Rational> p{{"a", Q(-1)}, {"b", Q(0)}, {"c", Q(1)}};
    EXPECT_EQ((a * sup(b, c)).eval(p), -1);
    EXPECT_EQ(sup(a * b, a * c).eval(p), 0);
}

// In a reduced f-ring c = a sup b is pinned down by c >= a, c >= b, (c-a)(c-b) = 0.
TEST(FRing, SupCharacterizationGrid) {
    std::vector<Rational> grid;
    for (int n = -6; n <= 6; ++n) grid.push_back(Q(n, 2));
    for (const auto& a : grid)
        for (const auto& b : grid)
            for (const auto& c : grid) {
                Rational p = (c - a) * (c - b);
                if (c >= a && c >= b && p == 0) {
                    EXPECT_EQ(c, std::max(a, b));
                }
            }
    FTerm a = V("a"), b = V("b"), c = V("c");
    std::vector<FAtom> hyps = {le_atom(a, c), le_atom(b, c), eq_atom((c - a) * (c - b), C(0))};
    EXPECT_FALSE(fring_falsify_rule(hyps, eq_atom(c, sup(a, b)), 2000, 3));
}

TEST(Univariate, AgreesWithNormalFormOnRandomTerms) {
    std::mt19937_64 rng(17);
    FTerm x = V("x");
    std::vector<FTerm> leaves = {x, C(1), C(-1), C(2), x * x};
    std::function<FTerm(int)> gen_term = [&](int depth) -> FTerm {
        if (depth == 0) return leaves[rng() % leaves.size()];
        switch (rng() % 5) {
        case 0: return sup(gen_term(depth - 1), gen_term(depth - 1));
        case 1: return inf(gen_term(depth - 1), gen_term(depth - 1));
        case 2: return gen_term(depth - 1) + gen_term(depth - 1);
        case 3: return gen_term(depth - 1) * gen_term(depth - 1);
        default: return -gen_term(depth - 1);
        }
    };
    gen::Source src(8);
    int refuted = 0;
    for (int i = 0; i < 80; ++i) {
        FTerm a = gen_term(3), b = gen_term(2);
        auto res = fring_identity_univariate(a, b);
        SemiPolyNF na = normalize(a), nb = normalize(b);
        if (res.equal()) {
            for (int k = 0; k < 40; ++k) {
                std::map<std::string, Rational> pt{{"x", src.rational(4, 8)}};
                EXPECT_EQ(eval_nf(na, pt), eval_nf(nb, pt)) << a.str() << " vs " << b.str();
            }
        } else {
            ++refuted;
            if (res.at->is_point()) {
                std::map<std::string, Rational> pt{{"x", res.at->lo()}};
                EXPECT_NE(eval_nf(na, pt), eval_nf(nb, pt));
            }
        }
        EXPECT_TRUE(fring_identity_univariate(a, sup(inf(a, b), a)).equal());
        EXPECT_TRUE(fring_identity_univariate(a * b, inf(a, b) * sup(a, b)).equal());
    }
    EXPECT_GT(refuted, 0);
}
