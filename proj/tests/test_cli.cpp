#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cli_app.hpp"

using cralg::cli::json;
using cralg::cli::run_cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    json j() const { return json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str()};
}

std::string fixture(const std::string& name) { return std::string(CRALG_FIXTURE_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST(Cli, Roots) {
    Outcome r = run({"roots", "--poly", "-4,0,1"});
    EXPECT_EQ(r.code, 0);
    auto roots = r.j()["result"]["roots"];
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_EQ(roots[0]["exact"], "-2");
    EXPECT_EQ(roots[1]["exact"], "2");

    EXPECT_TRUE(run({"roots", "--poly", "1,0,1"}).j()["result"]["roots"].empty());

    // X^3 - 3X + 1: three roots, each interval isolating for the Sturm count
    auto three = run({"roots", "--poly", "1,-3,0,1"}).j()["result"]["roots"];
    ASSERT_EQ(three.size(), 3u);
    cralg::Poly f = cralg::parse_poly_coeffs("1,-3,0,1");
    cralg::SturmChain chain(f);
    for (const auto& x : three) {
        cralg::Rational lo = cralg::parse_rational(x["lo"].get<std::string>());
        cralg::Rational hi = cralg::parse_rational(x["hi"].get<std::string>());
        EXPECT_EQ(chain.count(lo, hi), 1);
    }
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run({"roots", "--poly", "1,x"}).code, 2);
    EXPECT_EQ(run({"roots", "--poly", "0"}).code, 2);
    EXPECT_EQ(run({"roots"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    Outcome nm = run({"vroots", "--poly", "-4,0,2"});
    EXPECT_EQ(nm.code, 2);
    EXPECT_EQ(nm.j()["result"]["code"], "NotMonic");
    EXPECT_EQ(run({"identity", "--lhs", "(sup x", "--rhs", "x"}).code, 2);
    EXPECT_EQ(run({"series", "--expr", "x + 1", "--op", "kappa"}).code, 2);
    EXPECT_EQ(run({"prove", "--theory", "nonexistent", "--goal", fixture("asdz.goal.json"), "--proof",
                   fixture("asdz.proof.json")})
                  .code,
              2);
    EXPECT_EQ(run({"prove", "--theory", "Cd", "--goal", "/no/such/file.json", "--proof", fixture("asdz.proof.json")})
                  .code,
              2);
}

TEST(Cli, VirtualRoots) {
    Outcome r = run({"vroots", "--poly", "-4,0,1", "--verify"});
    EXPECT_EQ(r.code, 0);
    json res = r.j()["result"];
    EXPECT_TRUE(res["inequalities_hold"].get<bool>());
    ASSERT_EQ(res["rows"].size(), 2u);
    EXPECT_EQ(res["rows"][0]["roots"][0]["exact"], "0");
    EXPECT_EQ(res["rows"][1]["roots"][0]["exact"], "-2");
    EXPECT_EQ(res["rows"][1]["roots"][1]["exact"], "2");

    json imag = run({"vroots", "--poly", "1,0,1"}).j()["result"];
    EXPECT_EQ(imag["rows"][1]["roots"][0]["exact"], "0");
    EXPECT_EQ(imag["rows"][1]["roots"][1]["exact"], "0");
}

TEST(Cli, SignTable) {
    Outcome r = run({"signtable", "--poly", "-4,0,1"});
    EXPECT_EQ(r.code, 0);
    json res = r.j()["result"];
    EXPECT_TRUE(res["description_contains_nonneg"].get<bool>());
    EXPECT_EQ(res["nonneg"].size(), 2u);
}

TEST(Cli, Identity) {
    Outcome eq = run({"identity", "--mode", "lgroup", "--lhs", "(+ (inf x y) (sup x y))", "--rhs", "(+ x y)"});
    EXPECT_EQ(eq.code, 0);
    EXPECT_EQ(eq.j()["result"]["verdict"], "Equal");

    Outcome same = run({"identity", "--mode", "uni", "--lhs", "(sup x 1)", "--rhs", "(sup x 1)"});
    EXPECT_EQ(same.code, 0);

    // the Afr form without its hypothesis a >= 0
    Outcome afr = run({"identity", "--mode", "sample", "--lhs", "(* a (sup b c))", "--rhs", "(sup (* a b) (* a c))",
                   "--seed", "7", "--trials", "500"});
    EXPECT_EQ(afr.code, 1);
    json ce = afr.j()["result"]["counterexample"];
    std::map<std::string, cralg::Rational> pt;
    for (const auto& [k, v] : ce.items()) pt[k] = cralg::parse_rational(v.get<std::string>());
    cralg::FTerm l = cralg::parse_fterm("(* a (sup b c))"), rr = cralg::parse_fterm("(sup (* a b) (* a c))");
    EXPECT_NE(l.eval(pt), rr.eval(pt));

    Outcome uni = run({"identity", "--mode", "uni", "--lhs", "(* a (sup a 1))", "--rhs", "(sup (* a a) a)"});
    EXPECT_EQ(uni.code, 1);
    EXPECT_EQ(uni.j()["result"]["verdict"], "Counterexample");
}

TEST(Cli, Series) {
    json k = run({"series", "--expr", "eps - eps^2", "--op", "kappa", "--budget", "3"}).j()["result"];
    EXPECT_EQ(k["state"], "Pos(1)");
    json inv = run({"series", "--expr", "1-eps", "--op", "inv", "--budget", "3"}).j()["result"];
    EXPECT_EQ(inv["prefix"], json::parse(R"(["1","1","1","1"])"));
    json fr = run({"series", "--expr", "eps", "--expr2", "1", "--op", "frac", "--budget", "4"}).j()["result"];
    EXPECT_EQ(fr["prefix"], json::parse(R"(["0","0","1","0","0"])"));
    json h = run({"series", "--expr", "T^2 - T + eps", "--op", "hensel", "--budget", "6"}).j()["result"];
    EXPECT_EQ(h["prefix"], json::parse(R"(["0","1","1","2","5","14","42"])"));
    for (const auto& c : h["residual_prefix"]) EXPECT_EQ(c, "0");
    json ratio = run({"series", "--expr", "(1)/(1 - 2*eps)", "--op", "abs", "--budget", "3"}).j()["result"];
    EXPECT_EQ(ratio["prefix"], json::parse(R"(["1","2","4","8"])"));
    json geo = run({"series", "--expr", "geometric(-1)", "--op", "abs", "--budget", "3"}).j()["result"];
    EXPECT_EQ(geo["prefix"], json::parse(R"(["1","-1","1","-1"])"));
    json ex = run({"series", "--expr", "exp(2)", "--op", "sup", "--expr2", "0", "--budget", "3"}).j()["result"];
    EXPECT_EQ(ex["prefix"], json::parse(R"(["1","2","2","4/3"])"));
    EXPECT_EQ(run({"series", "--expr", "eps", "--op", "inv"}).code, 2);
    EXPECT_EQ(run({"series", "--expr", "-eps", "--expr2", "1", "--op", "frac"}).code, 2);
}

TEST(Cli, Prove) {
    for (const std::string stem : {"asdz", "al"}) {
        Outcome r = run({"prove", "--theory", "Cd", "--goal", fixture(stem + ".goal.json"), "--proof",
                     fixture(stem + ".proof.json")});
        EXPECT_EQ(r.code, 0) << stem;
        EXPECT_EQ(r.j()["result"]["verdict"], "Valid");
    }
    Outcome bad = run({"prove", "--theory", "Cd", "--goal", fixture("asdz.goal.json"), "--proof",
                   fixture("asdz_mutated.proof.json")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.j()["result"]["verdict"], "Invalid");
    EXPECT_EQ(bad.j()["result"]["node"], "root/case1");
}

TEST(Cli, CertifyRoundTrip) {
    std::string pres = fixture("collapse_sign.presentation.json");
    Outcome found = run({"certify", "--presentation", pres, "--search", "--deg", "2", "--exp", "1"});
    EXPECT_EQ(found.code, 0);
    EXPECT_TRUE(found.j()["verified"].get<bool>());
    std::string path = temp_file("cert.json", found.out);
    Outcome again = run({"certify", "--presentation", pres, "--certificate", path});
    EXPECT_EQ(again.code, 0);
    EXPECT_TRUE(again.j()["result"]["verified"].get<bool>());
    // idempotent: searching again yields the same bytes
    EXPECT_EQ(run({"certify", "--presentation", pres, "--search", "--deg", "2", "--exp", "1"}).out, found.out);

    json flipped = found.j();
    flipped["p"][0]["gens"][0]["set"] = "gt";
    std::string bad = temp_file("bad_cert.json", flipped.dump());
    EXPECT_EQ(run({"certify", "--presentation", pres, "--certificate", bad}).code, 1);

    Outcome sos = run({"certify", "--presentation", fixture("sum_of_squares.presentation.json"), "--search"});
    EXPECT_EQ(sos.code, 0);
    Outcome none = run({"certify", "--presentation", fixture("consistent.presentation.json"), "--search"});
    EXPECT_EQ(none.code, 1);
    EXPECT_FALSE(none.j()["result"]["found"].get<bool>());
}

TEST(Cli, TheoryDocumentsReload) {
    Outcome r = run({"theory", "--name", "Cod"});
    EXPECT_EQ(r.code, 0);
    cralg::dyn::Theory t = cralg::dyn::theory_from_json(r.j());
    EXPECT_EQ(t.rules.size(), 17u);
    EXPECT_EQ(run({"theory", "--name", "Nope"}).code, 2);
}

TEST(Cli, Deterministic) {
    std::vector<std::vector<std::string>> cmds{
        {"roots", "--poly", "1,-3,0,1"},
        {"vroots", "--poly", "1,-3,0,1", "--verify"},
        {"identity", "--mode", "sample", "--lhs", "(* a (sup b c))", "--rhs", "(sup (* a b) (* a c))"},
        {"series", "--expr", "T^2 - T + eps", "--op", "hensel", "--budget", "8"},
    };
    for (const auto& c : cmds) EXPECT_EQ(run(c).out, run(c).out);
}
