#ifndef CRALG_TOOLS_CLI_APP_HPP
#define CRALG_TOOLS_CLI_APP_HPP

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cralg/algreal.hpp"
#include "cralg/dynamical.hpp"
#include "cralg/fterm.hpp"
#include "cralg/identity.hpp"
#include "cralg/series.hpp"
#include "cralg/sign_table.hpp"
#include "cralg/virtual_roots.hpp"

namespace cralg::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* cli_version = "1";

// Exit codes: 0 success / Equal / Valid, 1 semantic negative, 2 input error.
enum Exit { Ok = 0, Negative = 1, InputError = 2 };

inline json algreal_json(const AlgReal& x, int digits) {
    json j = {{"exact", x.str()}, {"lo", x.lo().get_str()}, {"hi", x.hi().get_str()},
              {"defining", x.defining().str()}};
    j["approx"] = x.decimal(digits);
    return j;
}

inline json envelope(const std::string& command, json result) {
    return {{"command", command}, {"version", cli_version}, {"result", std::move(result)}};
}

/// Series spec: a polynomial in eps ("1 - eps + 1/2*eps^2"), a ratio "(P)/(Q)"
/// with Q a unit, "geometric(a)" = sum a^k eps^k, or "exp(a)" = sum a^k/k! eps^k.
inline Series parse_series(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto call = [&](const std::string& head) -> std::optional<Rational> {
        if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
        return parse_rational(s.substr(head.size() + 1, s.size() - head.size() - 2));
    };
    if (auto a = call("geometric")) {
        Rational r = *a;
        return Series([r](std::size_t k, const std::vector<Rational>& prev) { return k == 0 ? Rational(1) : Rational(prev[k - 1] * r); });
    }
    if (auto a = call("exp")) {
        Rational r = *a;
        return Series([r](std::size_t k, const std::vector<Rational>& prev) {
            return k == 0 ? Rational(1) : Rational(prev[k - 1] * r / static_cast<long>(k));
        });
    }
    if (!s.empty() && s[0] == '(') {
        int depth = 0;
        std::size_t close = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close + 1 < s.size() && s[close + 1] == '/' && close + 2 < s.size() && s[close + 2] == '(')
            return parse_series(s.substr(1, close - 1)) * invert_unit(parse_series(s.substr(close + 2)));
    }
    MPoly p = parse_mpoly(s);
    for (const auto& v : p.variables())
        if (v != "eps") fail(ErrorCode::ParseError, "series spec may only use eps, found " + v);
    Poly q = p.to_poly("eps");
    std::vector<Rational> cs;
    for (int k = 0; k <= q.degree(); ++k) cs.push_back(q.coeff(k));
    return Series::polynomial(cs);
}

/// P(T) with series coefficients, written as a polynomial in T and eps.
inline SeriesPoly parse_series_poly(const std::string& text) {
    MPoly p = parse_mpoly(text);
    int deg = 0;
    for (const auto& [m, c] : p.terms())
        for (const auto& [v, e] : m) {
            if (v != "T" && v != "eps") fail(ErrorCode::ParseError, "use T and eps only, found " + v);
            if (v == "T") deg = std::max(deg, e);
        }
    std::vector<std::vector<Rational>> cs(static_cast<std::size_t>(deg) + 1);
    for (const auto& [m, c] : p.terms()) {
        int t = m.count("T") ? m.at("T") : 0;
        int e = m.count("eps") ? m.at("eps") : 0;
        auto& row = cs[static_cast<std::size_t>(t)];
        if (static_cast<int>(row.size()) <= e) row.resize(static_cast<std::size_t>(e) + 1, Rational(0));
        row[static_cast<std::size_t>(e)] += c;
    }
    SeriesPoly P;
    for (auto& row : cs) P.push_back(Series::polynomial(row));
    return P;
}

inline json prefix_json(const Series& s, std::size_t n) {
    json a = json::array();
    for (const auto& c : s.prefix(n)) a.push_back(c.get_str());
    return a;
}

inline json point_json(const std::map<std::string, Rational>& pt) {
    json j = json::object();
    for (const auto& [v, q] : pt) j[v] = q.get_str();
    return j;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact constructive real algebra toolkit"};
    app.require_subcommand(1);

    std::string poly, lhs, rhs, mode = "lgroup", expr, expr2, op, theory, goal_path, proof_path, pres_path,
                                    cert_path, theory_name;
    int digits = 6, deg = 2, exp = 1;
    bool verify = false, search = false;
    std::size_t budget = 6, trials = 1000, cap = lgroup_form_cap;
    std::uint64_t seed = 1;

    auto* roots = app.add_subcommand("roots", "isolate real roots");
    roots->add_option("--poly", poly, "coefficients, lowest degree first")->required();
    roots->add_option("--digits", digits, "decimal preview digits");

    auto* vroots = app.add_subcommand("vroots", "virtual root table of a monic polynomial");
    vroots->add_option("--poly", poly, "monic coefficients, lowest degree first")->required();
    vroots->add_option("--digits", digits, "decimal preview digits");
    vroots->add_flag("--verify", verify, "check the interlacing inequality system");

    auto* signtable = app.add_subcommand("signtable", "sign table and the set f >= 0");
    signtable->add_option("--poly", poly, "coefficients, lowest degree first")->required();
    signtable->add_option("--digits", digits, "decimal preview digits");

    auto* identity = app.add_subcommand("identity", "decide or test an f-ring / l-group identity");
    identity->add_option("--mode", mode, "lgroup | uni | sample")->check(CLI::IsMember({"lgroup", "uni", "sample"}));
    identity->add_option("--lhs", lhs, "s-expression")->required();
    identity->add_option("--rhs", rhs, "s-expression")->required();
    identity->add_option("--seed", seed, "sampler seed");
    identity->add_option("--trials", trials, "sampler trials");
    identity->add_option("--cap", cap, "maximum number of splitting directions");

    auto* series = app.add_subcommand("series", "operations on formal power series");
    series->add_option("--expr", expr, "series spec (for hensel: polynomial in T and eps)")->required();
    series->add_option("--expr2", expr2, "second series for sup and frac");
    series->add_option("--op", op, "kappa | abs | sup | inv | frac | hensel")
        ->required()
        ->check(CLI::IsMember({"kappa", "abs", "sup", "inv", "frac", "hensel"}));
    series->add_option("--budget", budget, "coefficient budget K");

    auto* prove = app.add_subcommand("prove", "check a dynamical proof");
    prove->add_option("--theory", theory, "shipped theory name")->required();
    prove->add_option("--goal", goal_path, "goal rule JSON")->required();
    prove->add_option("--proof", proof_path, "proof JSON")->required();

    auto* certify = app.add_subcommand("certify", "verify or search a collapse certificate");
    certify->add_option("--presentation", pres_path, "presentation JSON")->required();
    certify->add_option("--certificate", cert_path, "certificate JSON to verify");
    certify->add_flag("--search", search, "search within the bounds");
    certify->add_option("--deg", deg, "degree bound");
    certify->add_option("--exp", exp, "monoid exponent bound");

    auto* theory_cmd = app.add_subcommand("theory", "print a shipped theory document");
    theory_cmd->add_option("--name", theory_name, "theory name")->required();

    std::vector<const char*> argv{"cralg"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : InputError;
    }

    auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };
    try {
        if (*roots) {
            Poly f = parse_poly_coeffs(poly);
            if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "the zero polynomial has no isolated roots");
            json rs = json::array();
            for (const auto& r : isolate_real_roots(f)) rs.push_back(algreal_json(r, digits));
            emit(envelope("roots", {{"poly", f.str()}, {"roots", rs}}));
            return Ok;
        }
        if (*vroots) {
            Poly f = parse_poly_coeffs(poly);
            VirtualRootTable t = virtual_roots(f);
            json rows = json::array();
            for (int d = 1; d <= t.degree; ++d) {
                json row = json::array();
                for (int j = 1; j <= d; ++j) row.push_back(algreal_json(t.rho(d, j), digits));
                rows.push_back({{"delta", d}, {"roots", row}});
            }
            json res = {{"poly", f.str()}, {"bound", t.bound.get_str()}, {"rows", rows},
                        {"note", "approx fields are decimal previews; exact data is lo/hi/defining"}};
            int code = Ok;
            if (verify) {
                bool okv = verify_vr_inequalities(t);
                res["inequalities_hold"] = okv;
                if (!okv) code = Negative;
            }
            emit(envelope("vroots", res));
            return code;
        }
        if (*signtable) {
            Poly f = parse_poly_coeffs(poly);
            SignTable t = sign_table(f);
            json rows = json::array();
            for (const auto& r : t.rows) {
                json row = {{"kind", r.is_point ? "point" : "interval"}, {"sign", r.sign}};
                row["left"] = algreal_json(r.left, digits);
                row["right"] = algreal_json(r.right, digits);
                rows.push_back(row);
            }
            auto ivs = [&](const std::vector<ClosedInterval>& v) {
                json a = json::array();
                for (const auto& i : v) a.push_back({{"lo", algreal_json(i.lo, digits)}, {"hi", algreal_json(i.hi, digits)}});
                return a;
            };
            json vr = json::array();
            for (const auto& x : t.virtual_roots) vr.push_back(algreal_json(x, digits));
            emit(envelope("signtable", {{"poly", f.str()},
                                        {"window", t.window.get_str()},
                                        {"rows", rows},
                                        {"nonneg", ivs(t.nonneg)},
                                        {"virtual_roots", vr},
                                        {"vr_description", ivs(t.vr_approx)},
                                        {"description_contains_nonneg", t.approx_contains_nonneg}}));
            return Ok;
        }
        if (*identity) {
            FTerm a = parse_fterm(lhs), b = parse_fterm(rhs);
            json res = {{"mode", mode}, {"lhs", a.str()}, {"rhs", b.str()}};
            bool equal = true;
            if (mode == "lgroup") {
                LGroupResult r = lgroup_identity(a, b, cap);
                equal = r.equal();
                res["cells"] = r.cells;
                if (!equal) res["counterexample"] = point_json(r.point);
            } else if (mode == "uni") {
                UnivariateResult r = fring_identity_univariate(a, b);
                equal = r.equal();
                if (!equal) res["counterexample"] = {{"variable", r.var}, {"at", algreal_json(*r.at, digits)}};
            } else {
                auto pt = fring_falsify_sample(a, b, trials, seed);
                equal = !pt.has_value();
                res["seed"] = seed;
                res["trials"] = trials;
                if (pt) res["counterexample"] = point_json(*pt);
                else res["note"] = "no counterexample found; sampling is not a proof";
            }
            res["verdict"] = equal ? "Equal" : "Counterexample";
            emit(envelope("identity", res));
            return equal ? Ok : Negative;
        }
        if (*series) {
            std::size_t n = budget + 1;
            json res = {{"op", op}, {"budget", budget}};
            Series s;
            if (op == "hensel") {
                SeriesPoly P = parse_series_poly(expr);
                s = hensel_root(P);
                res["residual_prefix"] = prefix_json(eval_series_poly(P, s), n);
            } else {
                Series x = parse_series(expr);
                if (op == "kappa") {
                    res["state"] = kappa(x, budget).str();
                    s = x;
                } else if (op == "abs") {
                    s = abs(x);
                } else if (op == "inv") {
                    s = invert_unit(x, budget);
                } else {
                    if (expr2.empty()) fail(ErrorCode::ParseError, "--op " + op + " needs --expr2");
                    Series y = parse_series(expr2);
                    s = op == "sup" ? sup(x, y) : frac(x, y, budget);
                }
            }
            res["prefix"] = prefix_json(s, n);
            res["text"] = s.str(n);
            emit(envelope("series", res));
            return Ok;
        }
        if (*prove) {
            dyn::Theory th = dyn::load_theory(theory);
            dyn::Goal g = dyn::goal_from_json(dyn::read_json_file(goal_path));
            dyn::ProofDocument d = dyn::proof_from_json(dyn::read_json_file(proof_path));
            dyn::ProofCheck c = dyn::check_document(th, g, d);
            json res = {{"theory", theory}, {"goal", g.rule.str()}, {"verdict", c.valid ? "Valid" : "Invalid"}};
            if (!c.valid) {
                res["node"] = c.node;
                res["reason"] = c.reason;
            }
            emit(envelope("prove", res));
            return c.valid ? Ok : Negative;
        }
        if (*certify) {
            dyn::Presentation p = dyn::presentation_from_json(dyn::read_json_file(pres_path));
            if (search) {
                if (deg < 0 || exp < 0) fail(ErrorCode::ParseError, "bounds must be nonnegative");
                auto cert = dyn::search_certificate(p, deg, exp);
                if (!cert) {
                    emit(envelope("certify", {{"found", false},
                                              {"note", "nothing within the bounds; this is not a consistency proof"}}));
                    return Negative;
                }
                // the certificate document itself, so it can be fed back through --certificate
                json j = dyn::certificate_to_json(*cert);
                j["verified"] = dyn::check_certificate(p, *cert);
                emit(j);
                return Ok;
            }
            if (cert_path.empty()) fail(ErrorCode::ParseError, "give --certificate or --search");
            dyn::CollapseCertificate c = dyn::certificate_from_json(dyn::read_json_file(cert_path));
            bool okc = dyn::check_certificate(p, c);
            emit(envelope("certify", {{"verified", okc}}));
            return okc ? Ok : Negative;
        }
        if (*theory_cmd) {
            emit(dyn::theory_document(theory_name));
            return Ok;
        }
    } catch (const Error& e) {
        emit(envelope("error", {{"code", to_string(e.code())}, {"message", e.what()}}));
        err << e.what() << "\n";
        return InputError;
    }
    return InputError;
}

} // namespace cralg::cli

#endif // CRALG_TOOLS_CLI_APP_HPP
