#ifndef CRALG_DYNAMICAL_JSON_IO_HPP
#define CRALG_DYNAMICAL_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cralg/dynamical/certificate.hpp"
#include "cralg/dynamical/proof.hpp"
#include "cralg/dynamical/syntax.hpp"

// JSON schema (version field "schema" is mandatory on every top-level document):
//   term         "x*y - 1"  or a coefficient map {"x*y": "1", "1": "-1"}
//   atom         {"pred": "=0" | ">=0" | ">0" | "U", "term": term}
//   rule         {"name", "hyps": [atom], "branches": [{"fresh": [name], "atoms": [atom]}]}
//   theory       {"schema", "name", "signature": {"predicates": [[name, arity]], "functions": [...],
//                 "constants": [name]}, "rules": [rule]}
//   goal         {"schema", "rule": rule, "presentation"?: presentation-body}
//   node         {"kind": "derive", "rule", "subst": {var: term}, "next": node}
//                {"kind": "derive", "rule": "ring", "target": atom, "source"?: term,
//                 "combination": [{"h": term, "fact": term}], "next": node}
//                {"kind": "branch", "rule", "subst", "cases": [{"fresh": [name], "proof": node}]}
//                {"kind": "discharge", "disjunct": k, "witness": {var: term}}
//   proof        {"schema", "lemmas"?: [{"rule": rule, "proof": node}], "proof": node}
//   presentation {"schema", "generators": [name], "gt": [term], "ge": [term], "eq": [term]}
//   certificate  {"schema", "s": [index], "p": [{"c": rational, "gens": [{"set": "gt"|"ge", "index"}],
//                 "square": term}], "z": [{"h": term, "r": index}]}

namespace cralg::dyn {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "cralg-dynamical/1";

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& what) { fail(ErrorCode::SchemaError, what); }

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string text(const json& j, const char* what) {
    if (!j.is_string()) schema_fail(std::string(what) + " must be a string");
    return j.get<std::string>();
}

inline Rational rational_of(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error&) {
            schema_fail("bad rational '" + j.get<std::string>() + "'");
        }
    }
    schema_fail("rational must be a string or an integer");
}

} // namespace detail

inline void require_schema(const json& j) {
    if (!j.is_object() || !j.contains("schema")) detail::schema_fail("missing schema version");
    if (j.at("schema") != schema_version)
        detail::schema_fail("unsupported schema " + j.at("schema").dump() + ", expected " + schema_version);
}

inline MPoly term_from_json(const json& j) {
    try {
        if (j.is_string()) return parse_term(j.get<std::string>());
        if (j.is_number_integer()) return MPoly(Rational(j.get<long>()));
        if (j.is_object()) {
            MPoly t;
            for (const auto& [mono, c] : j.items())
                t += detail::rational_of(c) * (mono == "1" ? MPoly(1) : parse_term(mono));
            return t;
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        detail::schema_fail(std::string("bad term: ") + e.what());
    }
    detail::schema_fail("term must be a string or a coefficient map");
}

inline json term_to_json(const MPoly& t) {
    json j = json::object();
    std::vector<std::pair<std::string, Rational>> items;
    for (const auto& [m, c] : t.terms()) {
        std::string key = m.empty() ? "1" : MPoly::term(1, m).str();
        items.emplace_back(key, c);
    }
    for (const auto& [k, c] : items) j[k] = c.get_str();
    return j;
}

inline Atom atom_from_json(const json& j) {
    return {parse_pred(detail::text(detail::field(j, "pred"), "pred")), term_from_json(detail::field(j, "term"))};
}

inline json atom_to_json(const Atom& a) { return {{"pred", pred_name(a.pred)}, {"term", term_to_json(a.term)}}; }

inline std::vector<std::string> names_from_json(const json& j) {
    if (!j.is_array()) detail::schema_fail("expected a list of names");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(detail::text(x, "name"));
    return out;
}

inline Rule rule_from_json(const json& j) {
    Rule r;
    r.name = detail::text(detail::field(j, "name"), "rule name");
    for (const auto& a : detail::field(j, "hyps")) r.hyps.push_back(atom_from_json(a));
    for (const auto& b : detail::field(j, "branches")) {
        Disjunct d;
        d.fresh = names_from_json(detail::field(b, "fresh"));
        for (const auto& a : detail::field(b, "atoms")) d.atoms.push_back(atom_from_json(a));
        r.branches.push_back(std::move(d));
    }
    validate_rule(r);
    return r;
}

inline json rule_to_json(const Rule& r) {
    json hyps = json::array(), branches = json::array();
    for (const auto& a : r.hyps) hyps.push_back(atom_to_json(a));
    for (const auto& d : r.branches) {
        json atoms = json::array();
        for (const auto& a : d.atoms) atoms.push_back(atom_to_json(a));
        branches.push_back({{"fresh", d.fresh}, {"atoms", atoms}});
    }
    return {{"name", r.name}, {"hyps", hyps}, {"branches", branches}};
}

inline Signature signature_from_json(const json& j) {
    Signature s;
    auto arities = [](const json& a) {
        std::vector<std::pair<std::string, int>> out;
        if (!a.is_array()) detail::schema_fail("expected [name, arity] pairs");
        for (const auto& x : a) {
            if (!x.is_array() || x.size() != 2 || !x[1].is_number_integer())
                detail::schema_fail("expected [name, arity]");
            out.emplace_back(detail::text(x[0], "symbol"), x[1].get<int>());
        }
        return out;
    };
    s.predicates = arities(detail::field(j, "predicates"));
    s.functions = arities(detail::field(j, "functions"));
    s.constants = names_from_json(detail::field(j, "constants"));
    validate_signature(s);
    return s;
}

inline json signature_to_json(const Signature& s) {
    json p = json::array(), f = json::array();
    for (const auto& [n, a] : s.predicates) p.push_back({n, a});
    for (const auto& [n, a] : s.functions) f.push_back({n, a});
    return {{"predicates", p}, {"functions", f}, {"constants", s.constants}};
}

inline Theory theory_from_json(const json& j) {
    require_schema(j);
    Theory t;
    t.name = detail::text(detail::field(j, "name"), "theory name");
    t.signature = signature_from_json(detail::field(j, "signature"));
    std::set<std::string> seen;
    for (const auto& r : detail::field(j, "rules")) {
        t.rules.push_back(rule_from_json(r));
        if (!seen.insert(t.rules.back().name).second) detail::schema_fail("duplicate rule " + t.rules.back().name);
    }
    return t;
}

inline json theory_to_json(const Theory& t) {
    json rules = json::array();
    for (const auto& r : t.rules) rules.push_back(rule_to_json(r));
    return {{"schema", schema_version}, {"name", t.name}, {"signature", signature_to_json(t.signature)},
            {"rules", rules}};
}

inline Presentation presentation_body_from_json(const json& j) {
    Presentation p;
    if (j.contains("generators")) p.generators = names_from_json(j.at("generators"));
    auto terms = [&](const char* key, std::vector<MPoly>& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_array()) detail::schema_fail(std::string(key) + " must be a list");
        for (const auto& t : j.at(key)) out.push_back(term_from_json(t));
    };
    terms("gt", p.gt);
    terms("ge", p.ge);
    terms("eq", p.eq);
    return p;
}

inline Presentation presentation_from_json(const json& j) {
    require_schema(j);
    return presentation_body_from_json(j);
}

inline json presentation_to_json(const Presentation& p) {
    auto terms = [](const std::vector<MPoly>& v) {
        json a = json::array();
        for (const auto& t : v) a.push_back(term_to_json(t));
        return a;
    };
    return {{"schema", schema_version}, {"generators", p.generators}, {"gt", terms(p.gt)}, {"ge", terms(p.ge)},
            {"eq", terms(p.eq)}};
}

struct Goal {
    Rule rule;
    Presentation presentation;
};

inline Goal goal_from_json(const json& j) {
    require_schema(j);
    Goal g{rule_from_json(detail::field(j, "rule")), {}};
    if (j.contains("presentation")) g.presentation = presentation_body_from_json(j.at("presentation"));
    return g;
}

inline json goal_to_json(const Goal& g) {
    json j = {{"schema", schema_version}, {"rule", rule_to_json(g.rule)}};
    json p = presentation_to_json(g.presentation);
    p.erase("schema");
    j["presentation"] = p;
    return j;
}

inline std::map<std::string, MPoly> subst_from_json(const json& j) {
    std::map<std::string, MPoly> s;
    if (!j.is_object()) detail::schema_fail("substitution must be an object");
    for (const auto& [v, t] : j.items()) s[v] = term_from_json(t);
    return s;
}

inline json subst_to_json(const std::map<std::string, MPoly>& s) {
    json j = json::object();
    for (const auto& [v, t] : s) j[v] = t.str();
    return j;
}

inline ProofPtr node_from_json(const json& j) {
    std::string kind = detail::text(detail::field(j, "kind"), "kind");
    auto n = std::make_shared<ProofNode>();
    if (kind == "derive") {
        n->kind = ProofNode::Kind::Derive;
        n->rule = detail::text(detail::field(j, "rule"), "rule");
        if (j.contains("subst")) n->subst = subst_from_json(j.at("subst"));
        if (n->rule == "ring") {
            n->target = atom_from_json(detail::field(j, "target"));
            if (j.contains("source")) n->source = term_from_json(j.at("source"));
            if (j.contains("combination"))
                for (const auto& c : j.at("combination"))
                    n->combination.push_back(
                        {term_from_json(detail::field(c, "h")), term_from_json(detail::field(c, "fact"))});
        }
        n->next = node_from_json(detail::field(j, "next"));
    } else if (kind == "branch") {
        n->kind = ProofNode::Kind::Branch;
        n->rule = detail::text(detail::field(j, "rule"), "rule");
        if (j.contains("subst")) n->subst = subst_from_json(j.at("subst"));
        for (const auto& c : detail::field(j, "cases")) {
            Case cs;
            if (c.contains("fresh")) cs.fresh = names_from_json(c.at("fresh"));
            cs.proof = node_from_json(detail::field(c, "proof"));
            n->cases.push_back(std::move(cs));
        }
    } else if (kind == "discharge") {
        n->kind = ProofNode::Kind::Discharge;
        const json& d = detail::field(j, "disjunct");
        if (!d.is_number_integer()) detail::schema_fail("disjunct must be an integer");
        n->disjunct = d.get<int>();
        if (j.contains("witness")) n->witness = subst_from_json(j.at("witness"));
    } else {
        detail::schema_fail("unknown node kind '" + kind + "'");
    }
    return n;
}

inline json node_to_json(const ProofPtr& n) {
    json j;
    switch (n->kind) {
    case ProofNode::Kind::Derive:
        j = {{"kind", "derive"}, {"rule", n->rule}};
        if (!n->subst.empty()) j["subst"] = subst_to_json(n->subst);
        if (n->target) j["target"] = atom_to_json(*n->target);
        if (n->source) j["source"] = n->source->str();
        if (n->rule == "ring") {
            json c = json::array();
            for (const auto& x : n->combination) c.push_back({{"h", x.h.str()}, {"fact", x.fact.str()}});
            j["combination"] = c;
        }
        j["next"] = node_to_json(n->next);
        break;
    case ProofNode::Kind::Branch: {
        j = {{"kind", "branch"}, {"rule", n->rule}, {"subst", subst_to_json(n->subst)}};
        json cases = json::array();
        for (const auto& c : n->cases) cases.push_back({{"fresh", c.fresh}, {"proof", node_to_json(c.proof)}});
        j["cases"] = cases;
        break;
    }
    case ProofNode::Kind::Discharge:
        j = {{"kind", "discharge"}, {"disjunct", n->disjunct}};
        if (!n->witness.empty()) j["witness"] = subst_to_json(n->witness);
        break;
    }
    return j;
}

struct Lemma {
    Rule rule;
    ProofPtr proof;
};

struct ProofDocument {
    std::vector<Lemma> lemmas;
    ProofPtr proof;
};

inline ProofDocument proof_from_json(const json& j) {
    require_schema(j);
    ProofDocument d;
    if (j.contains("lemmas"))
        for (const auto& l : j.at("lemmas"))
            d.lemmas.push_back({rule_from_json(detail::field(l, "rule")), node_from_json(detail::field(l, "proof"))});
    d.proof = node_from_json(detail::field(j, "proof"));
    return d;
}

inline json proof_to_json(const ProofDocument& d) {
    json j = {{"schema", schema_version}};
    if (!d.lemmas.empty()) {
        json ls = json::array();
        for (const auto& l : d.lemmas) ls.push_back({{"rule", rule_to_json(l.rule)}, {"proof", node_to_json(l.proof)}});
        j["lemmas"] = ls;
    }
    j["proof"] = node_to_json(d.proof);
    return j;
}

/// Checks each lemma in turn (each may cite the earlier ones), then the main proof.
inline ProofCheck check_document(const Theory& theory, const Goal& goal, const ProofDocument& doc) {
    Theory th = theory;
    for (std::size_t i = 0; i < doc.lemmas.size(); ++i) {
        ProofCheck c = check_proof(th, {}, doc.lemmas[i].rule, doc.lemmas[i].proof);
        if (!c.valid) {
            c.node = "lemma" + std::to_string(i) + ":" + c.node;
            return c;
        }
        th = th.with_rule(doc.lemmas[i].rule);
    }
    return check_proof(th, goal.presentation, goal.rule, doc.proof);
}

inline CollapseCertificate certificate_from_json(const json& j) {
    require_schema(j);
    CollapseCertificate c;
    auto index = [](const json& x) {
        if (!x.is_number_integer() || x.get<long>() < 0) detail::schema_fail("index must be a nonnegative integer");
        return static_cast<std::size_t>(x.get<long>());
    };
    for (const auto& x : detail::field(j, "s")) c.s.push_back(index(x));
    for (const auto& t : detail::field(j, "p")) {
        ConeTerm ct;
        ct.c = detail::rational_of(detail::field(t, "c"));
        for (const auto& g : detail::field(t, "gens")) {
            std::string set = detail::text(detail::field(g, "set"), "set");
            if (set != "gt" && set != "ge") detail::schema_fail("set must be gt or ge");
            ct.gens.push_back({set == "gt" ? RelSet::Gt : RelSet::Ge, index(detail::field(g, "index"))});
        }
        ct.square = term_from_json(detail::field(t, "square"));
        c.p.push_back(std::move(ct));
    }
    for (const auto& t : detail::field(j, "z"))
        c.z.push_back({term_from_json(detail::field(t, "h")), index(detail::field(t, "r"))});
    return c;
}

inline json certificate_to_json(const CollapseCertificate& c) {
    json p = json::array(), z = json::array();
    for (const auto& t : c.p) {
        json gens = json::array();
        for (const auto& g : t.gens) gens.push_back({{"set", g.set == RelSet::Gt ? "gt" : "ge"}, {"index", g.index}});
        p.push_back({{"c", t.c.get_str()}, {"gens", gens}, {"square", t.square.str()}});
    }
    for (const auto& t : c.z) z.push_back({{"h", t.h.str()}, {"r", t.r}});
    return {{"schema", schema_version}, {"s", c.s}, {"p", p}, {"z", z}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::SchemaError, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

} // namespace cralg::dyn

#endif // CRALG_DYNAMICAL_JSON_IO_HPP
