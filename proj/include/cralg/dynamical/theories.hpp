#ifndef CRALG_DYNAMICAL_THEORIES_HPP
#define CRALG_DYNAMICAL_THEORIES_HPP

#include <string>
#include <vector>

#include "cralg/dynamical/json_io.hpp"

namespace cralg::dyn {

namespace detail {

// Rule catalogue shared by the shipped theories. x >= y is written x - y >= 0,
// x != 0 is x^2 > 0, and x^+ is pos(x), which unfolds to sup(x,0).
inline const char* rule_catalogue = R"json({
"ac0":   {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "0"}]}]},
"ac1":   {"hyps": [{"pred": "=0", "term": "x"}, {"pred": "=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x + y"}]}]},
"ac2":   {"hyps": [{"pred": "=0", "term": "x"}], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x*y"}]}]},
"ga0":   {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "0"}]}]},
"ga1":   {"hyps": [{"pred": "=0", "term": "x"}, {"pred": "=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x + y"}]}]},
"CL_Ac": {"hyps": [{"pred": "=0", "term": "1"}], "branches": []},
"CD":    {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x"}]},
                                   {"fresh": ["y"], "atoms": [{"pred": "=0", "term": "x*y - 1"}]}]},
"AL":    {"hyps": [{"pred": "=0", "term": "(x + y)*z - 1"}],
          "branches": [{"fresh": ["u"], "atoms": [{"pred": "=0", "term": "x*u - 1"}]},
                       {"fresh": ["u"], "atoms": [{"pred": "=0", "term": "y*u - 1"}]}]},
"gao0":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "0"}]}]},
"gao1":  {"hyps": [{"pred": ">=0", "term": "x"}, {"pred": ">=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "x + y"}]}]},
"ao1":   {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "x^2"}]}]},
"ao2":   {"hyps": [{"pred": ">=0", "term": "x"}, {"pred": ">=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "x*y"}]}]},
"aso1":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">0", "term": "1"}]}]},
"aso3":  {"hyps": [{"pred": ">0", "term": "x"}, {"pred": ">=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">0", "term": "x + y"}]}]},
"aso2":  {"hyps": [{"pred": ">0", "term": "x"}], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "x"}]}]},
"aso4":  {"hyps": [{"pred": ">0", "term": "x"}, {"pred": ">0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">0", "term": "x*y"}]}]},
"col_>": {"hyps": [{"pred": ">0", "term": "0"}], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "1"}]}]},
"Gao":   {"hyps": [{"pred": ">=0", "term": "x"}, {"pred": ">=0", "term": "-x"}],
          "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x"}]}]},
"lv":    {"hyps": [{"pred": "=0", "term": "x*y - 1"}], "branches": [{"fresh": [], "atoms": [{"pred": ">0", "term": "x^2"}]}]},
"IV":    {"hyps": [{"pred": ">0", "term": "x^2"}], "branches": [{"fresh": ["y"], "atoms": [{"pred": "=0", "term": "x*y - 1"}]}]},
"OT":    {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "x"}]},
                                   {"fresh": [], "atoms": [{"pred": ">=0", "term": "-x"}]}]},
"ED_neq": {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x"}]},
                                    {"fresh": [], "atoms": [{"pred": ">0", "term": "x^2"}]}]},
"Aso1":  {"hyps": [{"pred": ">0", "term": "x"}, {"pred": ">=0", "term": "x*y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "y"}]}]},
"Aso2":  {"hyps": [{"pred": ">=0", "term": "x"}, {"pred": ">0", "term": "x*y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">0", "term": "y"}]}]},
"sup=":  {"hyps": [{"pred": "=0", "term": "x"}, {"pred": "=0", "term": "y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "sup(u + x, v + y) - sup(u, v)"}]}]},
"sdt1":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "sup(x, x) - x"}]}]},
"sdt2":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "sup(x, y) - sup(y, x)"}]}]},
"sdt3":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "sup(sup(x, y), z) - sup(x, sup(y, z))"}]}]},
"grl":   {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "x + sup(y, z) - sup(x + y, x + z)"}]}]},
"afr":   {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": "=0", "term": "pos(a)*sup(b, c) - sup(pos(a)*b, pos(a)*c)"}]}]},
"sup1":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "sup(x, y) - x"}]}]},
"sup2":  {"hyps": [], "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "sup(x, y) - y"}]}]},
"Sup":   {"hyps": [{"pred": ">=0", "term": "z - x"}, {"pred": ">=0", "term": "z - y"}],
          "branches": [{"fresh": [], "atoms": [{"pred": ">=0", "term": "z - sup(x, y)"}]}]}
})json";

struct TheorySpec {
    const char* name;
    std::vector<const char*> predicates;
    bool lattice;
    std::vector<const char*> rules;
};

inline const std::vector<TheorySpec>& theory_specs() {
    static const std::vector<const char*> ring{"ac0", "ac1", "ac2"};
    static const std::vector<const char*> oring{"ga0", "ga1", "ac2"};
    auto cat = [](std::vector<const char*> a, std::initializer_list<const char*> b) {
        a.insert(a.end(), b);
        return a;
    };
    static const std::vector<const char*> apo = cat(oring, {"gao0", "gao1", "ao1", "ao2"});
    static const std::vector<const char*> apro = cat(apo, {"aso1", "aso3", "aso2", "aso4", "col_>"});
    static const std::vector<const char*> afr = cat(ring, {"sup=", "sdt1", "sdt3", "sdt2", "grl", "afr"});
    static const std::vector<TheorySpec> specs{
        {"Ac0", {"=0"}, false, ring},
        {"Ac", {"=0"}, false, cat(ring, {"CL_Ac"})},
        {"Cd", {"=0"}, false, cat(ring, {"CL_Ac", "CD"})},
        {"Al", {"=0"}, false, cat(ring, {"AL"})},
        {"Apro", {"=0", ">=0", ">0"}, false, apro},
        {"Ao", {"=0", ">=0"}, false, cat(apo, {"Gao"})},
        {"Aso", {"=0", ">=0", ">0"}, false, cat(apro, {"Gao", "Aso1", "Aso2"})},
        {"Cod", {"=0", ">=0", ">0"}, false, cat(apro, {"Gao", "lv", "IV", "OT", "ED_neq"})},
        {"Afr", {"=0"}, true, afr},
        {"Asr", {"=0", ">=0", ">0"}, true,
         cat(afr, {"aso1", "aso3", "aso2", "aso4", "col_>", "lv", "Aso1", "Aso2", "sup1", "sup2", "Sup"})},
    };
    return specs;
}

} // namespace detail

inline std::vector<std::string> theory_names() {
    std::vector<std::string> out;
    for (const auto& s : detail::theory_specs()) out.emplace_back(s.name);
    return out;
}

/// One of the shipped theories, as a self-contained theory document.
inline json theory_document(const std::string& name) {
    static const json catalogue = json::parse(detail::rule_catalogue);
    for (const auto& spec : detail::theory_specs()) {
        if (name != spec.name) continue;
        json preds = json::array(), funcs = json::array({{"+", 2}, {"*", 2}, {"-", 1}});
        for (const char* p : spec.predicates) preds.push_back({p, 1});
        if (spec.lattice) funcs.push_back({"sup", 2});
        json rules = json::array();
        for (const char* r : spec.rules) {
            json rule = {{"name", r}};
            for (const auto& [k, v] : catalogue.at(r).items()) rule[k] = v;
            rules.push_back(rule);
        }
        return {{"schema", schema_version},
                {"name", spec.name},
                {"signature", {{"predicates", preds}, {"functions", funcs}, {"constants", {"0", "1"}}}},
                {"rules", rules}};
    }
    fail(ErrorCode::UnknownTheory, "no shipped theory named '" + name + "'");
}

inline Theory load_theory(const std::string& name) { return theory_from_json(theory_document(name)); }

} // namespace cralg::dyn

#endif // CRALG_DYNAMICAL_THEORIES_HPP
