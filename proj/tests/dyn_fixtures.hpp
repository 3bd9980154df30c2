#ifndef CRALG_TESTS_DYN_FIXTURES_HPP
#define CRALG_TESTS_DYN_FIXTURES_HPP

#include <functional>
#include <string>
#include <vector>

#include "cralg/dynamical.hpp"

namespace dynfix {

using namespace cralg;
using namespace cralg::dyn;

inline std::string fixture(const std::string& name) { return std::string(CRALG_FIXTURE_DIR) + "/" + name; }

struct ProofFixture {
    std::string name;
    std::string theory;
    Goal goal;
    ProofDocument doc;
};

inline ProofFixture load_fixture(const std::string& stem, const std::string& theory) {
    return {stem, theory, goal_from_json(read_json_file(fixture(stem + ".goal.json"))),
            proof_from_json(read_json_file(fixture(stem + ".proof.json")))};
}

inline std::vector<ProofFixture> proof_fixtures() {
    return {load_fixture("asdz", "Cd"), load_fixture("anz", "Cd"), load_fixture("al", "Cd"),
            load_fixture("aonz2", "Apro"), load_fixture("ato1", "Cod")};
}

inline ProofCheck check_fixture(const ProofFixture& f) { return check_document(load_theory(f.theory), f.goal, f.doc); }

// Every node of the main proof, in preorder, as a mutable handle.
inline void collect_nodes(const ProofPtr& n, std::vector<ProofPtr>& out) {
    if (!n) return;
    out.push_back(n);
    collect_nodes(n->next, out);
    for (const auto& c : n->cases) collect_nodes(c.proof, out);
}

struct Mutation {
    std::string label;
    ProofDocument doc;
};

/// Single-step mutations of the main proof: each edits one field of one node.
inline std::vector<Mutation> mutations(const ProofFixture& f, const Theory& th) {
    std::vector<Mutation> out;
    std::size_t count = 0;
    {
        std::vector<ProofPtr> nodes;
        collect_nodes(f.doc.proof, nodes);
        count = nodes.size();
    }
    auto make = [&](std::size_t idx, const std::string& what, const std::function<bool(ProofNode&)>& edit) {
        ProofDocument d = f.doc;
        d.proof = clone(f.doc.proof);
        std::vector<ProofPtr> nodes;
        collect_nodes(d.proof, nodes);
        if (edit(*nodes[idx])) out.push_back({"node " + std::to_string(idx) + ": " + what, d});
    };
    for (std::size_t i = 0; i < count; ++i) {
        make(i, "rule swapped", [&](ProofNode& n) {
            if (n.kind == ProofNode::Kind::Discharge) return false;
            // lemmas are not in th, so only a bogus name replaces them
            const Rule* cur = th.find(n.rule);
            for (const auto& r : th.rules)
                if (cur && r.name != n.rule && r.branches.size() == cur->branches.size()) {
                    n.rule = r.name;
                    return true;
                }
            n.rule = "no_such_rule";
            return true;
        });
        make(i, "substitution shifted", [](ProofNode& n) {
            if (n.subst.empty()) return false;
            n.subst.begin()->second += MPoly(1);
            return true;
        });
        make(i, "multiplier shifted", [](ProofNode& n) {
            if (n.combination.empty()) return false;
            n.combination.back().h += MPoly(1);
            return true;
        });
        make(i, "target changed", [](ProofNode& n) {
            if (!n.target) return false;
            n.target->term += MPoly::var("x");
            return true;
        });
        make(i, "case dropped", [](ProofNode& n) {
            if (n.cases.empty()) return false;
            n.cases.pop_back();
            return true;
        });
        make(i, "fresh name reused", [](ProofNode& n) {
            for (auto& c : n.cases)
                if (!c.fresh.empty()) {
                    c.fresh[0] = "x";
                    return true;
                }
            return false;
        });
        make(i, "disjunct changed", [&](ProofNode& n) {
            if (n.kind != ProofNode::Kind::Discharge) return false;
            n.disjunct = n.disjunct == 0 ? static_cast<int>(f.goal.rule.branches.size()) : n.disjunct - 1;
            return true;
        });
        make(i, "witness shifted", [](ProofNode& n) {
            if (n.witness.empty()) return false;
            n.witness.begin()->second += MPoly(1);
            return true;
        });
        make(i, "step removed", [](ProofNode& n) {
            if (n.kind != ProofNode::Kind::Derive) return false;
            ProofNode next = *n.next;
            n = next;
            return true;
        });
    }
    return out;
}

/// Grid points in Q^G: every generator ranges over a small symmetric set.
inline bool grid_has_model(const Presentation& pres) {
    std::vector<std::string> gens = pres.all_generators();
    const std::vector<Rational> values{Rational(0),  Rational(1),  Rational(-1),       Rational(2),
                                       Rational(-2), Rational(3),  make_rational(1, 2), make_rational(-1, 2)};
    std::map<std::string, Rational> pt;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            for (const auto& t : pres.gt)
                if (t.eval(pt) <= 0) return false;
            for (const auto& t : pres.ge)
                if (t.eval(pt) < 0) return false;
            for (const auto& t : pres.eq)
                if (t.eval(pt) != 0) return false;
            return true;
        }
        for (const auto& v : values) {
            pt[gens[i]] = v;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

inline Presentation presentation(std::vector<std::string> gt, std::vector<std::string> ge,
                                 std::vector<std::string> eq) {
    Presentation p;
    for (const auto& s : gt) p.gt.push_back(parse_term(s));
    for (const auto& s : ge) p.ge.push_back(parse_term(s));
    for (const auto& s : eq) p.eq.push_back(parse_term(s));
    return p;
}

struct PresentationCase {
    std::string name;
    Presentation pres;
    bool collapses_within_bounds;
};

/// Presentations with known status at bounds (2, 1).
inline std::vector<PresentationCase> presentation_corpus() {
    return {
        {"x>0, -x>=0", presentation({"x"}, {"-x"}, {}), true},
        {"1+x^2=0", presentation({}, {}, {"1 + x^2"}), true},
        {"1+x^2+y^2=0", presentation({}, {}, {"1 + x^2 + y^2"}), true},
        {"2+x^2+3y^2=0", presentation({}, {}, {"2 + x^2 + 3*y^2"}), true},
        {"-1>=0", presentation({}, {"-1"}, {}), true},
        {"0>0", presentation({"0"}, {}, {}), true},
        {"x>0, y>0, x+y=0", presentation({"x", "y"}, {}, {"x + y"}), true},
        {"x>=0, y>=0, x+y+1=0", presentation({}, {"x", "y"}, {"x + y + 1"}), true},
        {"x>0, x=0", presentation({"x"}, {}, {"x"}), true},
        {"x>=0", presentation({}, {"x"}, {}), false},
        {"x>0, y>=0", presentation({"x"}, {"y"}, {}), false},
        {"x^2-2=0", presentation({}, {}, {"x^2 - 2"}), false},
        {"x>0, 1-x>0", presentation({"x", "1 - x"}, {}, {}), false},
    };
}

} // namespace dynfix

#endif // CRALG_TESTS_DYN_FIXTURES_HPP
