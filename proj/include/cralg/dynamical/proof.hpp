#ifndef CRALG_DYNAMICAL_PROOF_HPP
#define CRALG_DYNAMICAL_PROOF_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cralg/dynamical/syntax.hpp"

namespace cralg::dyn {

/// h * fact, where `fact` names a known atom of the form fact = 0.
struct Combination {
    MPoly h;
    MPoly fact;
};

struct ProofNode;
using ProofPtr = std::shared_ptr<ProofNode>;

struct Case {
    std::vector<std::string> fresh; // new names, positionally for the rule's fresh variables
    ProofPtr proof;
};

/// Tree-shaped dynamical proof.
///
/// Derive applies a Horn rule (or the collapse sugar of a zero-branch rule) and
/// continues with `next`. The pseudo-rule "ring" derives `target` from the fact
/// `source` (same predicate; absent for =0) when target - source equals the
/// stated combination of =0 facts exactly. Branch applies a rule with
/// disjunctions or fresh variables and has one case per disjunct. Discharge closes
/// a leaf with goal disjunct `disjunct` and witnesses for its fresh variables.
struct ProofNode {
    enum class Kind { Derive, Branch, Discharge };
    Kind kind = Kind::Discharge;
    std::string rule;
    std::map<std::string, MPoly> subst;
    std::optional<Atom> target;
    std::optional<MPoly> source;
    std::vector<Combination> combination;
    ProofPtr next;
    std::vector<Case> cases;
    int disjunct = 0;
    std::map<std::string, MPoly> witness;
};

inline ProofPtr derive(std::string rule, std::map<std::string, MPoly> subst, ProofPtr next) {
    auto n = std::make_shared<ProofNode>();
    n->kind = ProofNode::Kind::Derive;
    n->rule = std::move(rule);
    n->subst = std::move(subst);
    n->next = std::move(next);
    return n;
}

inline ProofPtr ring_step(Atom target, std::optional<MPoly> source, std::vector<Combination> comb, ProofPtr next) {
    auto n = std::make_shared<ProofNode>();
    n->kind = ProofNode::Kind::Derive;
    n->rule = "ring";
    n->target = std::move(target);
    n->source = std::move(source);
    n->combination = std::move(comb);
    n->next = std::move(next);
    return n;
}

inline ProofPtr branch(std::string rule, std::map<std::string, MPoly> subst, std::vector<Case> cases) {
    auto n = std::make_shared<ProofNode>();
    n->kind = ProofNode::Kind::Branch;
    n->rule = std::move(rule);
    n->subst = std::move(subst);
    n->cases = std::move(cases);
    return n;
}

inline ProofPtr discharge(int disjunct, std::map<std::string, MPoly> witness = {}) {
    auto n = std::make_shared<ProofNode>();
    n->kind = ProofNode::Kind::Discharge;
    n->disjunct = disjunct;
    n->witness = std::move(witness);
    return n;
}

inline ProofPtr clone(const ProofPtr& p) {
    if (!p) return nullptr;
    auto n = std::make_shared<ProofNode>(*p);
    n->next = clone(p->next);
    for (auto& c : n->cases) c.proof = clone(c.proof);
    return n;
}

struct ProofCheck {
    bool valid = true;
    std::string node;   // path of the offending node, e.g. "root/next/case1/next"
    std::string reason;

    static ProofCheck ok() { return {}; }
    std::string str() const { return valid ? "Valid" : "Invalid at " + node + ": " + reason; }
};

namespace detail {

struct Context {
    std::set<Atom> facts;
    std::set<std::string> names; // every variable name in scope on this path
};

class ProofChecker {
public:
    ProofChecker(const Theory& th, const Rule& goal) : th_(th), goal_(goal) {}

    ProofCheck run(const Presentation& pres, const ProofPtr& root) {
        Context ctx;
        for (const auto& a : goal_.hyps) ctx.facts.insert(a);
        for (const auto& a : pres.atoms()) ctx.facts.insert(a);
        for (const auto& a : ctx.facts) collect_term_vars(a.term, ctx.names);
        for (const auto& g : pres.generators) ctx.names.insert(g);
        for (const auto& b : goal_.branches) {
            for (const auto& a : b.atoms) collect_term_vars(a.term, ctx.names);
        }
        return node(root, ctx, "root");
    }

private:
    static ProofCheck bad(const std::string& at, const std::string& why) { return {false, at, why}; }

    std::optional<std::string> check_term(const MPoly& t, const char* what) const {
        if (!is_integral(t)) return std::string(what) + " " + t.str() + " has non-integer coefficients";
        std::set<std::string> heads;
        collect_term_heads(t, heads);
        for (const auto& h : heads)
            if (!th_.signature.has_function(h))
                return std::string(what) + " uses function '" + h + "' outside the signature";
        return std::nullopt;
    }

    std::optional<std::string> check_subst(const Rule& r, const std::map<std::string, MPoly>& s) const {
        std::set<std::string> fv = r.free_vars();
        for (const auto& [v, t] : s) {
            if (!fv.count(v)) return "substitution for '" + v + "' which is not a free variable of " + r.name;
            if (auto e = check_term(t, "substituted term")) return e;
        }
        return std::nullopt;
    }

    std::optional<std::string> hyps_present(const Rule& r, const std::map<std::string, MPoly>& s,
                                            const Context& ctx) const {
        for (const auto& h : r.hyps) {
            Atom a = subst_atom(h, s);
            if (!ctx.facts.count(a)) return "hypothesis " + a.str() + " of " + r.name + " is not established";
        }
        return std::nullopt;
    }

    void add_fact(Context& ctx, const Atom& a) const {
        ctx.facts.insert(a);
        collect_term_vars(a.term, ctx.names);
    }

    ProofCheck node(const ProofPtr& p, Context ctx, const std::string& at) const {
        if (!p) return bad(at, "missing proof node");
        switch (p->kind) {
        case ProofNode::Kind::Derive: return derive_node(*p, std::move(ctx), at);
        case ProofNode::Kind::Branch: return branch_node(*p, std::move(ctx), at);
        case ProofNode::Kind::Discharge: return discharge_node(*p, ctx, at);
        }
        return bad(at, "unknown node kind");
    }

    ProofCheck derive_node(const ProofNode& p, Context ctx, const std::string& at) const {
        if (p.rule == "ring") {
            if (auto e = ring_node(p, ctx)) return bad(at, *e);
            add_fact(ctx, *p.target);
            return node(p.next, std::move(ctx), at + "/next");
        }
        const Rule* r = th_.find(p.rule);
        if (!r) return bad(at, "rule '" + p.rule + "' is not in theory " + th_.name);
        if (r->branches.size() > 1 || (r->branches.size() == 1 && !r->branches[0].fresh.empty()))
            return bad(at, "rule " + r->name + " opens branches or introduces variables; use a branch node");
        if (auto e = check_subst(*r, p.subst)) return bad(at, *e);
        if (auto e = hyps_present(*r, p.subst, ctx)) return bad(at, *e);
        if (r->branches.empty()) add_fact(ctx, collapse_atom());
        else
            for (const auto& a : r->branches[0].atoms) add_fact(ctx, subst_atom(a, p.subst));
        return node(p.next, std::move(ctx), at + "/next");
    }

    std::optional<std::string> ring_node(const ProofNode& p, const Context& ctx) const {
        if (!th_.has_ring_machinery())
            return "theory " + th_.name + " lacks the ideal axioms needed for a ring step";
        if (!p.target) return std::string("ring step without target");
        if (!th_.signature.has_predicate(p.target->pred))
            return std::string("predicate ") + pred_name(p.target->pred) + " is outside the signature";
        if (auto e = check_term(p.target->term, "target")) return e;
        MPoly rhs;
        if (p.source) {
            Atom src{p.target->pred, *p.source};
            if (!ctx.facts.count(src)) return "source " + src.str() + " is not established";
        } else if (p.target->pred != Pred::Eq) {
            return std::string("a ring step for ") + pred_name(p.target->pred) + " needs a source fact";
        }
        for (const auto& c : p.combination) {
            Atom f{Pred::Eq, c.fact};
            if (!ctx.facts.count(f)) return "combined fact " + f.str() + " is not established";
            if (auto e = check_term(c.h, "multiplier")) return e;
            rhs += c.h * c.fact;
        }
        MPoly lhs = p.target->term - (p.source ? *p.source : MPoly(0));
        if (lhs != rhs)
            return "combination gives " + rhs.str() + " but the step needs " + lhs.str();
        return std::nullopt;
    }

    ProofCheck branch_node(const ProofNode& p, const Context& ctx, const std::string& at) const {
        const Rule* r = th_.find(p.rule);
        if (!r) return bad(at, "rule '" + p.rule + "' is not in theory " + th_.name);
        if (auto e = check_subst(*r, p.subst)) return bad(at, *e);
        if (auto e = hyps_present(*r, p.subst, ctx)) return bad(at, *e);
        if (p.cases.size() != r->branches.size())
            return bad(at, r->name + " has " + std::to_string(r->branches.size()) + " branches but the proof gives " +
                               std::to_string(p.cases.size()));
        std::set<std::string> scope = ctx.names;
        for (const auto& [v, t] : p.subst) collect_term_vars(t, scope);
        for (std::size_t k = 0; k < p.cases.size(); ++k) {
            const Disjunct& d = r->branches[k];
            const Case& c = p.cases[k];
            std::string here = at + "/case" + std::to_string(k);
            if (c.fresh.size() != d.fresh.size())
                return bad(here, "expected " + std::to_string(d.fresh.size()) + " fresh names");
            std::map<std::string, MPoly> s = p.subst;
            std::set<std::string> seen;
            for (std::size_t i = 0; i < d.fresh.size(); ++i) {
                const std::string& f = c.fresh[i];
                if (f.empty() || is_app(f) || !std::isalpha(static_cast<unsigned char>(f[0])))
                    return bad(here, "'" + f + "' is not a variable name");
                if (scope.count(f) || !seen.insert(f).second) return bad(here, "variable " + f + " is not fresh");
                s[d.fresh[i]] = MPoly::var(f);
            }
            Context sub = ctx;
            for (const auto& f : c.fresh) sub.names.insert(f);
            for (const auto& a : d.atoms) add_fact(sub, subst_atom(a, s));
            ProofCheck res = node(c.proof, std::move(sub), here);
            if (!res.valid) return res;
        }
        return ProofCheck::ok();
    }

    ProofCheck discharge_node(const ProofNode& p, const Context& ctx, const std::string& at) const {
        if (!goal_.branches.empty() && (p.disjunct < 0 || p.disjunct >= static_cast<int>(goal_.branches.size())))
            return bad(at, "no goal disjunct " + std::to_string(p.disjunct));
        // 1 = 0 closes any branch
        for (const auto& a : ctx.facts)
            if (is_collapse(a)) return ProofCheck::ok();
        if (goal_.branches.empty()) return bad(at, "the goal concludes collapse but 1 = 0 is not established");
        const Disjunct& d = goal_.branches[static_cast<std::size_t>(p.disjunct)];
        std::map<std::string, MPoly> s;
        for (const auto& f : d.fresh) {
            auto it = p.witness.find(f);
            if (it == p.witness.end()) return bad(at, "no witness for " + f);
            if (auto e = check_term(it->second, "witness")) return bad(at, *e);
            s[f] = it->second;
        }
        if (p.witness.size() != d.fresh.size()) return bad(at, "witness for a variable the disjunct does not bind");
        for (const auto& a : d.atoms) {
            Atom want = subst_atom(a, s);
            if (!ctx.facts.count(want))
                return bad(at, "disjunct " + std::to_string(p.disjunct) + " needs " + want.str());
        }
        return ProofCheck::ok();
    }

    const Theory& th_;
    const Rule& goal_;
};

} // namespace detail

/// Checks a proof of `goal` in `theory` over the dynamic structure `pres`.
inline ProofCheck check_proof(const Theory& theory, const Presentation& pres, const Rule& goal, const ProofPtr& proof) {
    return detail::ProofChecker(theory, goal).run(pres, proof);
}

} // namespace cralg::dyn

#endif // CRALG_DYNAMICAL_PROOF_HPP
