#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nal/ast.hpp"
#include "nal/report.hpp"
#include "nal/surface.hpp"

namespace nal {

enum class RuleId {
    Hyp,
    Weaken,
    TrueI,
    FalseE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    NotI,
    NotE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
    SaysLift,
    SaysIdem,
    SaysPush,
    EqRefl,
    EqSym,
    EqTrans,
    EqFunCong,
    EqRelCong,
    Handoff,
    HandoffR,
    SfApp,
    SfrApp,
    SfRefl,
    SfrRefl,
    SfTrans,
    SfrTrans,
    GroupI,
    GroupE,
    Subprin,
};

inline constexpr std::size_t kRuleCount = 37;

inline constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "HYP",       "WEAKEN",   "TRUE-I",   "FALSE-E", "AND-I",    "AND-E1",    "AND-E2",   "OR-I1",
    "OR-I2",     "OR-E",     "IMP-I",    "IMP-E",   "NOT-I",    "NOT-E",     "FORALL-I", "FORALL-E",
    "EXISTS-I",  "EXISTS-E", "SAYS-LIFT", "SAYS-IDEM", "SAYS-PUSH", "EQ-REFL", "EQ-SYM",  "EQ-TRANS",
    "EQ-FUN-CONG", "EQ-REL-CONG", "HANDOFF", "HANDOFF-R", "SF-APP", "SFR-APP", "SF-REFL", "SFR-REFL",
    "SF-TRANS",  "SFR-TRANS", "GROUP-I", "GROUP-E", "SUBPRIN",
};

inline std::string_view rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

inline std::optional<RuleId> rule_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kRuleCount; ++i)
        if (kRuleNames[i] == name) return static_cast<RuleId>(i);
    return std::nullopt;
}

inline std::vector<RuleId> all_rules() {
    std::vector<RuleId> out;
    for (std::size_t i = 0; i < kRuleCount; ++i) out.push_back(static_cast<RuleId>(i));
    return out;
}

/// Rule-specific payload. The checker never searches: every witness,
/// eigenvariable and rewritten argument list is stated here.
struct RuleParams {
    std::optional<Term> witness;      // FORALL-E, EXISTS-I, SFR-APP, GROUP-I
    std::optional<std::string> var;   // eigenvariable for FORALL-I, EXISTS-E, GROUP-E
    std::optional<Term> principal;    // says rules
    std::optional<Formula> formula;   // WEAKEN
    std::optional<std::string> symbol;  // EQ-FUN-CONG, EQ-REL-CONG
    std::vector<Term> lhs, rhs;         // EQ-FUN-CONG, EQ-REL-CONG
};

struct Derivation {
    RuleId rule;
    Sequent conclusion;
    std::vector<Derivation> premises;
    RuleParams params;
};

struct KernelOptions {
    /// Additionally require x not free in the context for GROUP-E.
    bool strict_group_elim = false;
};

/// {p says phi | phi in ctx}.
inline std::vector<Formula> lift_says_context(const Term& p, const std::vector<Formula>& ctx) {
    std::vector<Formula> out;
    out.reserve(ctx.size());
    for (const auto& f : ctx) out.push_back(Formula::says(p, f));
    return dedup_alpha(out);
}

namespace detail {

inline std::optional<std::size_t> fixed_arity(RuleId r) {
    switch (r) {
        case RuleId::Hyp:
        case RuleId::TrueI:
        case RuleId::EqRefl:
        case RuleId::SfRefl:
        case RuleId::SfrRefl:
        case RuleId::Subprin: return 0;
        case RuleId::AndI:
        case RuleId::ImpE:
        case RuleId::NotE:
        case RuleId::ExistsE:
        case RuleId::EqTrans:
        case RuleId::SfApp:
        case RuleId::SfrApp:
        case RuleId::SfTrans:
        case RuleId::SfrTrans: return 2;
        case RuleId::OrE: return 3;
        case RuleId::EqFunCong:
        case RuleId::EqRelCong: return std::nullopt;
        default: return 1;
    }
}

class StepChecker {
public:
    StepChecker(const Derivation& node, const KernelOptions& opts)
        : node_(node), opts_(opts), name_(rule_name(node.rule)), gamma_(node.conclusion.hyps()),
          goal_(node.conclusion.goal()) {}

    CheckReport run() {
        if (auto n = fixed_arity(node_.rule); n && node_.premises.size() != *n) {
            fail("premise-count", "expects " + std::to_string(*n) + " premise(s), got " +
                                      std::to_string(node_.premises.size()));
            return report_;
        }
        dispatch();
        return report_;
    }

private:
    const Derivation& node_;
    const KernelOptions& opts_;
    std::string_view name_;
    const std::vector<Formula>& gamma_;
    const Formula& goal_;
    CheckReport report_;

    void fail(const std::string& tag, const std::string& why) {
        std::string label = tag == "context-mismatch"   ? "context mismatch"
                            : tag == "side-condition"   ? "side condition violated"
                            : tag == "witness-mismatch" ? "witness mismatch"
                            : tag == "shape"            ? "wrong formula shape"
                            : tag == "premise-count"    ? "wrong number of premises"
                                                        : "missing parameter";
        report_.fail("", tag, std::string(name_) + " " + label + ": " + why);
    }

    const Sequent& premise(std::size_t i) const { return node_.premises[i].conclusion; }
    const Formula& pgoal(std::size_t i) const { return premise(i).goal(); }

    bool kind_is(const Formula& f, FormulaKind k, const std::string& what) {
        if (f.kind() == k) return true;
        fail("shape", what + " must be " + kind_label(k) + ", got '" + render(f) + "'");
        return false;
    }

    static std::string kind_label(FormulaKind k) {
        switch (k) {
            case FormulaKind::True: return "true";
            case FormulaKind::False: return "false";
            case FormulaKind::Relation: return "a relation";
            case FormulaKind::Equals: return "an equality";
            case FormulaKind::And: return "a conjunction";
            case FormulaKind::Or: return "a disjunction";
            case FormulaKind::Implies: return "an implication";
            case FormulaKind::Not: return "a negation";
            case FormulaKind::Forall: return "a universal";
            case FormulaKind::Exists: return "an existential";
            case FormulaKind::Says: return "a says formula";
            case FormulaKind::Speaksfor: return "a delegation";
            case FormulaKind::SpeaksforRestricted: return "a restricted delegation";
        }
        return "?";
    }

    bool same(const Formula& a, const Formula& b, const std::string& what) {
        if (alpha_eq(a, b)) return true;
        fail("shape", what + ": expected '" + render(b) + "', got '" + render(a) + "'");
        return false;
    }

    bool same_term(const Term& a, const Term& b, const std::string& what) {
        if (alpha_eq(a, b)) return true;
        fail("shape", what + ": expected '" + render(b) + "', got '" + render(a) + "'");
        return false;
    }

    static std::string show(const std::vector<Formula>& ctx) {
        std::string s = "{";
        for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? ", " : "") + render(ctx[i]);
        return s + "}";
    }

    bool context_is(std::size_t i, const std::vector<Formula>& expected) {
        if (same_set_alpha(premise(i).hyps(), expected)) return true;
        fail("context-mismatch", "premise " + std::to_string(i + 1) + " context " + show(premise(i).hyps()) +
                                     " should be " + show(expected));
        return false;
    }

    bool all_contexts_are_gamma() {
        for (std::size_t i = 0; i < node_.premises.size(); ++i)
            if (!context_is(i, gamma_)) return false;
        return true;
    }

    std::vector<Formula> gamma_plus(const Formula& f) const {
        auto g = gamma_;
        g.push_back(f);
        return dedup_alpha(g);
    }

    bool principal_matches(const Term& p) {
        if (!node_.params.principal) return true;
        if (alpha_eq(*node_.params.principal, p)) return true;
        fail("witness-mismatch", "declared principal '" + render(*node_.params.principal) +
                                     "' differs from '" + render(p) + "'");
        return false;
    }

    const Term* witness() {
        if (node_.params.witness) return &*node_.params.witness;
        fail("params", "witness term required");
        return nullptr;
    }

    bool instance_of(const Formula& actual, const std::string& x, const Formula& pattern, const Term& t,
                     const std::string& what) {
        Formula expected = substitute(pattern, x, t);
        if (alpha_eq(actual, expected)) return true;
        fail("witness-mismatch", what + " '" + render(actual) + "' is not the instance '" + render(expected) +
                                     "' of witness '" + render(t) + "'");
        return false;
    }

    void dispatch() {
        switch (node_.rule) {
            case RuleId::Hyp:
                if (!contains_alpha(gamma_, goal_))
                    fail("context-mismatch", "goal '" + render(goal_) + "' is not a hypothesis");
                return;
            case RuleId::Weaken: {
                if (!node_.params.formula) return fail("params", "weakened formula required");
                auto expected = premise(0).hyps();
                expected.push_back(*node_.params.formula);
                if (!same_set_alpha(dedup_alpha(expected), gamma_))
                    return fail("context-mismatch", "conclusion context " + show(gamma_) +
                                                        " is not premise context plus '" +
                                                        render(*node_.params.formula) + "'");
                same(goal_, pgoal(0), "goal");
                return;
            }
            case RuleId::TrueI:
                kind_is(goal_, FormulaKind::True, "goal");
                return;
            case RuleId::FalseE:
                if (!all_contexts_are_gamma()) return;
                kind_is(pgoal(0), FormulaKind::False, "premise");
                return;
            case RuleId::AndI:
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::And, "goal")) return;
                if (same(pgoal(0), goal_.left(), "first premise")) same(pgoal(1), goal_.right(), "second premise");
                return;
            case RuleId::AndE1:
            case RuleId::AndE2:
                if (!all_contexts_are_gamma() || !kind_is(pgoal(0), FormulaKind::And, "premise")) return;
                same(goal_, node_.rule == RuleId::AndE1 ? pgoal(0).left() : pgoal(0).right(), "goal");
                return;
            case RuleId::OrI1:
            case RuleId::OrI2:
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Or, "goal")) return;
                same(pgoal(0), node_.rule == RuleId::OrI1 ? goal_.left() : goal_.right(), "premise");
                return;
            case RuleId::OrE: {
                if (!context_is(0, gamma_) || !kind_is(pgoal(0), FormulaKind::Or, "first premise")) return;
                const Formula& d = pgoal(0);
                if (!context_is(1, gamma_plus(d.left())) || !context_is(2, gamma_plus(d.right()))) return;
                if (same(pgoal(1), goal_, "second premise")) same(pgoal(2), goal_, "third premise");
                return;
            }
            case RuleId::ImpI:
                if (!kind_is(goal_, FormulaKind::Implies, "goal")) return;
                if (context_is(0, gamma_plus(goal_.left()))) same(pgoal(0), goal_.right(), "premise");
                return;
            case RuleId::ImpE:
                if (!all_contexts_are_gamma() || !kind_is(pgoal(1), FormulaKind::Implies, "second premise")) return;
                if (same(pgoal(0), pgoal(1).left(), "first premise")) same(goal_, pgoal(1).right(), "goal");
                return;
            case RuleId::NotI:
                if (!kind_is(goal_, FormulaKind::Not, "goal")) return;
                if (context_is(0, gamma_plus(goal_.body()))) kind_is(pgoal(0), FormulaKind::False, "premise");
                return;
            case RuleId::NotE:
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::False, "goal")) return;
                if (kind_is(pgoal(1), FormulaKind::Not, "second premise"))
                    same(pgoal(0), pgoal(1).body(), "first premise");
                return;
            case RuleId::ForallI: return forall_intro();
            case RuleId::ForallE: {
                if (!all_contexts_are_gamma() || !kind_is(pgoal(0), FormulaKind::Forall, "premise")) return;
                if (const Term* t = witness()) instance_of(goal_, pgoal(0).name(), pgoal(0).body(), *t, "goal");
                return;
            }
            case RuleId::ExistsI: {
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Exists, "goal")) return;
                if (const Term* t = witness()) instance_of(pgoal(0), goal_.name(), goal_.body(), *t, "premise");
                return;
            }
            case RuleId::ExistsE: return exists_elim();
            case RuleId::SaysLift:
            case RuleId::SaysIdem:
            case RuleId::SaysPush: return says_rule();
            case RuleId::EqRefl:
                if (kind_is(goal_, FormulaKind::Equals, "goal"))
                    same_term(goal_.terms()[1], goal_.terms()[0], "right-hand side");
                return;
            case RuleId::EqSym:
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Equals, "goal") ||
                    !kind_is(pgoal(0), FormulaKind::Equals, "premise"))
                    return;
                same(goal_, Formula::equals(pgoal(0).terms()[1], pgoal(0).terms()[0]), "goal");
                return;
            case RuleId::EqTrans: {
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Equals, "goal") ||
                    !kind_is(pgoal(0), FormulaKind::Equals, "first premise") ||
                    !kind_is(pgoal(1), FormulaKind::Equals, "second premise"))
                    return;
                if (!same_term(pgoal(1).terms()[0], pgoal(0).terms()[1], "middle term")) return;
                same(goal_, Formula::equals(pgoal(0).terms()[0], pgoal(1).terms()[1]), "goal");
                return;
            }
            case RuleId::EqFunCong:
            case RuleId::EqRelCong: return congruence();
            case RuleId::Handoff:
            case RuleId::HandoffR: {
                auto k = node_.rule == RuleId::Handoff ? FormulaKind::Speaksfor : FormulaKind::SpeaksforRestricted;
                if (!all_contexts_are_gamma() || !kind_is(goal_, k, "goal")) return;
                same(pgoal(0), Formula::says(goal_.terms()[1], goal_), "premise");
                return;
            }
            case RuleId::SfApp: {
                if (!all_contexts_are_gamma() || !kind_is(pgoal(0), FormulaKind::Speaksfor, "first premise") ||
                    !kind_is(pgoal(1), FormulaKind::Says, "second premise"))
                    return;
                const Formula& sf = pgoal(0);
                if (!same_term(pgoal(1).terms()[0], sf.terms()[0], "second premise principal")) return;
                same(goal_, Formula::says(sf.terms()[1], pgoal(1).body()), "goal");
                return;
            }
            case RuleId::SfrApp: {
                if (!all_contexts_are_gamma() ||
                    !kind_is(pgoal(0), FormulaKind::SpeaksforRestricted, "first premise"))
                    return;
                const Term* t = witness();
                if (!t) return;
                const Formula& sf = pgoal(0);
                Formula inst = substitute(sf.body(), sf.name(), *t);
                if (!alpha_eq(pgoal(1), Formula::says(sf.terms()[0], inst)))
                    return fail("witness-mismatch", "second premise '" + render(pgoal(1)) + "' should be '" +
                                                        render(Formula::says(sf.terms()[0], inst)) + "'");
                if (!alpha_eq(goal_, Formula::says(sf.terms()[1], inst)))
                    return fail("witness-mismatch", "goal '" + render(goal_) + "' should be '" +
                                                        render(Formula::says(sf.terms()[1], inst)) + "'");
                return;
            }
            case RuleId::SfRefl:
                if (kind_is(goal_, FormulaKind::Speaksfor, "goal"))
                    same_term(goal_.terms()[1], goal_.terms()[0], "delegator");
                return;
            case RuleId::SfrRefl:
                if (kind_is(goal_, FormulaKind::SpeaksforRestricted, "goal"))
                    same_term(goal_.terms()[1], goal_.terms()[0], "delegator");
                return;
            case RuleId::SfTrans:
            case RuleId::SfrTrans: {
                auto k = node_.rule == RuleId::SfTrans ? FormulaKind::Speaksfor : FormulaKind::SpeaksforRestricted;
                if (!all_contexts_are_gamma() || !kind_is(goal_, k, "goal") ||
                    !kind_is(pgoal(0), k, "first premise") || !kind_is(pgoal(1), k, "second premise"))
                    return;
                const Formula &a = pgoal(0), &b = pgoal(1);
                if (!same_term(a.terms()[0], goal_.terms()[0], "first premise delegate") ||
                    !same_term(b.terms()[0], a.terms()[1], "middle principal") ||
                    !same_term(b.terms()[1], goal_.terms()[1], "second premise delegator"))
                    return;
                if (k == FormulaKind::SpeaksforRestricted &&
                    (!alpha_eq_binding(a.name(), a.body(), goal_.name(), goal_.body()) ||
                     !alpha_eq_binding(b.name(), b.body(), goal_.name(), goal_.body())))
                    fail("shape", "restriction patterns differ");
                return;
            }
            case RuleId::GroupI: {
                if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Speaksfor, "goal")) return;
                const Term& grp = goal_.terms()[1];
                if (grp.kind() != TermKind::Group)
                    return fail("shape", "delegator must be a group, got '" + render(grp) + "'");
                const Term& member = goal_.terms()[0];
                if (node_.params.witness && !alpha_eq(*node_.params.witness, member))
                    return fail("witness-mismatch", "declared witness '" + render(*node_.params.witness) +
                                                        "' is not the delegate '" + render(member) + "'");
                instance_of(pgoal(0), grp.name(), grp.body(), member, "premise");
                return;
            }
            case RuleId::GroupE: return group_elim();
            case RuleId::Subprin: {
                if (!kind_is(goal_, FormulaKind::Speaksfor, "goal")) return;
                const Term& sub = goal_.terms()[1];
                if (sub.kind() != TermKind::Subprincipal)
                    return fail("shape", "delegator must be a subprincipal, got '" + render(sub) + "'");
                same_term(sub.args()[0], goal_.terms()[0], "subprincipal parent");
                return;
            }
        }
    }

    void forall_intro() {
        if (!all_contexts_are_gamma() || !kind_is(goal_, FormulaKind::Forall, "goal")) return;
        std::string x = node_.params.var.value_or(goal_.name());
        if (!alpha_eq(goal_, Formula::forall(x, pgoal(0))))
            return fail("shape", "goal '" + render(goal_) + "' is not the generalization of '" + render(pgoal(0)) +
                                     "' over " + x);
        if (free_vars_of_all(gamma_).count(x))
            fail("side-condition", "eigenvariable " + x + " is free in the context");
    }

    void exists_elim() {
        if (!context_is(0, gamma_) || !kind_is(pgoal(0), FormulaKind::Exists, "first premise")) return;
        const Formula& ex = pgoal(0);
        std::string y = node_.params.var.value_or(ex.name());
        if (y != ex.name() && free_vars(ex).count(y))
            return fail("side-condition", "eigenvariable " + y + " is free in '" + render(ex) + "'");
        Formula opened = substitute(ex.body(), ex.name(), Term::variable(y));
        if (!context_is(1, gamma_plus(opened))) return;
        if (!same(pgoal(1), goal_, "second premise")) return;
        VarSet fv = free_vars_of_all(gamma_);
        fv.merge(free_vars(goal_));
        if (fv.count(y)) fail("side-condition", "eigenvariable " + y + " is free in the context or goal");
    }

    void says_rule() {
        if (!kind_is(goal_, FormulaKind::Says, "goal")) return;
        const Term& p = goal_.terms()[0];
        if (!principal_matches(p)) return;
        const Sequent& prem = premise(0);
        switch (node_.rule) {
            case RuleId::SaysLift:
                // p says Gamma |- p says phi   from   Gamma |- phi
                if (!same_set_alpha(gamma_, lift_says_context(p, prem.hyps())))
                    return fail("context-mismatch", "conclusion context " + show(gamma_) + " is not " +
                                                        render(p) + " says " + show(prem.hyps()));
                same(prem.goal(), goal_.body(), "premise");
                return;
            case RuleId::SaysIdem:
                // p says Gamma |- p says phi   from   p says Gamma |- phi
                if (!context_is(0, gamma_)) return;
                for (const auto& h : gamma_)
                    if (h.kind() != FormulaKind::Says || !alpha_eq(h.terms()[0], p))
                        return fail("context-mismatch", "hypothesis '" + render(h) + "' is not of the form " +
                                                            render(p) + " says _");
                same(prem.goal(), goal_.body(), "premise");
                return;
            case RuleId::SaysPush:
                // p says Gamma |- p says phi   from   Gamma |- p says phi
                if (!same_set_alpha(gamma_, lift_says_context(p, prem.hyps())))
                    return fail("context-mismatch", "conclusion context " + show(gamma_) + " is not " +
                                                        render(p) + " says " + show(prem.hyps()));
                same(prem.goal(), goal_, "premise");
                return;
            default: return;
        }
    }

    void congruence() {
        const auto& ps = node_.params;
        if (!ps.symbol) return fail("params", "symbol required");
        if (ps.lhs.size() != ps.rhs.size()) return fail("params", "lhs and rhs argument lists differ in length");
        bool rel = node_.rule == RuleId::EqRelCong;
        std::size_t n = ps.lhs.size();
        std::size_t offset = rel ? 1 : 0;
        if (node_.premises.size() != n + offset)
            return fail("premise-count", "expects " + std::to_string(n + offset) + " premise(s), got " +
                                             std::to_string(node_.premises.size()));
        if (!all_contexts_are_gamma()) return;
        if (rel) {
            if (!same(pgoal(0), Formula::relation(*ps.symbol, ps.lhs), "first premise")) return;
            if (!same(goal_, Formula::relation(*ps.symbol, ps.rhs), "goal")) return;
        } else {
            if (!same(goal_, Formula::equals(Term::apply(*ps.symbol, ps.lhs), Term::apply(*ps.symbol, ps.rhs)),
                      "goal"))
                return;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!same(pgoal(i + offset), Formula::equals(ps.lhs[i], ps.rhs[i]),
                      "premise " + std::to_string(i + offset + 1)))
                return;
    }

    void group_elim() {
        if (!kind_is(goal_, FormulaKind::Speaksfor, "goal")) return;
        const Term& grp = goal_.terms()[0];
        if (grp.kind() != TermKind::Group)
            return fail("shape", "delegate must be a group, got '" + render(grp) + "'");
        const Term& tau = goal_.terms()[1];
        std::string y = node_.params.var.value_or(grp.name());
        if (y != grp.name() && free_vars(grp).count(y))
            return fail("side-condition", "eigenvariable " + y + " is free in '" + render(grp) + "'");
        Formula member = substitute(grp.body(), grp.name(), Term::variable(y));
        if (!context_is(0, gamma_plus(member))) return;
        if (!same(pgoal(0), Formula::speaksfor(Term::variable(y), tau), "premise")) return;
        if (free_vars(tau).count(y)) return fail("side-condition", "variable " + y + " is free in '" + render(tau) + "'");
        if (opts_.strict_group_elim && free_vars_of_all(gamma_).count(y))
            fail("side-condition", "variable " + y + " is free in the context (strict mode)");
    }
};

inline void check_tree(const Derivation& d, const Signature& sig, const KernelOptions& opts, const std::string& path,
                       CheckReport& out);

}  // namespace detail

/// Validates only the local inference step at `node`; premises are assumed
/// to have been checked on their own.
inline CheckReport check_rule_application(const Derivation& node, const KernelOptions& opts = {}) {
    return detail::StepChecker(node, opts).run();
}

namespace detail {

inline void check_formula_wf(const Formula& f, const Signature& sig, const std::string& path, CheckReport& out) {
    CheckReport wf = well_formed(f, sig);
    for (const auto& fl : wf.failures()) out.fail(path, fl.tag, "'" + render(f) + "': " + fl.reason);
}

inline void check_tree(const Derivation& d, const Signature& sig, const KernelOptions& opts, const std::string& path,
                       CheckReport& out) {
    for (const auto& h : d.conclusion.hyps()) check_formula_wf(h, sig, path, out);
    check_formula_wf(d.conclusion.goal(), sig, path, out);
    CheckReport step = check_rule_application(d, opts);
    for (const auto& fl : step.failures()) out.fail(path, fl.tag, fl.reason);
    for (std::size_t i = 0; i < d.premises.size(); ++i)
        check_tree(d.premises[i], sig, opts, path + "/" + std::to_string(i), out);
}

}  // namespace detail

/// Checks every node and aggregates all failures; node paths are "root",
/// "root/0", "root/0/1", ...
inline CheckReport check_derivation(const Derivation& d, const Signature& sig, const KernelOptions& opts = {}) {
    CheckReport out;
    detail::check_tree(d, sig, opts, "root", out);
    return out;
}

}  // namespace nal
