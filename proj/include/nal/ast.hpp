#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nal/report.hpp"

namespace nal {

/// Function and relation symbols with their fixed arities. Constants are
/// nullary functions.
struct Signature {
    std::map<std::string, std::size_t> functions;
    std::map<std::string, std::size_t> relations;

    bool operator==(const Signature&) const = default;
};

struct TermNode;
struct FormulaNode;
class Formula;

enum class TermKind { Variable, Application, Subprincipal, Group };

enum class FormulaKind {
    True,
    False,
    Relation,
    Equals,
    And,
    Or,
    Implies,
    Not,
    Forall,
    Exists,
    Says,
    Speaksfor,
    SpeaksforRestricted,
};

/// Immutable, shared term. Copies are cheap.
class Term {
public:
    Term() = default;

    static Term variable(std::string name);
    static Term apply(std::string symbol, std::vector<Term> args = {});
    static Term subprincipal(Term parent, Term child);
    static Term group(std::string var, Formula body);

    TermKind kind() const;
    /// Variable name, function symbol, or the group's bound variable.
    const std::string& name() const;
    /// Application arguments, or {parent, child} for a subprincipal.
    const std::vector<Term>& args() const;
    const Formula& body() const;

    bool empty() const noexcept { return !node_; }
    const TermNode* node() const noexcept { return node_.get(); }

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const TermNode> node_;
};

/// Immutable, shared formula. Copies are cheap.
class Formula {
public:
    Formula() = default;

    static Formula truth();
    static Formula falsity();
    static Formula relation(std::string symbol, std::vector<Term> args = {});
    static Formula equals(Term lhs, Term rhs);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula negate(Formula a);
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);
    static Formula says(Term principal, Formula body);
    static Formula speaksfor(Term delegate, Term delegator);
    static Formula speaksfor_on(Term delegate, Term delegator, std::string var, Formula body);
    /// Rebuilds a node of any kind from its parts.
    static Formula make(FormulaKind kind, std::string name, std::vector<Term> terms, std::vector<Formula> subs);

    FormulaKind kind() const;
    /// Relation symbol, or the bound variable of a quantifier / restricted delegation.
    const std::string& name() const;
    /// Relation arguments; {lhs, rhs} for Equals; {principal} for Says;
    /// {delegate, delegator} for the two delegation forms.
    const std::vector<Term>& terms() const;
    /// Immediate subformulas: one for Not/quantifiers/Says/SpeaksforRestricted,
    /// two for binary connectives.
    const std::vector<Formula>& subs() const;

    const Formula& left() const { return subs().at(0); }
    const Formula& right() const { return subs().at(1); }
    const Formula& body() const { return subs().back(); }

    bool empty() const noexcept { return !node_; }
    const FormulaNode* node() const noexcept { return node_.get(); }

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct TermNode {
    TermKind kind;
    std::string name;
    std::vector<Term> args;
    Formula body;
};

struct FormulaNode {
    FormulaKind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Formula> subs;
};

// ---------------------------------------------------------------------------
// Construction

inline Term Term::variable(std::string name) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::Variable, std::move(name), {}, {}}));
}
inline Term Term::apply(std::string symbol, std::vector<Term> args) {
    return Term(std::make_shared<const TermNode>(
        TermNode{TermKind::Application, std::move(symbol), std::move(args), {}}));
}
inline Term Term::subprincipal(Term parent, Term child) {
    return Term(std::make_shared<const TermNode>(
        TermNode{TermKind::Subprincipal, {}, {std::move(parent), std::move(child)}, {}}));
}
inline Term Term::group(std::string var, Formula body) {
    return Term(std::make_shared<const TermNode>(TermNode{TermKind::Group, std::move(var), {}, std::move(body)}));
}

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const std::vector<Term>& Term::args() const { return node_->args; }
inline const Formula& Term::body() const { return node_->body; }

inline Formula Formula::make(FormulaKind k, std::string name, std::vector<Term> terms, std::vector<Formula> subs) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{k, std::move(name), std::move(terms), std::move(subs)}));
}

inline Formula Formula::truth() { return Formula::make(FormulaKind::True, {}, {}, {}); }
inline Formula Formula::falsity() { return Formula::make(FormulaKind::False, {}, {}, {}); }
inline Formula Formula::relation(std::string symbol, std::vector<Term> args) {
    return Formula::make(FormulaKind::Relation, std::move(symbol), std::move(args), {});
}
inline Formula Formula::equals(Term lhs, Term rhs) {
    return Formula::make(FormulaKind::Equals, {}, {std::move(lhs), std::move(rhs)}, {});
}
inline Formula Formula::conj(Formula a, Formula b) {
    return Formula::make(FormulaKind::And, {}, {}, {std::move(a), std::move(b)});
}
inline Formula Formula::disj(Formula a, Formula b) {
    return Formula::make(FormulaKind::Or, {}, {}, {std::move(a), std::move(b)});
}
inline Formula Formula::implies(Formula a, Formula b) {
    return Formula::make(FormulaKind::Implies, {}, {}, {std::move(a), std::move(b)});
}
inline Formula Formula::negate(Formula a) { return Formula::make(FormulaKind::Not, {}, {}, {std::move(a)}); }
inline Formula Formula::forall(std::string var, Formula body) {
    return Formula::make(FormulaKind::Forall, std::move(var), {}, {std::move(body)});
}
inline Formula Formula::exists(std::string var, Formula body) {
    return Formula::make(FormulaKind::Exists, std::move(var), {}, {std::move(body)});
}
inline Formula Formula::says(Term principal, Formula body) {
    return Formula::make(FormulaKind::Says, {}, {std::move(principal)}, {std::move(body)});
}
inline Formula Formula::speaksfor(Term delegate, Term delegator) {
    return Formula::make(FormulaKind::Speaksfor, {}, {std::move(delegate), std::move(delegator)}, {});
}
inline Formula Formula::speaksfor_on(Term delegate, Term delegator, std::string var, Formula body) {
    return Formula::make(FormulaKind::SpeaksforRestricted, std::move(var),
                                {std::move(delegate), std::move(delegator)}, {std::move(body)});
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::terms() const { return node_->terms; }
inline const std::vector<Formula>& Formula::subs() const { return node_->subs; }

inline bool is_binder(FormulaKind k) {
    return k == FormulaKind::Forall || k == FormulaKind::Exists || k == FormulaKind::SpeaksforRestricted;
}

// ---------------------------------------------------------------------------
// Free variables

using VarSet = std::set<std::string>;

namespace detail {

inline void collect_free(const Formula& f, VarSet& bound, VarSet& out);

inline void collect_free(const Term& t, VarSet& bound, VarSet& out) {
    switch (t.kind()) {
        case TermKind::Variable:
            if (!bound.count(t.name())) out.insert(t.name());
            return;
        case TermKind::Application:
        case TermKind::Subprincipal:
            for (const auto& a : t.args()) collect_free(a, bound, out);
            return;
        case TermKind::Group: {
            bool fresh = bound.insert(t.name()).second;
            collect_free(t.body(), bound, out);
            if (fresh) bound.erase(t.name());
            return;
        }
    }
}

inline void collect_free(const Formula& f, VarSet& bound, VarSet& out) {
    // Terms of a restricted delegation sit outside the binder.
    for (const auto& t : f.terms()) collect_free(t, bound, out);
    if (is_binder(f.kind())) {
        bool fresh = bound.insert(f.name()).second;
        for (const auto& s : f.subs()) collect_free(s, bound, out);
        if (fresh) bound.erase(f.name());
    } else {
        for (const auto& s : f.subs()) collect_free(s, bound, out);
    }
}

}  // namespace detail

inline VarSet free_vars(const Term& t) {
    VarSet bound, out;
    detail::collect_free(t, bound, out);
    return out;
}

inline VarSet free_vars(const Formula& f) {
    VarSet bound, out;
    detail::collect_free(f, bound, out);
    return out;
}

template <class Range>
VarSet free_vars_of_all(const Range& formulas) {
    VarSet out;
    for (const auto& f : formulas) out.merge(free_vars(f));
    return out;
}

/// Deterministic fresh name: strips trailing digits from `base`, then
/// appends the smallest positive suffix not in `avoid`.
inline std::string fresh_name(const std::string& base, const VarSet& avoid) {
    std::string stem = base;
    while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
    if (stem.empty()) stem = "v";
    for (std::size_t i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

// ---------------------------------------------------------------------------
// Capture-avoiding substitution

inline Formula substitute(const Formula& f, const std::string& x, const Term& t);

inline Term substitute(const Term& term, const std::string& x, const Term& t) {
    switch (term.kind()) {
        case TermKind::Variable:
            return term.name() == x ? t : term;
        case TermKind::Application: {
            std::vector<Term> args;
            args.reserve(term.args().size());
            for (const auto& a : term.args()) args.push_back(substitute(a, x, t));
            return Term::apply(term.name(), std::move(args));
        }
        case TermKind::Subprincipal:
            return Term::subprincipal(substitute(term.args()[0], x, t), substitute(term.args()[1], x, t));
        case TermKind::Group: {
            if (term.name() == x) return term;
            VarSet body_fv = free_vars(term.body());
            if (!body_fv.count(x)) return term;
            std::string var = term.name();
            Formula body = term.body();
            VarSet t_fv = free_vars(t);
            if (t_fv.count(var)) {
                VarSet avoid = t_fv;
                avoid.merge(body_fv);
                avoid.insert(x);
                std::string renamed = fresh_name(var, avoid);
                body = substitute(body, var, Term::variable(renamed));
                var = renamed;
            }
            return Term::group(var, substitute(body, x, t));
        }
    }
    return term;
}

/// f[t/x], renaming bound variables that would capture free variables of t.
inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
    std::vector<Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& a : f.terms()) terms.push_back(substitute(a, x, t));

    if (!is_binder(f.kind())) {
        std::vector<Formula> subs;
        subs.reserve(f.subs().size());
        for (const auto& s : f.subs()) subs.push_back(substitute(s, x, t));
        return Formula::make(f.kind(), f.name(), std::move(terms), std::move(subs));
    }

    std::string var = f.name();
    Formula body = f.body();
    if (var != x) {
        VarSet body_fv = free_vars(body);
        if (body_fv.count(x)) {
            VarSet t_fv = free_vars(t);
            if (t_fv.count(var)) {
                VarSet avoid = t_fv;
                avoid.merge(body_fv);
                avoid.insert(x);
                std::string renamed = fresh_name(var, avoid);
                body = substitute(body, var, Term::variable(renamed));
                var = renamed;
            }
            body = substitute(body, x, t);
        }
    }
    return Formula::make(f.kind(), std::move(var), std::move(terms), {std::move(body)});
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace detail {

struct AlphaEnv {
    std::vector<std::string> left, right;

    static long index_of(const std::vector<std::string>& stack, const std::string& v) {
        for (std::size_t i = stack.size(); i-- > 0;)
            if (stack[i] == v) return static_cast<long>(i);
        return -1;
    }

    bool same_var(const std::string& a, const std::string& b) const {
        long ia = index_of(left, a), ib = index_of(right, b);
        if (ia < 0 && ib < 0) return a == b;
        return ia == ib;
    }
};

inline bool alpha(const Formula& a, const Formula& b, AlphaEnv& env);

inline bool alpha(const Term& a, const Term& b, AlphaEnv& env) {
    if (a.node() == b.node() && env.left == env.right) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Variable:
            return env.same_var(a.name(), b.name());
        case TermKind::Application:
            if (a.name() != b.name()) return false;
            [[fallthrough]];
        case TermKind::Subprincipal: {
            if (a.args().size() != b.args().size()) return false;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (!alpha(a.args()[i], b.args()[i], env)) return false;
            return true;
        }
        case TermKind::Group: {
            env.left.push_back(a.name());
            env.right.push_back(b.name());
            bool ok = alpha(a.body(), b.body(), env);
            env.left.pop_back();
            env.right.pop_back();
            return ok;
        }
    }
    return false;
}

inline bool alpha(const Formula& a, const Formula& b, AlphaEnv& env) {
    if (a.node() == b.node() && env.left == env.right) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == FormulaKind::Relation && a.name() != b.name()) return false;
    if (a.terms().size() != b.terms().size() || a.subs().size() != b.subs().size()) return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (!alpha(a.terms()[i], b.terms()[i], env)) return false;
    bool binder = is_binder(a.kind());
    if (binder) {
        env.left.push_back(a.name());
        env.right.push_back(b.name());
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i < a.subs().size(); ++i) ok = alpha(a.subs()[i], b.subs()[i], env);
    if (binder) {
        env.left.pop_back();
        env.right.pop_back();
    }
    return ok;
}

}  // namespace detail

inline bool alpha_eq(const Formula& a, const Formula& b) {
    detail::AlphaEnv env;
    return detail::alpha(a, b, env);
}

inline bool alpha_eq(const Term& a, const Term& b) {
    detail::AlphaEnv env;
    return detail::alpha(a, b, env);
}

/// Compares the variable-binding parts (x : phi) of two restricted
/// delegations, or any two (var, body) pairs, up to renaming of var.
inline bool alpha_eq_binding(const std::string& x, const Formula& phi, const std::string& y, const Formula& psi) {
    detail::AlphaEnv env;
    env.left.push_back(x);
    env.right.push_back(y);
    return detail::alpha(phi, psi, env);
}

// ---------------------------------------------------------------------------
// Arity discipline

namespace detail {

inline void check_wf(const Formula& f, const Signature& sig, const std::string& path, CheckReport& out);

inline void check_wf(const Term& t, const Signature& sig, const std::string& path, CheckReport& out) {
    if (!out.accepted()) return;
    switch (t.kind()) {
        case TermKind::Variable:
            return;
        case TermKind::Application: {
            auto it = sig.functions.find(t.name());
            if (it == sig.functions.end()) {
                out.fail(path, "unknown-symbol", "unknown symbol '" + t.name() + "'");
                return;
            }
            if (it->second != t.args().size()) {
                out.fail(path, "arity", "function '" + t.name() + "' expects " + std::to_string(it->second) +
                                            " argument(s), got " + std::to_string(t.args().size()));
                return;
            }
            for (std::size_t i = 0; i < t.args().size(); ++i)
                check_wf(t.args()[i], sig, path + "/arg" + std::to_string(i), out);
            return;
        }
        case TermKind::Subprincipal:
            check_wf(t.args()[0], sig, path + "/parent", out);
            check_wf(t.args()[1], sig, path + "/child", out);
            return;
        case TermKind::Group:
            check_wf(t.body(), sig, path + "/body", out);
            return;
    }
}

inline void check_wf(const Formula& f, const Signature& sig, const std::string& path, CheckReport& out) {
    if (!out.accepted()) return;
    if (f.kind() == FormulaKind::Relation) {
        auto it = sig.relations.find(f.name());
        if (it == sig.relations.end()) {
            out.fail(path, "unknown-symbol", "unknown symbol '" + f.name() + "'");
            return;
        }
        if (it->second != f.terms().size()) {
            out.fail(path, "arity", "relation '" + f.name() + "' expects " + std::to_string(it->second) +
                                        " argument(s), got " + std::to_string(f.terms().size()));
            return;
        }
    }
    for (std::size_t i = 0; i < f.terms().size(); ++i)
        check_wf(f.terms()[i], sig, path + "/term" + std::to_string(i), out);
    for (std::size_t i = 0; i < f.subs().size(); ++i)
        check_wf(f.subs()[i], sig, path + "/sub" + std::to_string(i), out);
}

}  // namespace detail

/// Accepts iff every symbol is declared and applied at its arity. Reports
/// the first offending subterm.
inline CheckReport well_formed(const Formula& f, const Signature& sig) {
    CheckReport r;
    detail::check_wf(f, sig, "", r);
    return r;
}

inline CheckReport well_formed(const Term& t, const Signature& sig) {
    CheckReport r;
    detail::check_wf(t, sig, "", r);
    return r;
}

// ---------------------------------------------------------------------------
// Sequents: hypothesis sets modulo alpha-equivalence

inline bool contains_alpha(const std::vector<Formula>& set, const Formula& f) {
    for (const auto& g : set)
        if (alpha_eq(g, f)) return true;
    return false;
}

/// Removes alpha-equivalent duplicates, keeping first occurrences.
inline std::vector<Formula> dedup_alpha(const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    for (const auto& f : fs)
        if (!contains_alpha(out, f)) out.push_back(f);
    return out;
}

inline bool same_set_alpha(const std::vector<Formula>& a, const std::vector<Formula>& b) {
    for (const auto& f : a)
        if (!contains_alpha(b, f)) return false;
    for (const auto& f : b)
        if (!contains_alpha(a, f)) return false;
    return true;
}

class Sequent {
public:
    Sequent() = default;
    Sequent(std::vector<Formula> hyps, Formula goal) : hyps_(dedup_alpha(hyps)), goal_(std::move(goal)) {}

    const std::vector<Formula>& hyps() const noexcept { return hyps_; }
    const Formula& goal() const noexcept { return goal_; }

    Sequent with_hyp(const Formula& extra) const {
        auto h = hyps_;
        h.push_back(extra);
        return Sequent(std::move(h), goal_);
    }

    VarSet free_vars() const {
        VarSet out = free_vars_of_all(hyps_);
        out.merge(nal::free_vars(goal_));
        return out;
    }

private:
    std::vector<Formula> hyps_;
    Formula goal_;
};

inline bool alpha_eq(const Sequent& a, const Sequent& b) {
    return same_set_alpha(a.hyps(), b.hyps()) && alpha_eq(a.goal(), b.goal());
}


}  // namespace nal
