#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nal/ast.hpp"
#include "nal/model.hpp"

namespace nal {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All total assignments of `vars` into `domain`, layered over `base`.
inline std::vector<Valuation> enumerate_valuations(const std::set<Individual>& domain, const VarSet& vars,
                                                   const Valuation& base = {}) {
    std::vector<Valuation> out{base};
    for (const auto& x : vars) {
        std::vector<Valuation> next;
        for (const auto& v : out)
            for (Individual d : domain) {
                auto u = v;
                u[x] = d;
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

/// Interpretation of terms and the validity judgment over one validated
/// model. Says and delegation index accessibility through pi_w of the
/// interpreted principal term.
class Evaluator {
public:
    explicit Evaluator(const NalModel& m) : m_(m) {}
    virtual ~Evaluator() = default;

    const NalModel& model() const noexcept { return m_; }

    Individual interpret(WorldId w, const Valuation& v, const Term& t) const {
        const auto& s = m_.at(w);
        switch (t.kind()) {
            case TermKind::Variable: {
                auto it = v.find(t.name());
                if (it == v.end()) throw EvalError("unbound variable '" + t.name() + "'");
                if (!s.has(it->second))
                    throw EvalError("variable '" + t.name() + "' is assigned outside the domain of world " +
                                    m_.world_names[w]);
                return it->second;
            }
            case TermKind::Application: {
                Tuple args;
                args.reserve(t.args().size());
                for (const auto& a : t.args()) args.push_back(interpret(w, v, a));
                auto ft = s.functions.find(t.name());
                if (ft == s.functions.end()) throw EvalError("function '" + t.name() + "' has no table");
                auto it = ft->second.find(args);
                if (it == ft->second.end())
                    throw EvalError("argument outside the table of function '" + t.name() + "'");
                return it->second;
            }
            case TermKind::Subprincipal: {
                Principal parent = principal_of(w, interpret(w, v, t.args()[0]));
                Individual child = interpret(w, v, t.args()[1]);
                auto it = s.sub.find({parent, child});
                if (it == s.sub.end()) throw EvalError("sub is undefined");
                return delta(w, it->second);
            }
            case TermKind::Group: {
                std::vector<Principal> members;
                for (Principal p = 0; p < m_.principal_count(); ++p) {
                    Valuation u = v;
                    u[t.name()] = delta(w, p);
                    if (holds(w, u, t.body())) members.push_back(p);
                }
                return delta(w, join_all(m_, members));
            }
        }
        throw EvalError("bad term");
    }

    Principal principal_of(WorldId w, Individual d) const {
        const auto& pi = m_.at(w).pi;
        auto it = pi.find(d);
        if (it == pi.end()) throw EvalError("pi is undefined for an individual");
        return it->second;
    }

    bool holds(WorldId w, const Valuation& v, const Formula& f) const {
        const auto& s = m_.at(w);
        switch (f.kind()) {
            case FormulaKind::True: return true;
            case FormulaKind::False: return false;
            case FormulaKind::Relation: {
                Tuple args;
                for (const auto& a : f.terms()) args.push_back(interpret(w, v, a));
                auto it = s.relations.find(f.name());
                return it != s.relations.end() && it->second.count(args);
            }
            case FormulaKind::Equals:
                return s.equal(interpret(w, v, f.terms()[0]), interpret(w, v, f.terms()[1]));
            case FormulaKind::And: return holds(w, v, f.left()) && holds(w, v, f.right());
            case FormulaKind::Or: return holds(w, v, f.left()) || holds(w, v, f.right());
            case FormulaKind::Implies:
                for (WorldId u : m_.successors(w))
                    if (holds(u, v, f.left()) && !holds(u, v, f.right())) return false;
                return true;
            case FormulaKind::Not:
                for (WorldId u : m_.successors(w))
                    if (holds(u, v, f.body())) return false;
                return true;
            case FormulaKind::Forall:
                for (WorldId u : m_.successors(w))
                    for (Individual d : m_.at(u).domain) {
                        Valuation x = v;
                        x[f.name()] = d;
                        if (!holds(u, x, f.body())) return false;
                    }
                return true;
            case FormulaKind::Exists:
                for (Individual d : s.domain) {
                    Valuation x = v;
                    x[f.name()] = d;
                    if (holds(w, x, f.body())) return true;
                }
                return false;
            case FormulaKind::Says: return holds_says(w, v, f);
            case FormulaKind::Speaksfor: {
                const auto& a1 = access_of(w, v, f.terms()[0]);
                const auto& a2 = access_of(w, v, f.terms()[1]);
                return a2.subset_of(a1);
            }
            case FormulaKind::SpeaksforRestricted: {
                const auto& a1 = access_of(w, v, f.terms()[0]);
                const auto& a2 = access_of(w, v, f.terms()[1]);
                for (auto [w1, w2] : a2.pairs()) {
                    bool found = false;
                    for (WorldId w3 = 0; w3 < m_.world_count() && !found; ++w3)
                        found = a1.contains(w1, w3) && equiv_worlds(w1, f.name(), f.body(), w2, w3);
                    if (!found) return false;
                }
                return true;
            }
        }
        return false;
    }

    /// w1 and w2 agree, for every d in D_base, on whether phi holds under all
    /// assignments of its other free variables into D_base.
    bool equiv_worlds(WorldId base, const std::string& x, const Formula& phi, WorldId w1, WorldId w2) const {
        if (w1 == w2) return true;
        VarSet others = free_vars(phi);
        others.erase(x);
        const auto& domain = m_.at(base).domain;
        for (Individual d : domain) {
            Valuation seed{{x, d}};
            auto all_hold = [&](WorldId u) {
                for (const auto& v : enumerate_valuations(domain, others, seed))
                    if (!holds(u, v, phi)) return false;
                return true;
            };
            if (all_hold(w1) != all_hold(w2)) return false;
        }
        return true;
    }

    bool entails_at(WorldId w, const Valuation& v, const Sequent& s) const {
        for (const auto& h : s.hyps())
            if (!holds(w, v, h)) return true;
        return holds(w, v, s.goal());
    }

protected:
    virtual bool holds_says(WorldId w, const Valuation& v, const Formula& f) const {
        const auto& a = access_of(w, v, f.terms()[0]);
        for (WorldId u : m_.successors(w))
            for (WorldId target = 0; target < m_.world_count(); ++target)
                if (a.contains(u, target) && !holds(target, v, f.body())) return false;
        return true;
    }

    const WorldRelation& access_of(WorldId w, const Valuation& v, const Term& t) const {
        return m_.access.at(principal_of(w, interpret(w, v, t)));
    }

    Individual delta(WorldId w, Principal p) const {
        const auto& d = m_.at(w).delta;
        auto it = d.find(p);
        if (it == d.end()) throw EvalError("delta is undefined for principal " + m_.principal_names.at(p));
        return it->second;
    }

private:
    const NalModel& m_;
};

/// M, w, v.
struct EvalPoint {
    const NalModel* model = nullptr;
    WorldId world = 0;
    Valuation valuation;
};

inline Individual interpret_term(const EvalPoint& pt, const Term& t) {
    return Evaluator(*pt.model).interpret(pt.world, pt.valuation, t);
}

inline bool holds(const EvalPoint& pt, const Formula& f) {
    return Evaluator(*pt.model).holds(pt.world, pt.valuation, f);
}

inline bool equiv_worlds(const NalModel& m, WorldId base, const std::string& x, const Formula& phi, WorldId w1,
                         WorldId w2) {
    return Evaluator(m).equiv_worlds(base, x, phi, w1, w2);
}

inline bool entails_at(const EvalPoint& pt, const Sequent& s) {
    return Evaluator(*pt.model).entails_at(pt.world, pt.valuation, s);
}

/// First point (world, valuation over the sequent's free variables) where
/// the sequent fails, if any.
inline std::optional<EvalPoint> falsifying_point(const Evaluator& ev, const Sequent& s) {
    const auto& m = ev.model();
    VarSet fv = s.free_vars();
    for (WorldId w = 0; w < m.world_count(); ++w)
        for (const auto& v : enumerate_valuations(m.at(w).domain, fv))
            if (!ev.entails_at(w, v, s)) return EvalPoint{&m, w, v};
    return std::nullopt;
}

inline bool valid_everywhere(const NalModel& m, const Sequent& s) {
    return !falsifying_point(Evaluator(m), s).has_value();
}

}  // namespace nal
