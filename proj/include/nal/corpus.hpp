#pragma once

// Reference derivations, single-mutation variants and seeded bad models over
// a small fixed signature.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nal/harness.hpp"
#include "nal/kernel.hpp"
#include "nal/model.hpp"
#include "nal/surface.hpp"

namespace nal::corpus {

/// Constants A, B, C, p; unary f; propositions r, s; unary q.
inline Signature signature() {
    return Signature{{{"A", 0}, {"B", 0}, {"C", 0}, {"p", 0}, {"f", 1}}, {{"r", 0}, {"s", 0}, {"q", 1}}};
}

namespace detail {

struct Builder {
    Signature sig = signature();

    Formula F(const std::string& s) const { return parse_formula(s, sig); }
    Term T(const std::string& s) const { return parse_term(s, sig); }

    std::vector<Formula> ctx(const std::vector<std::string>& hs) const {
        std::vector<Formula> out;
        for (const auto& h : hs) out.push_back(F(h));
        return out;
    }

    Derivation node(RuleId rule, const std::vector<std::string>& hyps, const std::string& goal,
                    std::vector<Derivation> premises = {}, RuleParams params = {}) const {
        return Derivation{rule, Sequent(ctx(hyps), F(goal)), std::move(premises), std::move(params)};
    }

    Derivation hyp(const std::vector<std::string>& hyps, const std::string& goal) const {
        return node(RuleId::Hyp, hyps, goal);
    }

    RuleParams witness(const std::string& t) const {
        RuleParams p;
        p.witness = T(t);
        return p;
    }
};

}  // namespace detail

/// One accepted derivation per rule, in rule order.
inline std::vector<NamedDerivation> goldens() {
    detail::Builder b;
    using R = RuleId;
    std::vector<NamedDerivation> out;
    auto add = [&](Derivation d) {
        std::string name(rule_name(d.rule));
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back({name, std::move(d)});
    };

    add(b.hyp({"r()"}, "r()"));
    {
        RuleParams p;
        p.formula = b.F("s()");
        add(b.node(R::Weaken, {"r()", "s()"}, "r()", {b.hyp({"r()"}, "r()")}, p));
    }
    add(b.node(R::TrueI, {}, "true"));
    add(b.node(R::FalseE, {"false"}, "r()", {b.hyp({"false"}, "false")}));
    add(b.node(R::AndI, {"r()", "s()"}, "r() and s()", {b.hyp({"r()", "s()"}, "r()"), b.hyp({"r()", "s()"}, "s()")}));
    add(b.node(R::AndE1, {"r() and s()"}, "r()", {b.hyp({"r() and s()"}, "r() and s()")}));
    add(b.node(R::AndE2, {"r() and s()"}, "s()", {b.hyp({"r() and s()"}, "r() and s()")}));
    add(b.node(R::OrI1, {"r()"}, "r() or s()", {b.hyp({"r()"}, "r()")}));
    add(b.node(R::OrI2, {"s()"}, "r() or s()", {b.hyp({"s()"}, "s()")}));
    {
        std::vector<std::string> g{"r() or s()"};
        std::vector<std::string> gl{"r() or s()", "r()"}, gr{"r() or s()", "s()"};
        add(b.node(R::OrE, g, "s() or r()",
                   {b.hyp(g, "r() or s()"), b.node(R::OrI2, gl, "s() or r()", {b.hyp(gl, "r()")}),
                    b.node(R::OrI1, gr, "s() or r()", {b.hyp(gr, "s()")})}));
    }
    add(b.node(R::ImpI, {}, "r() => r()", {b.hyp({"r()"}, "r()")}));
    add(b.node(R::ImpE, {"r()", "r() => s()"}, "s()",
               {b.hyp({"r()", "r() => s()"}, "r()"), b.hyp({"r()", "r() => s()"}, "r() => s()")}));
    {
        std::vector<std::string> g{"not r()", "r() and s()"};
        add(b.node(R::NotI, {"not r()"}, "not (r() and s())",
                   {b.node(R::NotE, g, "false",
                           {b.node(R::AndE1, g, "r()", {b.hyp(g, "r() and s()")}), b.hyp(g, "not r()")})}));
    }
    add(b.node(R::NotE, {"r()", "not r()"}, "false",
               {b.hyp({"r()", "not r()"}, "r()"), b.hyp({"r()", "not r()"}, "not r()")}));
    {
        RuleParams p;
        p.var = "x";
        add(b.node(R::ForallI, {"r()"}, "forall x. (q(x) => q(x))",
                   {b.node(R::ImpI, {"r()"}, "q(x) => q(x)", {b.hyp({"r()", "q(x)"}, "q(x)")})}, p));
    }
    add(b.node(R::ForallE, {"forall x. q(x)"}, "q(f(A()))", {b.hyp({"forall x. q(x)"}, "forall x. q(x)")},
               b.witness("f(A())")));
    add(b.node(R::ExistsI, {"q(A())"}, "exists x. q(x)", {b.hyp({"q(A())"}, "q(A())")}, b.witness("A()")));
    {
        RuleParams p;
        p.var = "z";
        std::vector<std::string> g{"exists x. q(x)"}, gz{"exists x. q(x)", "q(z)"};
        add(b.node(R::ExistsE, g, "exists y. q(y)",
                   {b.hyp(g, "exists x. q(x)"),
                    b.node(R::ExistsI, gz, "exists y. q(y)", {b.hyp(gz, "q(z)")}, b.witness("z"))},
                   p));
    }
    add(b.node(R::SaysLift, {"A() says r()"}, "A() says (r() or s())",
               {b.node(R::OrI1, {"r()"}, "r() or s()", {b.hyp({"r()"}, "r()")})}));
    add(b.node(R::SaysIdem, {"A() says r()"}, "A() says A() says r()", {b.hyp({"A() says r()"}, "A() says r()")}));
    add(b.node(R::SaysPush, {"A() says A() says r()"}, "A() says r()", {b.hyp({"A() says r()"}, "A() says r()")}));
    add(b.node(R::EqRefl, {}, "f(A()) = f(A())"));
    add(b.node(R::EqSym, {"A() = B()"}, "B() = A()", {b.hyp({"A() = B()"}, "A() = B()")}));
    {
        std::vector<std::string> g{"A() = B()", "B() = C()"};
        add(b.node(R::EqTrans, g, "A() = C()", {b.hyp(g, "A() = B()"), b.hyp(g, "B() = C()")}));
    }
    {
        RuleParams p;
        p.symbol = "f";
        p.lhs = {b.T("A()")};
        p.rhs = {b.T("B()")};
        add(b.node(R::EqFunCong, {"A() = B()"}, "f(A()) = f(B())", {b.hyp({"A() = B()"}, "A() = B()")}, p));
    }
    {
        RuleParams p;
        p.symbol = "q";
        p.lhs = {b.T("A()")};
        p.rhs = {b.T("B()")};
        std::vector<std::string> g{"q(A())", "A() = B()"};
        add(b.node(R::EqRelCong, g, "q(B())", {b.hyp(g, "q(A())"), b.hyp(g, "A() = B()")}, p));
    }
    add(b.node(R::Handoff, {"B() says (A() =>> B())"}, "A() =>> B()",
               {b.hyp({"B() says (A() =>> B())"}, "B() says (A() =>> B())")}));
    {
        std::string h = "B() says (A() =>> B() on (x : q(x)))";
        add(b.node(R::HandoffR, {h}, "A() =>> B() on (x : q(x))", {b.hyp({h}, h)}));
    }
    {
        std::vector<std::string> g{"A() =>> B()", "A() says r()"};
        add(b.node(R::SfApp, g, "B() says r()", {b.hyp(g, "A() =>> B()"), b.hyp(g, "A() says r()")}));
    }
    {
        std::vector<std::string> g{"A() =>> B() on (x : q(x))", "A() says q(C())"};
        add(b.node(R::SfrApp, g, "B() says q(C())", {b.hyp(g, g[0]), b.hyp(g, g[1])}, b.witness("C()")));
    }
    add(b.node(R::SfRefl, {"r()"}, "A() =>> A()"));
    add(b.node(R::SfrRefl, {"r()"}, "A() =>> A() on (x : q(x))"));
    {
        std::vector<std::string> g{"A() =>> B()", "B() =>> C()"};
        add(b.node(R::SfTrans, g, "A() =>> C()", {b.hyp(g, g[0]), b.hyp(g, g[1])}));
    }
    {
        std::vector<std::string> g{"A() =>> B() on (x : q(x))", "B() =>> C() on (y : q(y))"};
        add(b.node(R::SfrTrans, g, "A() =>> C() on (x : q(x))", {b.hyp(g, g[0]), b.hyp(g, g[1])}));
    }
    add(b.node(R::GroupI, {"q(A())"}, "A() =>> {x : q(x)}", {b.hyp({"q(A())"}, "q(A())")}, b.witness("A()")));
    {
        RuleParams p;
        p.var = "y";
        add(b.node(R::GroupE, {"r()"}, "{x : x =>> A()} =>> A()", {b.hyp({"r()", "y =>> A()"}, "y =>> A()")}, p));
    }
    add(b.node(R::Subprin, {"r()"}, "A() =>> A().B()"));
    return out;
}

/// Derives r() => p() says r() by lifting under a non-empty context; the
/// says step must be rejected.
inline Derivation unit_fixture() {
    detail::Builder b;
    return b.node(RuleId::ImpI, {}, "r() => p() says r()",
                  {b.node(RuleId::SaysLift, {"r()"}, "p() says r()", {b.hyp({"r()"}, "r()")})});
}

/// Necessitation: a theorem lifted under the empty context.
inline Derivation necessitation_fixture() {
    detail::Builder b;
    return b.node(RuleId::SaysLift, {}, "p() says (r() => r())",
                  {b.node(RuleId::ImpI, {}, "r() => r()", {b.hyp({"r()"}, "r()")})});
}

/// One single-point mutation of each golden. Rules with a witness get a
/// wrong witness; FALSE-E (whose goal is arbitrary) gets an extra root
/// hypothesis; the rest get a replaced root goal.
inline std::vector<NamedDerivation> mutants() {
    detail::Builder b;
    std::vector<NamedDerivation> out;
    for (auto g : goldens()) {
        Derivation& d = g.derivation;
        switch (d.rule) {
            case RuleId::ForallE: d.params.witness = b.T("A()"); break;
            case RuleId::ExistsI: d.params.witness = b.T("B()"); break;
            case RuleId::SfrApp: d.params.witness = b.T("B()"); break;
            case RuleId::GroupI: d.params.witness = b.T("B()"); break;
            case RuleId::FalseE: {
                auto hyps = d.conclusion.hyps();
                hyps.push_back(b.F("s()"));
                d.conclusion = Sequent(hyps, d.conclusion.goal());
                break;
            }
            default: d.conclusion = Sequent(d.conclusion.hyps(), b.F("r() and not s()")); break;
        }
        out.push_back({g.name + "-mutant", std::move(d)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Small explicit models

struct SimpleModelSpec {
    std::size_t worlds = 1;
    std::vector<std::pair<WorldId, WorldId>> leq;  // strict pairs; closed reflexively and transitively
    std::size_t principals = 1;                    // chain bot < p1 < ...
    std::map<Principal, std::vector<std::pair<WorldId, WorldId>>> access;
    std::vector<WorldId> r_true;  // worlds where r() holds
};

/// Domain is the principal individuals at every world with identity
/// equality; every function is constantly delta(bot) and sub(p, d) = p.
inline NalModel simple_model(const SimpleModelSpec& spec) {
    NalModel m;
    m.signature = signature();
    std::size_t n = spec.worlds, k = spec.principals;
    for (std::size_t i = 0; i < n; ++i) m.world_names.push_back("w" + std::to_string(i));
    for (std::size_t i = 0; i < k; ++i) {
        m.principal_names.push_back(i == 0 ? "bot" : "p" + std::to_string(i));
        m.individual_names.push_back("d_" + m.principal_names.back());
    }
    m.leq = WorldRelation(n);
    for (auto [a, b] : spec.leq) m.leq.insert(a, b);
    m.leq = reflexive_transitive_closure(m.leq);
    m.bottom = 0;
    m.join.assign(k, std::vector<Principal>(k));
    for (Principal p = 0; p < k; ++p)
        for (Principal q = 0; q < k; ++q) m.join[p][q] = std::max(p, q);
    m.access.assign(k, WorldRelation(n));
    for (const auto& [p, pairs] : spec.access)
        for (auto [a, b] : pairs) m.access.at(p).insert(a, b);
    m.structures.assign(n, {});
    for (WorldId w = 0; w < n; ++w) {
        auto& s = m.structures[w];
        for (Individual d = 0; d < k; ++d) {
            s.domain.insert(d);
            s.eq_class[d] = d;
            s.pi[d] = d;
        }
        for (Principal p = 0; p < k; ++p) {
            s.delta[p] = p;
            for (Individual d = 0; d < k; ++d) s.sub[{p, d}] = p;
        }
        for (const auto& [f, arity] : m.signature.functions)
            for (const auto& t : tuples_over(s.domain, arity)) s.functions[f][t] = 0;
        for (const auto& [r, _] : m.signature.relations) s.relations[r];
    }
    for (WorldId w : spec.r_true) m.structures.at(w).relations["r"].insert(Tuple{});
    return m;
}

struct BadModel {
    std::string name;
    /// The failure tag the validator must report.
    std::string tag;
    NalModel model;
};

/// One model per violated condition.
inline std::vector<BadModel> bad_models() {
    std::vector<BadModel> out;
    // w0 <= w1; (w0, w2) has no counterpart from w1.
    out.push_back({"f1", "F1", simple_model({3, {{0, 1}}, 1, {{0, {{0, 2}, {2, 2}}}}, {}})});
    // w1 <= w2; nothing above w0 reaches w2.
    out.push_back({"f2", "F2", simple_model({3, {{1, 2}}, 1, {{0, {{0, 1}, {1, 1}, {2, 2}}}}, {}})});
    // (w0, w1), (w1, w2) but w0 never reaches w2.
    out.push_back({"it", "IT", simple_model({3, {}, 1, {{0, {{0, 0}, {0, 1}, {1, 2}, {2, 2}}}}, {}})});
    // (w0, w1) with no two-step path into w1.
    out.push_back({"id", "ID", simple_model({2, {}, 1, {{0, {{0, 1}}}}, {}})});
    out.push_back({"leq-monotonicity", "leq-monotonicity", simple_model({2, {{0, 1}}, 1, {}, {0}})});
    out.push_back(
        {"access-monotonicity", "access-monotonicity", simple_model({2, {}, 1, {{0, {{0, 1}, {1, 1}}}}, {0}})});
    {
        NalModel m = simple_model({1, {}, 2, {}, {}});
        m.join[1][1] = 0;
        out.push_back({"semilattice", "semilattice", std::move(m)});
    }
    out.push_back({"join-access", "join-access", simple_model({1, {}, 2, {{1, {{0, 0}}}}, {}})});
    {
        NalModel m = simple_model({1, {}, 2, {{0, {{0, 0}}}}, {}});
        m.structures[0].sub[{1, 0}] = 0;
        m.structures[0].sub[{1, 1}] = 0;
        out.push_back({"sub-containment", "sub-containment", std::move(m)});
    }
    {
        NalModel m = simple_model({1, {}, 2, {}, {}});
        m.structures[0].delta[1] = 0;
        m.structures[0].pi[1] = 0;
        out.push_back({"delta-injective", "delta-injective", std::move(m)});
    }
    return out;
}

/// Three worlds, w0 <= w1, r() only at w2, A_bot = {(w1,w2),(w2,w2)}; every
/// constant (including p) denotes bot.
inline NalModel unit_countermodel() { return simple_model({3, {{0, 1}}, 1, {{0, {{1, 2}, {2, 2}}}}, {2}}); }

}  // namespace nal::corpus
