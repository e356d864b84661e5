#include <gtest/gtest.h>

#include "nal/nal.hpp"

using namespace nal;

namespace {

const Signature kSig = corpus::signature();

Formula F(const std::string& s) { return parse_formula(s, kSig); }
Term T(const std::string& s) { return parse_term(s, kSig); }

Derivation node(RuleId r, std::vector<std::string> hyps, const std::string& goal, std::vector<Derivation> ps = {},
                RuleParams params = {}) {
    std::vector<Formula> h;
    for (const auto& s : hyps) h.push_back(F(s));
    return Derivation{r, Sequent(h, F(goal)), std::move(ps), std::move(params)};
}

Derivation hyp(std::vector<std::string> hyps, const std::string& goal) { return node(RuleId::Hyp, hyps, goal); }

}  // namespace

TEST(RuleNames, RoundTripAndCount) {
    ASSERT_EQ(all_rules().size(), 37u);
    for (RuleId r : all_rules()) EXPECT_EQ(rule_from_name(rule_name(r)), r);
    EXPECT_FALSE(rule_from_name("UNIT").has_value());
}

TEST(LiftSaysContext, Examples) {
    Term p = T("p()");
    EXPECT_TRUE(same_set_alpha(lift_says_context(p, {F("r()"), F("s()")}), {F("p() says r()"), F("p() says s()")}));
    EXPECT_TRUE(lift_says_context(p, {}).empty());
    EXPECT_TRUE(same_set_alpha(lift_says_context(p, {F("p() says r()")}), {F("p() says p() says r()")}));
}

TEST(RuleApplication, HypAccepts) { EXPECT_TRUE(check_rule_application(hyp({"r()"}, "r()")).accepted()); }

TEST(RuleApplication, SaysLiftRejectsUnliftedContext) {
    auto r = check_rule_application(node(RuleId::SaysLift, {"r()"}, "p() says r()", {hyp({"r()"}, "r()")}));
    ASSERT_FALSE(r.accepted());
    EXPECT_EQ(r.failures()[0].tag, "context-mismatch");
    EXPECT_NE(r.failures()[0].reason.find("SAYS-LIFT context mismatch"), std::string::npos);
}

TEST(RuleApplication, SaysLiftAcceptsLiftedContext) {
    EXPECT_TRUE(check_rule_application(node(RuleId::SaysLift, {"p() says r()"}, "p() says r()", {hyp({"r()"}, "r()")}))
                    .accepted());
}

TEST(RuleApplication, SaysLiftChecksDeclaredPrincipal) {
    RuleParams params;
    params.principal = T("A()");
    auto r = check_rule_application(
        node(RuleId::SaysLift, {"p() says r()"}, "p() says r()", {hyp({"r()"}, "r()")}, params));
    EXPECT_TRUE(r.has_tag("witness-mismatch"));
}

TEST(RuleApplication, SaysIdemNeedsSaysContext) {
    auto r = check_rule_application(node(RuleId::SaysIdem, {"r()"}, "A() says r()", {hyp({"r()"}, "r()")}));
    EXPECT_TRUE(r.has_tag("context-mismatch"));
}

TEST(RuleApplication, PremiseCount) {
    auto r = check_rule_application(node(RuleId::AndI, {"r()"}, "r() and r()", {hyp({"r()"}, "r()")}));
    EXPECT_TRUE(r.has_tag("premise-count"));
}

TEST(RuleApplication, ForallIntroEigenvariable) {
    RuleParams params;
    params.var = "x";
    auto bad = node(RuleId::ForallI, {"q(x)"}, "forall x. q(x)", {hyp({"q(x)"}, "q(x)")}, params);
    EXPECT_TRUE(check_rule_application(bad).has_tag("side-condition"));
}

TEST(RuleApplication, ExistsElimEigenvariableMayNotEscape) {
    RuleParams params;
    params.var = "z";
    std::vector<std::string> g{"exists x. q(x)"}, gz{"exists x. q(x)", "q(z)"};
    auto bad = node(RuleId::ExistsE, g, "q(z)", {hyp(g, "exists x. q(x)"), hyp(gz, "q(z)")}, params);
    EXPECT_TRUE(check_rule_application(bad).has_tag("side-condition"));
}

TEST(RuleApplication, GroupElimPremiseContextAddsMember) {
    RuleParams params;
    params.var = "y";
    auto d = node(RuleId::GroupE, {"s()"}, "{x : q(x)} =>> A()", {hyp({"s()"}, "y =>> A()")}, params);
    EXPECT_TRUE(check_rule_application(d).has_tag("context-mismatch"));
}

TEST(RuleApplication, GroupElimStrictMode) {
    RuleParams params;
    params.var = "y";
    // y is free in the context {q(y)}; the opened member q(y) is already there.
    auto d = node(RuleId::GroupE, {"q(y)"}, "{x : q(x)} =>> A()", {hyp({"q(y)"}, "y =>> A()")}, params);
    EXPECT_TRUE(check_rule_application(d).accepted());
    KernelOptions strict;
    strict.strict_group_elim = true;
    EXPECT_TRUE(check_rule_application(d, strict).has_tag("side-condition"));
}

TEST(RuleApplication, GroupElimTauMustNotMentionEigenvariable) {
    auto d = node(RuleId::GroupE, {}, "{x : q(x)} =>> x", {hyp({"q(x)"}, "x =>> x")});
    EXPECT_TRUE(check_rule_application(d).has_tag("side-condition"));
}

TEST(Derivation, TwoNodeImplication) {
    Derivation d = node(RuleId::ImpI, {}, "r() => r()", {hyp({"r()"}, "r()")});
    EXPECT_TRUE(check_derivation(d, kSig).accepted());
}

TEST(Derivation, SubprincipalAxiomUnderAnyContext) {
    EXPECT_TRUE(check_derivation(node(RuleId::Subprin, {}, "A() =>> A().B()"), kSig).accepted());
    EXPECT_TRUE(check_derivation(node(RuleId::Subprin, {"s()", "q(C())"}, "A() =>> A().B()"), kSig).accepted());
}

TEST(Derivation, Handoff) {
    std::string h = "B() says (A() =>> B())";
    EXPECT_TRUE(check_derivation(node(RuleId::Handoff, {h}, "A() =>> B()", {hyp({h}, h)}), kSig).accepted());
}

TEST(Derivation, FailurePathsNameTheNode) {
    auto r = check_derivation(corpus::unit_fixture(), kSig);
    ASSERT_EQ(r.failures().size(), 1u);
    EXPECT_EQ(r.failures()[0].path, "root/0");
    EXPECT_EQ(r.failures()[0].tag, "context-mismatch");
}

TEST(Derivation, IllFormedFormulaIsRejected) {
    Derivation d{RuleId::Hyp, Sequent({Formula::relation("zz", {})}, Formula::relation("zz", {})), {}, {}};
    EXPECT_TRUE(check_derivation(d, kSig).has_tag("unknown-symbol"));
}

TEST(Corpus, GoldensAccepted) {
    auto gs = corpus::goldens();
    ASSERT_EQ(gs.size(), 37u);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        EXPECT_EQ(gs[i].derivation.rule, static_cast<RuleId>(i));
        auto r = check_derivation(gs[i].derivation, kSig);
        EXPECT_TRUE(r.accepted()) << gs[i].name << '\n' << r;
    }
}

TEST(Corpus, MutantsRejected) {
    for (const auto& m : corpus::mutants()) EXPECT_FALSE(check_derivation(m.derivation, kSig).accepted()) << m.name;
}

TEST(Corpus, NecessitationAccepted) {
    EXPECT_TRUE(check_derivation(corpus::necessitation_fixture(), kSig).accepted());
}

// Relabelling a golden's root with any other rule must be rejected: no two
// rules license the same root step on these derivations.
TEST(Corpus, RuleSwapRejected) {
    for (const auto& g : corpus::goldens())
        for (RuleId r : all_rules()) {
            if (r == g.derivation.rule) continue;
            Derivation d = g.derivation;
            d.rule = r;
            EXPECT_FALSE(check_rule_application(d).accepted()) << g.name << " as " << rule_name(r);
        }
}

TEST(Corpus, StoredProofsMatchBuiltCorpus) {
    for (const auto& g : corpus::goldens()) {
        auto d = load_derivation(std::string(NAL_CORPUS_DIR) + "/proofs/" + g.name + ".json", kSig);
        EXPECT_EQ(derivation_to_json(d), derivation_to_json(g.derivation)) << g.name;
        EXPECT_TRUE(check_derivation(d, kSig).accepted()) << g.name;
    }
}

TEST(Json, DerivationRoundTrip) {
    for (const auto& g : corpus::goldens()) {
        json j = derivation_to_json(g.derivation);
        EXPECT_EQ(derivation_to_json(derivation_from_json(j, kSig)), j) << g.name;
    }
}

TEST(Json, MalformedDerivation) {
    EXPECT_THROW(derivation_from_json(json{{"rule", "NOPE"}, {"conclusion", {{"goal", "r()"}}}}, kSig), FormatError);
    EXPECT_THROW(derivation_from_json(json{{"rule", "HYP"}, {"conclusion", {{"goal", "r("}}}}, kSig), FormatError);
    EXPECT_THROW(derivation_from_json(json::array(), kSig), FormatError);
}
