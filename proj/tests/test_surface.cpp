#include <gtest/gtest.h>

#include "nal/nal.hpp"

using namespace nal;

namespace {

Signature sig() {
    return Signature{{{"A", 0}, {"B", 0}, {"f", 1}, {"p", 0}},
                     {{"r", 1}, {"s", 0}, {"t", 0}, {"pr", 0}, {"qr", 0}, {"rr", 0}}};
}

Formula F(const std::string& s) { return parse_formula(s, sig()); }
Term A() { return Term::apply("A"); }
Term B() { return Term::apply("B"); }

ParseError parse_error(const std::string& text) {
    try {
        parse_formula(text, sig());
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for: " << text;
    return ParseError("none", "", {}, 0, 0);
}

}  // namespace

TEST(Parse, SaysOverDelegation) {
    EXPECT_TRUE(alpha_eq(F("A() says (B() =>> A())"), Formula::says(A(), Formula::speaksfor(B(), A()))));
}

TEST(Parse, NotBindsTighterThanAnd) {
    Formula s = Formula::relation("s", {});
    EXPECT_TRUE(alpha_eq(F("not s() and s()"), Formula::conj(Formula::negate(s), s)));
}

TEST(Parse, RestrictedDelegation) {
    Formula expected = Formula::speaksfor_on(A(), B(), "x", Formula::relation("r", {Term::variable("x")}));
    EXPECT_TRUE(alpha_eq(F("A() =>> B() on (x : r(x))"), expected));
}

TEST(Parse, ImplicationIsRightAssociative) {
    Formula s = Formula::relation("s", {}), t = Formula::relation("t", {});
    EXPECT_TRUE(alpha_eq(F("s() => t() => s()"), Formula::implies(s, Formula::implies(t, s))));
}

TEST(Parse, SaysIsRightAssociativeAndTighterThanAnd) {
    Formula s = Formula::relation("s", {});
    EXPECT_TRUE(alpha_eq(F("A() says B() says s() and s()"),
                         Formula::conj(Formula::says(A(), Formula::says(B(), s)), s)));
}

TEST(Parse, QuantifierBodyExtendsRight) {
    Formula f = F("forall x. r(x) and s()");
    ASSERT_EQ(f.kind(), FormulaKind::Forall);
    EXPECT_EQ(f.body().kind(), FormulaKind::And);
}

TEST(Parse, SubprincipalAndGroup) {
    Formula f = F("A() =>> A().f(B())");
    ASSERT_EQ(f.kind(), FormulaKind::Speaksfor);
    EXPECT_EQ(f.terms()[1].kind(), TermKind::Subprincipal);
    Formula g = F("{x : r(x)} =>> A()");
    EXPECT_EQ(g.terms()[0].kind(), TermKind::Group);
}

TEST(Parse, EqualityBetweenTerms) {
    Formula f = F("f(x) = A()");
    ASSERT_EQ(f.kind(), FormulaKind::Equals);
    EXPECT_TRUE(alpha_eq(f.terms()[1], A()));
}

TEST(Parse, SyntaxErrorHasPosition) {
    ParseError e = parse_error("s() and\n  and s()");
    EXPECT_EQ(e.tag(), "syntax");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
}

TEST(Parse, UnknownSymbol) {
    ParseError e = parse_error("nothing()");
    EXPECT_EQ(e.tag(), "unknown-symbol");
    EXPECT_EQ(e.column(), 1u);
}

TEST(Parse, ArityMismatch) {
    ParseError e = parse_error("s() or r(A(), B())");
    EXPECT_EQ(e.tag(), "arity");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 8u);
}

TEST(Parse, RelationUsedAsTerm) { EXPECT_EQ(parse_error("A() =>> s()").tag(), "syntax"); }

TEST(Parse, KeywordIsNotAVariable) { EXPECT_EQ(parse_error("r(on)").tag(), "syntax"); }

TEST(Parse, TrailingInput) { EXPECT_EQ(parse_error("s() s()").tag(), "syntax"); }

TEST(Render, SaysTrue) { EXPECT_EQ(render(Formula::says(A(), Formula::truth())), "A() says true"); }

TEST(Render, ConjunctionUnderImplicationNeedsNoParens) {
    Formula f = Formula::implies(Formula::conj(Formula::relation("pr", {}), Formula::relation("qr", {})),
                                 Formula::relation("rr", {}));
    EXPECT_EQ(render(f), "pr() and qr() => rr()");
}

TEST(Render, GroupInsideDelegation) {
    Formula f = Formula::speaksfor(Term::group("x", Formula::relation("r", {Term::variable("x")})), A());
    EXPECT_EQ(render(f), "{x : r(x)} =>> A()");
}

TEST(Render, KeepsNecessaryParens) {
    EXPECT_EQ(render(F("(s() => t()) => s()")), "(s() => t()) => s()");
    EXPECT_EQ(render(F("A() says (s() and t())")), "A() says (s() and t())");
    EXPECT_EQ(render(F("not (s() or t())")), "not (s() or t())");
    EXPECT_EQ(render(F("(forall x. r(x)) and s()")), "(forall x. r(x)) and s()");
}

TEST(Render, Sequent) {
    Sequent s({F("s()"), F("t()")}, F("s() and t()"));
    EXPECT_EQ(render(s), "s(), t() |- s() and t()");
}

TEST(RoundTrip, RandomFormulas) {
    Signature s = sig();
    SyntaxGenerator gen(s, {}, 3);
    for (int i = 0; i < 300; ++i) {
        Formula f = gen.formula();
        std::string text = render(f);
        Formula back = parse_formula(text, s);
        EXPECT_TRUE(alpha_eq(back, f)) << text;
        EXPECT_EQ(render(back), text);
    }
}
