#include <gtest/gtest.h>

#include <random>

#include "nal/nal.hpp"

using namespace nal;
using corpus::simple_model;

namespace {

const Signature kSig = corpus::signature();

Formula F(const std::string& s) { return parse_formula(s, kSig); }
Term T(const std::string& s) { return parse_term(s, kSig); }

std::vector<NalModel> generated(std::uint64_t seed, std::size_t count) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.signature = kSig;
    cfg.sample_count = count;
    return generate_models(cfg);
}

// Builds a random propositional formula over r() and s() and, alongside,
// its classical truth value under the given assignment.
Formula propositional(std::mt19937_64& rng, int depth, bool r, bool s, bool& value) {
    unsigned pick = depth == 0 ? rng() % 4 : rng() % 8;
    bool a = false, b = false;
    switch (pick) {
        case 0: value = true; return Formula::truth();
        case 1: value = false; return Formula::falsity();
        case 2: value = r; return F("r()");
        case 3: value = s; return F("s()");
        case 4: {
            Formula x = propositional(rng, depth - 1, r, s, a);
            value = !a;
            return Formula::negate(x);
        }
        default: {
            Formula x = propositional(rng, depth - 1, r, s, a);
            Formula y = propositional(rng, depth - 1, r, s, b);
            if (pick == 5) { value = a && b; return Formula::conj(x, y); }
            if (pick == 6) { value = a || b; return Formula::disj(x, y); }
            value = !a || b;
            return Formula::implies(x, y);
        }
    }
}

}  // namespace

TEST(Holds, TrueEverywhere) {
    for (const auto& m : generated(1, 10))
        for (WorldId w = 0; w < m.world_count(); ++w) EXPECT_TRUE(holds(EvalPoint{&m, w, {}}, Formula::truth()));
}

TEST(Holds, SaysFalseWithEmptyAccess) {
    NalModel m = simple_model({2, {{0, 1}}, 2, {}, {}});
    for (WorldId w = 0; w < 2; ++w) EXPECT_TRUE(holds(EvalPoint{&m, w, {}}, F("p() says false")));
}

TEST(Holds, UnitCountermodel) {
    NalModel m = corpus::unit_countermodel();
    ASSERT_TRUE(validate_model(m).accepted()) << validate_model(m);
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("not r() => p() says not r()")));
    EXPECT_TRUE(holds(EvalPoint{&m, 2, {}}, F("not r() => p() says not r()")));
}

TEST(Holds, ImplicationLooksAtLaterWorlds) {
    NalModel m = simple_model({2, {{0, 1}}, 1, {}, {1}});
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("r()")));
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("not r()")));
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("r() or not r()")));
    EXPECT_TRUE(holds(EvalPoint{&m, 0, {}}, F("not not r()")));
}

TEST(Holds, SpeaksforIsAccessContainment) {
    NalModel m = simple_model({1, {}, 2, {{0, {{0, 0}}}}, {}});
    auto& s = m.structures[0];
    for (auto& [args, val] : s.functions["B"]) val = 1;
    ASSERT_TRUE(validate_model(m).accepted()) << validate_model(m);
    EXPECT_TRUE(holds(EvalPoint{&m, 0, {}}, F("A() =>> B()")));
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("B() =>> A()")));
    EXPECT_TRUE(holds(EvalPoint{&m, 0, {}}, F("B() says false")));
    EXPECT_FALSE(holds(EvalPoint{&m, 0, {}}, F("A() says false")));
}

TEST(Holds, UnboundVariableIsAnError) {
    NalModel m = simple_model({});
    EXPECT_THROW(holds(EvalPoint{&m, 0, {}}, F("q(x)")), EvalError);
}

TEST(Interpret, GroupsFoldByJoin) {
    NalModel m = simple_model({1, {}, 3, {}, {}});
    EXPECT_EQ(interpret_term(EvalPoint{&m, 0, {}}, T("{x : false}")), m.at(0).delta.at(m.bottom));
    EXPECT_EQ(interpret_term(EvalPoint{&m, 0, {}}, T("{x : true}")), m.at(0).delta.at(join_all(m, {0, 1, 2})));
}

TEST(EquivWorlds, Examples) {
    NalModel m = simple_model({2, {}, 1, {}, {}});
    m.structures[1].relations["q"].insert({0});
    ASSERT_TRUE(validate_model(m).accepted());
    EXPECT_TRUE(equiv_worlds(m, 0, "x", F("q(x)"), 1, 1));
    EXPECT_TRUE(equiv_worlds(m, 0, "x", Formula::truth(), 0, 1));
    EXPECT_FALSE(equiv_worlds(m, 0, "x", F("q(x)"), 0, 1));
    EXPECT_TRUE(equiv_worlds(m, 0, "x", F("r()"), 0, 1));
}

TEST(EntailsAt, Examples) {
    NalModel m = corpus::unit_countermodel();
    for (WorldId w = 0; w < m.world_count(); ++w) {
        EvalPoint pt{&m, w, {}};
        EXPECT_TRUE(entails_at(pt, Sequent({F("r()")}, F("r()"))));
        EXPECT_TRUE(entails_at(pt, Sequent({}, Formula::truth())));
    }
    EXPECT_FALSE(entails_at(EvalPoint{&m, 0, {}}, Sequent({}, F("not r() => p() says not r()"))));
}

TEST(ValidEverywhere, Examples) {
    NalModel m = corpus::unit_countermodel();
    EXPECT_TRUE(valid_everywhere(m, Sequent({}, Formula::truth())));
    EXPECT_FALSE(valid_everywhere(m, Sequent({}, Formula::falsity())));
    EXPECT_FALSE(valid_everywhere(m, Sequent({}, F("not r() => p() says not r()"))));
    auto pt = falsifying_point(Evaluator(m), Sequent({}, F("not r() => p() says not r()")));
    ASSERT_TRUE(pt.has_value());
    EXPECT_EQ(pt->world, 0u);
}

TEST(ValidEverywhere, OpenSequentRangesOverValuations) {
    NalModel m = simple_model({1, {}, 2, {}, {}});
    m.structures[0].relations["q"].insert({1});
    EXPECT_FALSE(valid_everywhere(m, Sequent({}, F("q(x)"))));
    EXPECT_TRUE(valid_everywhere(m, Sequent({F("q(x)")}, F("exists y. q(y)"))));
}

// Oracle: on one-world models without access the clauses collapse to
// classical two-valued logic.
TEST(HoldsProperty, ClassicalOnOneWorld) {
    std::mt19937_64 rng(8);
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            NalModel m = simple_model({1, {}, 1, {}, r ? std::vector<WorldId>{0} : std::vector<WorldId>{}});
            if (s) m.structures[0].relations["s"].insert(Tuple{});
            ASSERT_TRUE(validate_model(m).accepted());
            for (int i = 0; i < 200; ++i) {
                bool expected = false;
                Formula f = propositional(rng, 4, r, s, expected);
                EXPECT_EQ(holds(EvalPoint{&m, 0, {}}, f), expected) << render(f);
            }
        }
}

// Oracle: evaluating phi[t/x] equals evaluating phi with x bound to the
// value of t, for group-free t.
TEST(HoldsProperty, SubstitutionLemma) {
    SyntaxGenOptions opts;
    opts.groups = false;
    opts.max_depth = 3;
    std::size_t checked = 0;
    SyntaxGenerator gen(kSig, opts, 21);
    for (const auto& m : generated(2, 25)) {
        for (int i = 0; i < 20; ++i) {
            Formula f = gen.formula();
            Term t = gen.term(2);
            Formula g = substitute(f, "x", t);
            for (WorldId w = 0; w < m.world_count(); ++w) {
                VarSet fv = free_vars(g);
                for (const auto& x : free_vars(f)) fv.insert(x);
                fv.erase("x");
                for (const auto& x : free_vars(t)) fv.insert(x);
                fv.insert("y");
                for (const auto& v : enumerate_valuations(m.at(w).domain, fv)) {
                    Valuation u = v;
                    u["x"] = interpret_term(EvalPoint{&m, w, v}, t);
                    EXPECT_EQ(holds(EvalPoint{&m, w, v}, g), holds(EvalPoint{&m, w, u}, f))
                        << render(f) << " [" << render(t) << "/x] at " << m.world_names[w];
                    ++checked;
                }
            }
        }
    }
    EXPECT_GT(checked, 1000u);
}

// Closed atoms persist along A by access-monotonicity, so atomic Unit is
// valid even though Unit in general is not.
TEST(HoldsProperty, AtomicUnitIsValid) {
    std::vector<std::string> atoms{"r()", "s()"};
    for (const char* t : {"A()", "B()", "C()", "p()", "f(A())"}) atoms.push_back(std::string("q(") + t + ")");
    for (const auto& m : generated(3, 100))
        for (const auto& a : atoms)
            for (const char* p : {"A()", "p()", "f(B())"})
                EXPECT_TRUE(valid_everywhere(m, Sequent({}, F(a + " => " + p + " says " + a)))) << a;
}

TEST(HoldsProperty, MonotoneAlongLeq) {
    SyntaxGenerator gen(kSig, {}, 4);
    for (const auto& m : generated(4, 30))
        for (int i = 0; i < 15; ++i) {
            Formula f = gen.formula(3);
            VarSet fv = free_vars(f);
            for (auto [w, w2] : m.leq.pairs())
                for (const auto& v : enumerate_valuations(m.at(w).domain, fv))
                    if (holds(EvalPoint{&m, w, v}, f))
                        EXPECT_TRUE(holds(EvalPoint{&m, w2, v}, f)) << render(f);
        }
}
