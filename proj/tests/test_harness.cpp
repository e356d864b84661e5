#include <gtest/gtest.h>

#include <random>

#include "nal/nal.hpp"

using namespace nal;
using corpus::simple_model;

namespace {

const Signature kSig = corpus::signature();

Formula F(const std::string& s) { return parse_formula(s, kSig); }

GenConfig config(std::uint64_t seed, std::size_t count) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.signature = kSig;
    cfg.sample_count = count;
    return cfg;
}

std::vector<NamedModel> named(const std::vector<NalModel>& ms) {
    std::vector<NamedModel> out;
    for (std::size_t i = 0; i < ms.size(); ++i) out.push_back({"m" + std::to_string(i), ms[i]});
    return out;
}

// Drops the says clause: every says formula is false.
class NoSaysEvaluator : public Evaluator {
public:
    using Evaluator::Evaluator;

protected:
    bool holds_says(WorldId, const Valuation&, const Formula&) const override { return false; }
};

bool mentions_says(const Formula& f) {
    if (f.kind() == FormulaKind::Says) return true;
    for (const auto& g : f.subs())
        if (mentions_says(g)) return true;
    return false;
}

}  // namespace

TEST(Generate, Deterministic) {
    GenConfig cfg = config(77, 20);
    auto a = generate_models(cfg), b = generate_models(cfg);
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(model_to_json(a[i]), model_to_json(b[i]));
    EXPECT_EQ(model_to_json(generate_model(cfg, 5)), model_to_json(a[5]));

    auto c = generate_models(config(78, 20));
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || model_to_json(a[i]) != model_to_json(c[i]);
    EXPECT_TRUE(differs);
}

TEST(Generate, TrivialFamily) {
    GenConfig cfg = config(3, 25);
    cfg.max_worlds = 1;
    cfg.max_principals = 1;
    for (const auto& m : generate_models(cfg)) {
        EXPECT_EQ(m.world_count(), 1u);
        EXPECT_EQ(m.principal_count(), 1u);
        EXPECT_TRUE(validate_model(m).accepted());
    }
}

TEST(Generate, ValidWithinBounds) {
    GenConfig cfg = config(1, 200);
    std::set<std::size_t> world_counts, principal_counts;
    for (const auto& m : generate_models(cfg)) {
        EXPECT_TRUE(validate_model(m).accepted());
        EXPECT_LE(m.world_count(), cfg.max_worlds);
        EXPECT_LE(m.principal_count(), cfg.max_principals);
        for (WorldId w = 0; w < m.world_count(); ++w) EXPECT_LE(m.at(w).domain.size(), cfg.max_domain + 1);
        world_counts.insert(m.world_count());
        principal_counts.insert(m.principal_count());
    }
    EXPECT_EQ(world_counts.size(), cfg.max_worlds);
    EXPECT_EQ(principal_counts.size(), cfg.max_principals);
}

TEST(Generate, RejectsZeroBounds) {
    GenConfig cfg = config(1, 1);
    cfg.max_worlds = 0;
    EXPECT_THROW(generate_model(cfg), GenerationError);
}

TEST(Repair, AddsIdLoop) {
    NalModel m = simple_model({2, {}, 1, {{0, {{0, 1}}}}, {}});
    ASSERT_TRUE(validate_model(m).has_tag("ID"));
    auto r = repair_frame_conditions(m);
    ASSERT_TRUE(r.model.has_value()) << r.report;
    EXPECT_TRUE(r.changed);
    EXPECT_TRUE(r.model->access[0].contains(1, 1));
    EXPECT_EQ(r.model->access[0].pairs().size(), 2u);
}

TEST(Repair, ValidModelUnchanged) {
    NalModel m = corpus::unit_countermodel();
    auto r = repair_frame_conditions(m);
    ASSERT_TRUE(r.model.has_value());
    EXPECT_FALSE(r.changed);
    EXPECT_EQ(model_to_json(*r.model), model_to_json(m));
}

TEST(Repair, RejectsWhenMonotonicityWouldBreak) {
    // F1 forces an access pair out of w1, where r holds, into w2, where it
    // does not.
    NalModel m = simple_model({3, {{0, 1}}, 1, {{0, {{0, 2}}}}, {1}});
    auto r = repair_frame_conditions(m);
    EXPECT_FALSE(r.model.has_value());
    EXPECT_TRUE(r.report.has_tag("access-monotonicity")) << r.report;
}

TEST(Soundness, HypothesisSequentIsClean) {
    Derivation d{RuleId::Hyp, Sequent({F("p() says r()")}, F("p() says r()")), {}, {}};
    auto rep = soundness_check({{"hyp", d}}, named(generate_models(config(9, 50))), default_evaluator(), &kSig);
    EXPECT_TRUE(rep.clean());
    EXPECT_EQ(rep.models, 50u);
    EXPECT_GT(rep.points, 50u);
}

TEST(Soundness, PreconditionFailuresAreReported) {
    std::vector<NamedModel> models = named(generate_models(config(9, 2)));
    models.push_back({"bad", corpus::bad_models()[0].model});
    auto rep = soundness_check({{"unit", corpus::unit_fixture()}}, models, default_evaluator(), &kSig);
    EXPECT_EQ(rep.precondition_failures.size(), 2u);
    EXPECT_FALSE(rep.clean());
    EXPECT_EQ(rep.proofs, 0u);
    EXPECT_EQ(rep.models, 2u);
}

// The harness must notice a broken evaluator: with says always false, only
// sequents whose goal mentions says can fail. Goldens with says goals also
// have says hypotheses, so the empty-context necessitation proof is the one
// that exposes the mutation.
TEST(Soundness, MutatedEvaluatorIsCaught) {
    std::vector<NamedDerivation> proofs;
    for (auto& g : corpus::goldens()) proofs.push_back({g.name, g.derivation});
    proofs.push_back({"necessitation", corpus::necessitation_fixture()});
    auto models = named(generate_models(config(10, 40)));
    auto make = [](const NalModel& m) { return std::make_unique<NoSaysEvaluator>(m); };
    auto rep = soundness_check(proofs, models, make, &kSig);
    ASSERT_FALSE(rep.violations.empty());
    std::set<std::string> hit;
    for (const auto& v : rep.violations) {
        EXPECT_TRUE(mentions_says(v.sequent.goal())) << v.proof;
        hit.insert(v.proof);
    }
    EXPECT_TRUE(hit.count("necessitation"));
    EXPECT_GT(rep.violations.size(), soundness_check(proofs, models, default_evaluator(), &kSig).violations.size());
}

TEST(Soundness, ViolationCarriesFalsifyingPoint) {
    std::vector<NamedDerivation> proofs{{"false", {RuleId::Hyp, Sequent({}, Formula::falsity()), {}, {}}}};
    auto models = named(generate_models(config(11, 3)));
    auto rep = soundness_check(proofs, models);
    ASSERT_EQ(rep.violations.size(), 3u);
    for (const auto& v : rep.violations) {
        EXPECT_EQ(v.world, 0u);
        EXPECT_FALSE(entails_at(EvalPoint{&models[v.model_index].model, v.world, v.valuation}, v.sequent));
    }
    EXPECT_NE(format_report(rep, models).find("false"), std::string::npos);
}

TEST(Countermodel, FalseAndTrue) {
    GenConfig bound = config(0, 1);
    bound.max_worlds = 3;
    auto cm = find_countermodel(Formula::falsity(), bound);
    ASSERT_TRUE(cm.has_value());
    EXPECT_EQ(cm->model.world_count(), 1u);
    EXPECT_FALSE(find_countermodel(Formula::truth(), bound).has_value());
    EXPECT_FALSE(find_countermodel(F("r() => r()"), bound).has_value());
}

TEST(Countermodel, UnitWithinThreeWorlds) {
    GenConfig bound = config(0, 1);
    bound.max_worlds = 3;
    Formula unit = F("not r() => p() says not r()");
    SearchStats stats;
    auto cm = find_countermodel(unit, bound, &stats);
    ASSERT_TRUE(cm.has_value());
    EXPECT_LE(cm->model.world_count(), 3u);
    EXPECT_TRUE(validate_model(cm->model).accepted());
    EXPECT_FALSE(holds(EvalPoint{&cm->model, cm->world, {}}, unit));
    EXPECT_GT(stats.candidates, 0u);
    EXPECT_FALSE(find_countermodel(F("r() => p() says r()"), bound).has_value());
}

TEST(Countermodel, ExcludedMiddleNeedsTwoWorlds) {
    GenConfig bound = config(0, 1);
    bound.max_worlds = 1;
    EXPECT_FALSE(find_countermodel(F("r() or not r()"), bound).has_value());
    bound.max_worlds = 2;
    auto cm = find_countermodel(F("r() or not r()"), bound);
    ASSERT_TRUE(cm.has_value());
    EXPECT_EQ(cm->model.world_count(), 2u);
}

// Oracle: with one world the search is complete and sound for classical
// propositional logic, checked against truth tables.
TEST(CountermodelProperty, OneWorldMatchesTruthTables) {
    std::mt19937_64 rng(12);
    GenConfig bound = config(0, 1);
    bound.max_worlds = 1;
    bound.max_principals = 1;
    std::function<Formula(int)> gen = [&](int depth) -> Formula {
        unsigned pick = depth == 0 ? rng() % 3 : rng() % 7;
        switch (pick) {
            case 0: return F("r()");
            case 1: return F("s()");
            case 2: return rng() % 2 ? Formula::truth() : Formula::falsity();
            case 3: return Formula::negate(gen(depth - 1));
            case 4: return Formula::conj(gen(depth - 1), gen(depth - 1));
            case 5: return Formula::disj(gen(depth - 1), gen(depth - 1));
            default: return Formula::implies(gen(depth - 1), gen(depth - 1));
        }
    };
    std::function<bool(const Formula&, bool, bool)> classical = [&](const Formula& f, bool r, bool s) -> bool {
        switch (f.kind()) {
            case FormulaKind::True: return true;
            case FormulaKind::False: return false;
            case FormulaKind::Relation: return f.name() == "r" ? r : s;
            case FormulaKind::Not: return !classical(f.body(), r, s);
            case FormulaKind::And: return classical(f.left(), r, s) && classical(f.right(), r, s);
            case FormulaKind::Or: return classical(f.left(), r, s) || classical(f.right(), r, s);
            default: return !classical(f.left(), r, s) || classical(f.right(), r, s);
        }
    };
    int falsifiable = 0;
    for (int i = 0; i < 150; ++i) {
        Formula f = gen(3);
        bool tautology = true;
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s) tautology = tautology && classical(f, r, s);
        auto cm = find_countermodel(f, bound);
        EXPECT_EQ(cm.has_value(), !tautology) << render(f);
        if (cm) {
            ++falsifiable;
            EXPECT_TRUE(validate_model(cm->model).accepted());
            EXPECT_FALSE(holds(EvalPoint{&cm->model, cm->world, {}}, f)) << render(f);
        }
    }
    EXPECT_GT(falsifiable, 20);
    EXPECT_LT(falsifiable, 150);
}

// Every countermodel returned for random closed formulas validates and
// falsifies the formula at the reported world.
TEST(CountermodelProperty, ResultsAreGenuine) {
    SyntaxGenOptions opts;
    opts.max_depth = 2;
    opts.quantifiers = false;
    opts.groups = false;
    opts.variables = {};
    SyntaxGenerator gen(kSig, opts, 13);
    GenConfig bound = config(0, 1);
    bound.max_worlds = 2;
    bound.max_principals = 2;
    int found = 0;
    for (int i = 0; i < 40; ++i) {
        Formula f = gen.formula();
        if (!free_vars(f).empty()) continue;
        auto cm = find_countermodel(f, bound);
        if (!cm) continue;
        ++found;
        EXPECT_TRUE(validate_model(cm->model).accepted()) << render(f);
        EXPECT_FALSE(holds(EvalPoint{&cm->model, cm->world, {}}, f)) << render(f);
    }
    EXPECT_GT(found, 5);
}

TEST(Countermodel, RejectsOpenFormula) {
    EXPECT_THROW(find_countermodel(F("q(x)"), config(0, 1)), std::invalid_argument);
}
