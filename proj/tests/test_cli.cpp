#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "nal/cli.hpp"
#include "nal/nal.hpp"

using namespace nal;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = NAL_CORPUS_DIR;
const std::string kSigFile = kCorpus + "/signature.json";

struct Result {
    int status;
    std::string out, err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("nal-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        trivial_ = (dir_ / "trivial.json").string();
        write_json_file(trivial_, model_to_json(corpus::simple_model({})));
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
    std::string trivial_;
};

}  // namespace

TEST_F(Cli, EvalTrueOnTrivialModel) {
    auto r = run({"eval", "--model", trivial_, "--world", "w0", "true"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "holds\n");
    r = run({"eval", "--model", trivial_, "--world", "w0", "false"});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out, "fails\n");
}

TEST_F(Cli, EvalWithAssignment) {
    EXPECT_EQ(run({"eval", "--model", trivial_, "--world", "w0", "--assign", "x=d_bot", "x = A()"}).status, 0);
    EXPECT_EQ(run({"eval", "--model", trivial_, "--world", "w0", "q(x)"}).status, 2);
    EXPECT_EQ(run({"eval", "--model", trivial_, "--world", "w0", "--assign", "x=nobody", "q(x)"}).status, 2);
    EXPECT_EQ(run({"eval", "--model", trivial_, "--world", "w9", "true"}).status, 2);
}

TEST_F(Cli, CheckProofUnitBug) {
    auto r = run({"check-proof", "--sig", kSigFile, kCorpus + "/bad-proofs/unit.json"});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out.rfind("rejected: SAYS-LIFT context mismatch", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("[context-mismatch]"), std::string::npos);
}

TEST_F(Cli, CheckProofJson) {
    auto r = run({"--json", "check-proof", "--sig", kSigFile, kCorpus + "/proofs/necessitation.json"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(json::parse(r.out).at("accepted"), true);
    r = run({"check-proof", "--json", "--sig", kSigFile, kCorpus + "/bad-proofs/unit.json"});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(json::parse(r.out).at("accepted"), false);
}

// Exit status over the stored fixture matrix.
TEST_F(Cli, FixtureMatrix) {
    for (const auto& e : fs::directory_iterator(kCorpus + "/proofs"))
        EXPECT_EQ(run({"check-proof", "--sig", kSigFile, e.path().string()}).status, 0) << e.path();
    for (const auto& e : fs::directory_iterator(kCorpus + "/bad-proofs"))
        EXPECT_EQ(run({"check-proof", "--sig", kSigFile, e.path().string()}).status, 1) << e.path();
    for (const auto& e : fs::directory_iterator(kCorpus + "/models"))
        EXPECT_EQ(run({"validate-model", e.path().string()}).status, 0) << e.path();
    for (const auto& e : fs::directory_iterator(kCorpus + "/bad-models")) {
        auto r = run({"validate-model", e.path().string()});
        EXPECT_EQ(r.status, 1) << e.path();
        std::string tag = read_json_file(e.path().string()).at("expected_tag");
        EXPECT_NE(r.out.find("[" + tag + "]"), std::string::npos) << r.out;
    }
}

TEST_F(Cli, ValidateNoF1) {
    std::string f1 = kCorpus + "/bad-models/f1.json";
    EXPECT_EQ(run({"validate-model", f1}).status, 1);
    EXPECT_EQ(run({"validate-model", f1, "--no-f1"}).status, 0);
}

TEST_F(Cli, InputErrors) {
    EXPECT_EQ(run({"validate-model", path("missing.json")}).status, 2);
    std::ofstream(path("junk.json")) << "{ not json";
    EXPECT_EQ(run({"validate-model", path("junk.json")}).status, 2);
    EXPECT_EQ(run({"check-proof", "--sig", kSigFile, path("junk.json")}).status, 2);
    EXPECT_EQ(run({"parse", "--sig", kSigFile, "r() and"}).status, 2);
}

TEST_F(Cli, UsageErrorsNameTheFlag) {
    auto r = run({"validate-model", trivial_, "--bogus"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("--bogus"), std::string::npos) << r.err;
    EXPECT_EQ(run({}).status, 2);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    r = run({"gen-models", "--seed", "1", "--count", "2", "--out", path("g")});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("--max-worlds"), std::string::npos) << r.err;
    EXPECT_EQ(run({"--help"}).status, 0);
}

TEST_F(Cli, ParseEchoesTree) {
    auto r = run({"parse", "--sig", kSigFile, "A() says (B() =>> A())"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, to_sexpr(parse_formula("A() says (B() =>> A())", corpus::signature())) +
                         "\nA() says (B() =>> A())\n");
    r = run({"--json", "parse", "--sig", kSigFile, "not (r() or s())"});
    EXPECT_EQ(json::parse(r.out).at("formula"), "not (r() or s())");
}

TEST_F(Cli, GeneratedModelsValidate) {
    std::string out = path("gen");
    auto r = run({"gen-models", "--seed", "5", "--count", "6", "--max-worlds", "3", "--sig", kSigFile, "--out", out});
    ASSERT_EQ(r.status, 0) << r.err;
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(out)) {
        ++n;
        EXPECT_EQ(run({"validate-model", e.path().string()}).status, 0);
        EXPECT_LE(load_model(e.path().string()).world_count(), 3u);
    }
    EXPECT_EQ(n, 6u);
    EXPECT_TRUE(fs::exists(out + "/model-0005.json"));
}

TEST_F(Cli, SoundnessOverDirectories) {
    std::string proofs = path("proofs"), models = path("models");
    fs::create_directories(proofs);
    fs::copy_file(kCorpus + "/proofs/and-i.json", proofs + "/and-i.json");
    fs::copy_file(kCorpus + "/proofs/necessitation.json", proofs + "/necessitation.json");
    ASSERT_EQ(run({"gen-models", "--seed", "2", "--count", "5", "--max-worlds", "3", "--sig", kSigFile, "--out",
                   models})
                  .status,
              0);
    std::string report = path("report.json");
    auto r = run({"soundness", "--proofs", proofs, "--models", models, "--report", report});
    EXPECT_EQ(r.status, 0) << r.out;
    json j = read_json_file(report);
    EXPECT_EQ(j.at("proofs"), 2);
    EXPECT_EQ(j.at("models"), 5);
    EXPECT_TRUE(j.at("violations").empty());

    fs::copy_file(kCorpus + "/bad-proofs/unit.json", proofs + "/unit.json");
    EXPECT_EQ(run({"soundness", "--proofs", proofs, "--models", models}).status, 1);
}

TEST_F(Cli, CountermodelRoundTrip) {
    std::string unit = "not r() => p() says not r()";
    auto r = run({"--json", "find-countermodel", "--sig", kSigFile, "--max-worlds", "3", unit});
    ASSERT_EQ(r.status, 1) << r.err;
    json j = json::parse(r.out);
    std::string world = j.at("falsified_at");
    std::string file = path("cm.json");
    write_json_file(file, j);
    EXPECT_EQ(run({"validate-model", file}).status, 0);
    EXPECT_EQ(run({"eval", "--model", file, "--world", world, unit}).status, 1);

    r = run({"find-countermodel", "--sig", kSigFile, "--max-worlds", "3", unit});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out.rfind("countermodel: falsified at ", 0), 0u) << r.out;
}

TEST_F(Cli, CountermodelNoneFound) {
    auto r = run({"find-countermodel", "--sig", kSigFile, "--max-worlds", "2", "r() => r()"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "none up to bound 2\n");
    EXPECT_EQ(run({"find-countermodel", "--sig", kSigFile, "--max-worlds", "2", "q(x)"}).status, 2);
}
