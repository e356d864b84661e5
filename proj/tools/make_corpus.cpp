// Writes the reference corpus: signature, accepted proofs, rejected proofs,
// a sample of generated models and the seeded bad models.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "nal/corpus.hpp"
#include "nal/io.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Write the reference corpus"};
    std::string out = "corpus";
    std::uint64_t seed = 20240601;
    std::size_t models = 20;
    app.add_option("--out", out, "Corpus directory");
    app.add_option("--seed", seed, "Generator seed for models/");
    app.add_option("--models", models, "Number of generated models");
    CLI11_PARSE(app, argc, argv);

    using namespace nal;
    Signature sig = corpus::signature();
    for (const char* sub : {"proofs", "bad-proofs", "models", "bad-models"}) {
        fs::remove_all(fs::path(out) / sub);
        fs::create_directories(fs::path(out) / sub);
    }
    auto path = [&](const char* sub, const std::string& name) { return (fs::path(out) / sub / (name + ".json")).string(); };

    write_json_file((fs::path(out) / "signature.json").string(), signature_to_json(sig));
    for (const auto& g : corpus::goldens()) write_json_file(path("proofs", g.name), derivation_to_json(g.derivation));
    write_json_file(path("proofs", "necessitation"), derivation_to_json(corpus::necessitation_fixture()));
    for (const auto& m : corpus::mutants()) write_json_file(path("bad-proofs", m.name), derivation_to_json(m.derivation));
    write_json_file(path("bad-proofs", "unit"), derivation_to_json(corpus::unit_fixture()));

    GenConfig cfg;
    cfg.signature = sig;
    cfg.seed = seed;
    for (std::size_t i = 0; i < models; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "gen-%04zu", i);
        write_json_file(path("models", name), model_to_json(generate_model(cfg, i)));
    }
    write_json_file(path("models", "unit-countermodel"), model_to_json(corpus::unit_countermodel()));
    for (const auto& b : corpus::bad_models()) {
        json j = model_to_json(b.model);
        j["expected_tag"] = b.tag;
        write_json_file(path("bad-models", b.name), j);
    }
    std::cout << "corpus written to " << out << '\n';
    return 0;
}
