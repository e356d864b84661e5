#pragma once

// The `nal` command line. Exit status: 0 accepted / holds / nothing found,
// 1 rejected / falsified / countermodel found, 2 usage or input error.

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nal/harness.hpp"
#include "nal/io.hpp"
#include "nal/kernel.hpp"
#include "nal/model.hpp"
#include "nal/semantics.hpp"
#include "nal/surface.hpp"

namespace nal::cli {

enum ExitStatus : int { kOk = 0, kRejected = 1, kUsage = 2 };

namespace detail {

namespace fs = std::filesystem;

inline std::vector<std::string> json_files(const std::string& dir) {
    if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

inline void print_report(std::ostream& out, const CheckReport& r, bool as_json) {
    if (as_json) {
        out << report_to_json(r).dump(2) << '\n';
        return;
    }
    if (r.accepted()) {
        out << "accepted\n";
        return;
    }
    out << "rejected: " << r.failures().front().reason << '\n';
    for (const auto& f : r.failures()) out << "  at " << f.path << " [" << f.tag << "] " << f.reason << '\n';
}

inline std::string describe_model(const NalModel& m) {
    std::ostringstream os;
    os << m.world_count() << " world(s), " << m.principal_count() << " principal(s); leq:";
    for (auto [a, b] : m.leq.pairs())
        if (a != b) os << ' ' << m.world_names[a] << "<=" << m.world_names[b];
    os << '\n';
    for (Principal p = 0; p < m.principal_count(); ++p) {
        os << "  A_" << m.principal_names[p] << " = {";
        bool first = true;
        for (auto [a, b] : m.access[p].pairs()) {
            os << (first ? "" : ", ") << '(' << m.world_names[a] << ',' << m.world_names[b] << ')';
            first = false;
        }
        os << "}\n";
    }
    for (WorldId w = 0; w < m.world_count(); ++w) {
        os << "  " << m.world_names[w] << ":";
        for (const auto& [r, ts] : m.at(w).relations)
            for (const auto& t : ts) {
                os << ' ' << r << '(';
                for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << m.individual_names[t[i]];
                os << ')';
            }
        os << '\n';
    }
    return os.str();
}

}  // namespace detail

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Proof checking, model validation and evaluation for NAL"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Machine-readable output");
    app.fallthrough();

    std::string sig_path, file, formula_text, model_path, world, out_dir, proofs_dir, models_dir, report_path;
    std::vector<std::string> assigns;
    bool no_f1 = false;
    std::uint64_t seed = 0;
    std::size_t count = 1, max_worlds = 3, max_principals = 3, max_domain = 3;

    auto* parse = app.add_subcommand("parse", "Parse a formula and echo its syntax tree");
    parse->add_option("--sig", sig_path, "Signature JSON")->required();
    parse->add_option("formula", formula_text, "Formula")->required();

    auto* check = app.add_subcommand("check-proof", "Check a derivation file");
    check->add_option("--sig", sig_path, "Signature JSON")->required();
    check->add_option("file", file, "Derivation JSON")->required();

    auto* validate = app.add_subcommand("validate-model", "Validate a model file");
    validate->add_option("file", file, "Model JSON")->required();
    validate->add_flag("--no-f1", no_f1, "Do not enforce frame condition F1");

    auto* eval = app.add_subcommand("eval", "Evaluate a formula at a world");
    eval->add_option("--model", model_path, "Model JSON")->required();
    eval->add_option("--world", world, "World name")->required();
    eval->add_option("--assign", assigns, "Variable assignment x=individual")->take_all();
    eval->add_option("formula", formula_text, "Formula")->required();

    auto* gen = app.add_subcommand("gen-models", "Generate validated random models");
    gen->add_option("--seed", seed, "Seed")->required();
    gen->add_option("--count", count, "Number of models")->required()->check(CLI::PositiveNumber);
    gen->add_option("--max-worlds", max_worlds, "World bound")->required()->check(CLI::PositiveNumber);
    gen->add_option("--max-principals", max_principals, "Principal bound")->check(CLI::PositiveNumber);
    gen->add_option("--max-domain", max_domain, "Domain bound")->check(CLI::PositiveNumber);
    gen->add_option("--sig", sig_path, "Signature JSON (default: no symbols)");
    gen->add_option("--out", out_dir, "Output directory")->required();

    auto* sound = app.add_subcommand("soundness", "Check every proof against every model");
    sound->add_option("--proofs", proofs_dir, "Directory of derivation files")->required();
    sound->add_option("--models", models_dir, "Directory of model files")->required();
    sound->add_option("--sig", sig_path, "Signature JSON (default: that of the first model)");
    sound->add_option("--report", report_path, "Also write the JSON report here");

    auto* search = app.add_subcommand("find-countermodel", "Search small models for a countermodel");
    search->add_option("--sig", sig_path, "Signature JSON")->required();
    search->add_option("--max-worlds", max_worlds, "World bound")->required()->check(CLI::PositiveNumber);
    search->add_option("--max-principals", max_principals, "Principal bound")->check(CLI::PositiveNumber);
    search->add_option("formula", formula_text, "Closed formula")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*parse) {
            Signature sig = load_signature(sig_path);
            Formula f = parse_formula(formula_text, sig);
            if (as_json)
                out << json{{"formula", render(f)}, {"ast", to_sexpr(f)}}.dump(2) << '\n';
            else
                out << to_sexpr(f) << '\n' << render(f) << '\n';
            return kOk;
        }
        if (*check) {
            Signature sig = load_signature(sig_path);
            CheckReport r = check_derivation(load_derivation(file, sig), sig);
            detail::print_report(out, r, as_json);
            return r.accepted() ? kOk : kRejected;
        }
        if (*validate) {
            ValidateOptions opts;
            opts.enforce_f1 = !no_f1;
            CheckReport r = validate_model(load_model(file), opts);
            detail::print_report(out, r, as_json);
            return r.accepted() ? kOk : kRejected;
        }
        if (*eval) {
            NalModel m = load_model(model_path);
            CheckReport vr = validate_model(m);
            if (!vr.accepted()) {
                err << "model is not valid:\n" << vr;
                return kUsage;
            }
            auto w = m.world_by_name(world);
            if (!w) throw FormatError("unknown world '" + world + "'");
            Valuation v;
            for (const auto& a : assigns) {
                auto eq = a.find('=');
                if (eq == std::string::npos) throw FormatError("--assign expects x=individual, got '" + a + "'");
                auto d = m.individual_by_name(a.substr(eq + 1));
                if (!d || !m.at(*w).has(*d))
                    throw FormatError("'" + a.substr(eq + 1) + "' is not an individual of world " + world);
                v[a.substr(0, eq)] = *d;
            }
            Formula f = parse_formula(formula_text, m.signature);
            for (const auto& x : free_vars(f))
                if (!v.count(x)) throw FormatError("free variable '" + x + "' needs --assign");
            bool h = holds(EvalPoint{&m, *w, v}, f);
            if (as_json)
                out << json{{"holds", h}, {"world", world}, {"formula", render(f)}}.dump(2) << '\n';
            else
                out << (h ? "holds" : "fails") << '\n';
            return h ? kOk : kRejected;
        }
        if (*gen) {
            GenConfig cfg;
            cfg.seed = seed;
            cfg.sample_count = count;
            cfg.max_worlds = max_worlds;
            cfg.max_principals = max_principals;
            cfg.max_domain = max_domain;
            if (!sig_path.empty()) cfg.signature = load_signature(sig_path);
            detail::fs::create_directories(out_dir);
            json files = json::array();
            for (std::size_t i = 0; i < count; ++i) {
                std::ostringstream name;
                name << "model-" << std::setw(4) << std::setfill('0') << i << ".json";
                std::string path = (detail::fs::path(out_dir) / name.str()).string();
                write_json_file(path, model_to_json(generate_model(cfg, i)));
                files.push_back(path);
            }
            if (as_json)
                out << json{{"models", files}}.dump(2) << '\n';
            else
                out << "wrote " << count << " model(s) to " << out_dir << '\n';
            return kOk;
        }
        if (*sound) {
            std::vector<NamedModel> models;
            for (const auto& p : detail::json_files(models_dir))
                models.push_back({detail::fs::path(p).stem().string(), load_model(p)});
            Signature sig;
            if (!sig_path.empty())
                sig = load_signature(sig_path);
            else if (!models.empty())
                sig = models.front().model.signature;
            std::vector<NamedDerivation> proofs;
            for (const auto& p : detail::json_files(proofs_dir))
                proofs.push_back({detail::fs::path(p).stem().string(), load_derivation(p, sig)});
            SoundnessReport rep = soundness_check(proofs, models, default_evaluator(), &sig);
            json j = soundness_report_to_json(rep, models);
            if (!report_path.empty()) write_json_file(report_path, j);
            if (as_json)
                out << j.dump(2) << '\n';
            else
                out << format_report(rep, models);
            return rep.clean() ? kOk : kRejected;
        }
        if (*search) {
            GenConfig bound;
            bound.signature = load_signature(sig_path);
            bound.max_worlds = max_worlds;
            bound.max_principals = max_principals;
            Formula f = parse_formula(formula_text, bound.signature);
            if (!free_vars(f).empty()) throw FormatError("formula must be closed");
            auto cm = find_countermodel(f, bound);
            if (!cm) {
                if (as_json)
                    out << json{{"found", false}, {"max_worlds", max_worlds}}.dump(2) << '\n';
                else
                    out << "none up to bound " << max_worlds << '\n';
                return kOk;
            }
            json mj = model_to_json(cm->model);
            if (as_json) {
                mj["falsified_at"] = cm->model.world_names[cm->world];
                out << mj.dump(2) << '\n';
            } else {
                out << "countermodel: falsified at " << cm->model.world_names[cm->world] << "; "
                    << detail::describe_model(cm->model) << mj.dump() << '\n';
            }
            return kRejected;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << '\n';
        return kUsage;
    } catch (const GenerationError& e) {
        err << "generation failed: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"nal"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nal::cli
