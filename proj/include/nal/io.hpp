#pragma once

// JSON encodings of signatures, derivations and models. Formulas and terms
// inside derivations are surface-syntax strings parsed against a signature.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nal/harness.hpp"
#include "nal/kernel.hpp"
#include "nal/model.hpp"
#include "nal/surface.hpp"

namespace nal {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Signature

inline bool valid_symbol_name(const std::string& s) {
    if (s.empty() || is_keyword(s)) return false;
    auto start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!start(s[0])) return false;
    for (char c : s)
        if (!start(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

inline json signature_to_json(const Signature& sig) {
    return json{{"functions", sig.functions}, {"relations", sig.relations}};
}

inline Signature signature_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("signature must be an object");
    Signature sig;
    for (const char* key : {"functions", "relations"}) {
        if (!j.contains(key)) continue;
        if (!j.at(key).is_object()) throw FormatError(std::string("signature.") + key + " must be an object");
        auto& target = std::string(key) == "functions" ? sig.functions : sig.relations;
        for (const auto& [name, arity] : j.at(key).items()) {
            if (!valid_symbol_name(name)) throw FormatError("invalid symbol name '" + name + "'");
            if (!arity.is_number_unsigned()) throw FormatError("arity of '" + name + "' must be a natural number");
            target[name] = arity.get<std::size_t>();
        }
    }
    for (const auto& [f, _] : sig.functions)
        if (sig.relations.count(f)) throw FormatError("symbol '" + f + "' is both a function and a relation");
    return sig;
}

inline Signature load_signature(const std::string& path) { return signature_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Derivations

inline json derivation_to_json(const Derivation& d) {
    json hyps = json::array();
    for (const auto& h : d.conclusion.hyps()) hyps.push_back(render(h));
    json params = json::object();
    const auto& p = d.params;
    if (p.witness) params["witness"] = render(*p.witness);
    if (p.var) params["var"] = *p.var;
    if (p.principal) params["principal"] = render(*p.principal);
    if (p.formula) params["formula"] = render(*p.formula);
    if (p.symbol) params["symbol"] = *p.symbol;
    if (p.symbol || !p.lhs.empty() || !p.rhs.empty()) {
        json lhs = json::array(), rhs = json::array();
        for (const auto& t : p.lhs) lhs.push_back(render(t));
        for (const auto& t : p.rhs) rhs.push_back(render(t));
        params["lhs"] = lhs;
        params["rhs"] = rhs;
    }
    json premises = json::array();
    for (const auto& q : d.premises) premises.push_back(derivation_to_json(q));
    return json{{"rule", std::string(rule_name(d.rule))},
                {"conclusion", {{"hyps", hyps}, {"goal", render(d.conclusion.goal())}}},
                {"params", params},
                {"premises", premises}};
}

namespace detail {

inline Formula formula_field(const json& j, const Signature& sig, const std::string& where) {
    if (!j.is_string()) throw FormatError(where + ": expected a formula string");
    try {
        return parse_formula(j.get<std::string>(), sig);
    } catch (const ParseError& e) {
        throw FormatError(where + ": " + e.what());
    }
}

inline Term term_field(const json& j, const Signature& sig, const std::string& where) {
    if (!j.is_string()) throw FormatError(where + ": expected a term string");
    try {
        return parse_term(j.get<std::string>(), sig);
    } catch (const ParseError& e) {
        throw FormatError(where + ": " + e.what());
    }
}

inline Derivation derivation_from_json(const json& j, const Signature& sig, const std::string& path) {
    if (!j.is_object()) throw FormatError(path + ": derivation node must be an object");
    if (!j.contains("rule") || !j["rule"].is_string()) throw FormatError(path + ": missing rule");
    auto rule = rule_from_name(j["rule"].get<std::string>());
    if (!rule) throw FormatError(path + ": unknown rule '" + j["rule"].get<std::string>() + "'");
    if (!j.contains("conclusion") || !j["conclusion"].is_object()) throw FormatError(path + ": missing conclusion");
    const json& c = j["conclusion"];
    std::vector<Formula> hyps;
    if (c.contains("hyps")) {
        if (!c["hyps"].is_array()) throw FormatError(path + ": hyps must be an array");
        for (std::size_t i = 0; i < c["hyps"].size(); ++i)
            hyps.push_back(formula_field(c["hyps"][i], sig, path + ".hyps[" + std::to_string(i) + "]"));
    }
    if (!c.contains("goal")) throw FormatError(path + ": missing goal");
    Derivation d{*rule, Sequent(std::move(hyps), formula_field(c["goal"], sig, path + ".goal")), {}, {}};

    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) throw FormatError(path + ": params must be an object");
        if (p.contains("witness")) d.params.witness = term_field(p["witness"], sig, path + ".params.witness");
        if (p.contains("principal")) d.params.principal = term_field(p["principal"], sig, path + ".params.principal");
        if (p.contains("formula")) d.params.formula = formula_field(p["formula"], sig, path + ".params.formula");
        if (p.contains("var")) {
            if (!p["var"].is_string()) throw FormatError(path + ".params.var: expected a variable name");
            d.params.var = p["var"].get<std::string>();
        }
        if (p.contains("symbol")) {
            if (!p["symbol"].is_string()) throw FormatError(path + ".params.symbol: expected a symbol name");
            d.params.symbol = p["symbol"].get<std::string>();
        }
        for (const char* side : {"lhs", "rhs"}) {
            if (!p.contains(side)) continue;
            if (!p[side].is_array()) throw FormatError(path + ".params." + side + ": expected an array");
            auto& out = std::string(side) == "lhs" ? d.params.lhs : d.params.rhs;
            for (std::size_t i = 0; i < p[side].size(); ++i)
                out.push_back(term_field(p[side][i], sig, path + ".params." + side + "[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("premises")) {
        if (!j["premises"].is_array()) throw FormatError(path + ": premises must be an array");
        for (std::size_t i = 0; i < j["premises"].size(); ++i)
            d.premises.push_back(derivation_from_json(j["premises"][i], sig, path + "/" + std::to_string(i)));
    }
    return d;
}

}  // namespace detail

inline Derivation derivation_from_json(const json& j, const Signature& sig) {
    return detail::derivation_from_json(j, sig, "root");
}

inline Derivation load_derivation(const std::string& path, const Signature& sig) {
    return derivation_from_json(read_json_file(path), sig);
}

// ---------------------------------------------------------------------------
// Models

inline json model_to_json(const NalModel& m) {
    auto W = [&](WorldId w) { return m.world_names.at(w); };
    auto P = [&](Principal p) { return m.principal_names.at(p); };
    auto D = [&](Individual d) { return m.individual_names.at(d); };
    auto tuple = [&](const Tuple& t) {
        json a = json::array();
        for (Individual d : t) a.push_back(D(d));
        return a;
    };
    auto pairs = [&](const WorldRelation& r) {
        json a = json::array();
        for (auto [x, y] : r.pairs()) a.push_back(json::array({W(x), W(y)}));
        return a;
    };

    json j;
    j["signature"] = signature_to_json(m.signature);
    j["worlds"] = m.world_names;
    j["leq"] = pairs(m.leq);
    j["principals"] = m.principal_names;
    j["bottom"] = P(m.bottom);
    json join = json::array();
    for (Principal p = 0; p < m.join.size(); ++p)
        for (Principal q = 0; q < m.join[p].size(); ++q) join.push_back(json::array({P(p), P(q), P(m.join[p][q])}));
    j["join"] = join;
    json access = json::object();
    for (Principal p = 0; p < m.access.size(); ++p) access[P(p)] = pairs(m.access[p]);
    j["access"] = access;

    json structures = json::object();
    for (WorldId w = 0; w < m.structures.size(); ++w) {
        const auto& s = m.structures[w];
        json o;
        json domain = json::array();
        for (Individual d : s.domain) domain.push_back(D(d));
        o["domain"] = domain;
        json eq = json::array();
        for (const auto& cls : s.eq_classes()) eq.push_back(tuple(cls));
        o["eq"] = eq;
        json rel = json::object();
        for (const auto& [r, ts] : s.relations) {
            json a = json::array();
            for (const auto& t : ts) a.push_back(tuple(t));
            rel[r] = a;
        }
        o["relations"] = rel;
        json fun = json::object();
        for (const auto& [f, table] : s.functions) {
            json a = json::array();
            for (const auto& [t, v] : table) a.push_back(json::array({tuple(t), D(v)}));
            fun[f] = a;
        }
        o["functions"] = fun;
        json sub = json::array();
        for (const auto& [key, q] : s.sub) sub.push_back(json::array({P(key.first), D(key.second), P(q)}));
        o["sub"] = sub;
        json delta = json::object();
        for (auto [p, d] : s.delta) delta[P(p)] = D(d);
        o["delta"] = delta;
        json pi = json::object();
        for (auto [d, p] : s.pi) pi[D(d)] = P(p);
        o["pi"] = pi;
        structures[W(w)] = o;
    }
    j["structures"] = structures;
    return j;
}

namespace detail {

class ModelReader {
public:
    explicit ModelReader(const json& j) : j_(j) {}

    NalModel read() {
        if (!j_.is_object()) throw FormatError("model must be an object");
        if (j_.contains("signature")) m_.signature = signature_from_json(j_["signature"]);
        m_.world_names = names("worlds");
        m_.principal_names = names("principals");
        std::size_t n = m_.world_names.size(), k = m_.principal_names.size();

        m_.leq = pairs(field("leq"), "leq");
        m_.bottom = principal(field("bottom"), "bottom");
        m_.join.assign(k, std::vector<Principal>(k, k));  // k marks "missing"
        for (const auto& t : array(field("join"), "join")) {
            if (!t.is_array() || t.size() != 3) throw FormatError("join entries must be [p, q, p-join-q]");
            m_.join[principal(t[0], "join")][principal(t[1], "join")] = principal(t[2], "join");
        }
        const json& acc = field("access");
        if (!acc.is_object()) throw FormatError("access must be an object");
        m_.access.assign(k, WorldRelation(n));
        for (const auto& [p, ps] : acc.items()) m_.access[principal(p, "access")] = pairs(ps, "access." + p);

        const json& st = field("structures");
        if (!st.is_object()) throw FormatError("structures must be an object keyed by world");
        m_.structures.resize(n);
        for (WorldId w = 0; w < n; ++w) {
            if (!st.contains(m_.world_names[w])) throw FormatError("no structure for world " + m_.world_names[w]);
            m_.structures[w] = structure(st[m_.world_names[w]], "structures." + m_.world_names[w]);
        }
        return std::move(m_);
    }

private:
    const json& j_;
    NalModel m_;
    std::map<std::string, Individual> individuals_;

    const json& field(const char* key) {
        if (!j_.contains(key)) throw FormatError(std::string("model is missing '") + key + "'");
        return j_[key];
    }

    static const json& array(const json& j, const std::string& where) {
        if (!j.is_array()) throw FormatError(where + " must be an array");
        return j;
    }

    std::vector<std::string> names(const char* key) {
        std::vector<std::string> out;
        for (const auto& x : array(field(key), key)) {
            if (!x.is_string()) throw FormatError(std::string(key) + " must list names");
            out.push_back(x.get<std::string>());
        }
        std::set<std::string> uniq(out.begin(), out.end());
        if (uniq.size() != out.size()) throw FormatError(std::string(key) + " contains duplicate names");
        return out;
    }

    static std::size_t index(const std::vector<std::string>& names, const json& j, const std::string& what,
                             const std::string& where) {
        if (!j.is_string()) throw FormatError(where + ": expected a " + what + " name");
        std::string s = j.get<std::string>();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return i;
        throw FormatError(where + ": unknown " + what + " '" + s + "'");
    }

    WorldId world(const json& j, const std::string& where) { return index(m_.world_names, j, "world", where); }
    Principal principal(const json& j, const std::string& where) {
        return index(m_.principal_names, j, "principal", where);
    }

    Individual individual(const json& j, const std::string& where) {
        if (!j.is_string()) throw FormatError(where + ": expected an individual name");
        std::string s = j.get<std::string>();
        auto [it, fresh] = individuals_.try_emplace(s, m_.individual_names.size());
        if (fresh) m_.individual_names.push_back(s);
        return it->second;
    }

    Tuple tuple(const json& j, const std::string& where) {
        Tuple t;
        for (const auto& x : array(j, where)) t.push_back(individual(x, where));
        return t;
    }

    WorldRelation pairs(const json& j, const std::string& where) {
        WorldRelation r(m_.world_names.size());
        for (const auto& p : array(j, where)) {
            if (!p.is_array() || p.size() != 2) throw FormatError(where + ": expected [world, world] pairs");
            r.insert(world(p[0], where), world(p[1], where));
        }
        return r;
    }

    WorldStructure structure(const json& o, const std::string& where) {
        if (!o.is_object()) throw FormatError(where + " must be an object");
        WorldStructure s;
        if (o.contains("domain"))
            for (const auto& d : array(o["domain"], where + ".domain")) s.domain.insert(individual(d, where));
        if (o.contains("eq")) {
            std::size_t label = 0;
            for (const auto& cls : array(o["eq"], where + ".eq")) {
                for (Individual d : tuple(cls, where + ".eq"))
                    if (!s.eq_class.emplace(d, label).second)
                        throw FormatError(where + ".eq: individual in two classes");
                ++label;
            }
        } else {
            std::size_t label = 0;
            for (Individual d : s.domain) s.eq_class[d] = label++;
        }
        if (o.contains("relations")) {
            if (!o["relations"].is_object()) throw FormatError(where + ".relations must be an object");
            for (const auto& [r, ts] : o["relations"].items()) {
                auto& ext = s.relations[r];
                for (const auto& t : array(ts, where + ".relations." + r)) ext.insert(tuple(t, where));
            }
        }
        if (o.contains("functions")) {
            if (!o["functions"].is_object()) throw FormatError(where + ".functions must be an object");
            for (const auto& [f, rows] : o["functions"].items()) {
                auto& table = s.functions[f];
                for (const auto& row : array(rows, where + ".functions." + f)) {
                    if (!row.is_array() || row.size() != 2)
                        throw FormatError(where + ".functions." + f + ": expected [[args...], value] rows");
                    table[tuple(row[0], where)] = individual(row[1], where);
                }
            }
        }
        if (o.contains("sub"))
            for (const auto& row : array(o["sub"], where + ".sub")) {
                if (!row.is_array() || row.size() != 3)
                    throw FormatError(where + ".sub: expected [principal, individual, principal] rows");
                s.sub[{principal(row[0], where), individual(row[1], where)}] = principal(row[2], where);
            }
        if (o.contains("delta")) {
            if (!o["delta"].is_object()) throw FormatError(where + ".delta must be an object");
            for (const auto& [p, d] : o["delta"].items()) s.delta[principal(p, where)] = individual(d, where);
        }
        if (o.contains("pi")) {
            if (!o["pi"].is_object()) throw FormatError(where + ".pi must be an object");
            for (const auto& [d, p] : o["pi"].items()) s.pi[individual(json(d), where)] = principal(p, where);
        }
        return s;
    }
};

}  // namespace detail

inline NalModel model_from_json(const json& j) { return detail::ModelReader(j).read(); }

inline NalModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Reports

inline json report_to_json(const CheckReport& r) {
    json fs = json::array();
    for (const auto& f : r.failures()) fs.push_back({{"path", f.path}, {"tag", f.tag}, {"reason", f.reason}});
    return json{{"accepted", r.accepted()}, {"failures", fs}};
}

inline json soundness_report_to_json(const SoundnessReport& rep, const std::vector<NamedModel>& models) {
    json vs = json::array();
    for (const auto& v : rep.violations) {
        const NalModel& m = models.at(v.model_index).model;
        json val = json::object();
        for (const auto& [x, d] : v.valuation) val[x] = m.individual_names.at(d);
        vs.push_back({{"proof", v.proof},
                      {"model", v.model},
                      {"world", v.world_name},
                      {"valuation", val},
                      {"sequent", render(v.sequent)}});
    }
    return json{{"proofs", rep.proofs},
                {"models", rep.models},
                {"points", rep.points},
                {"violations", vs},
                {"precondition_failures", rep.precondition_failures}};
}

}  // namespace nal
