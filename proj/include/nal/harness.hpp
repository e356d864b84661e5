#pragma once

// Random model generation, frame-condition repair, soundness fuzzing and
// bounded countermodel search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nal/ast.hpp"
#include "nal/kernel.hpp"
#include "nal/model.hpp"
#include "nal/semantics.hpp"
#include "nal/surface.hpp"

namespace nal {

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_worlds = 4;
    std::size_t max_principals = 3;
    std::size_t max_domain = 3;
    Signature signature;
    std::size_t sample_count = 1;
    std::size_t max_attempts = 200;
    double leq_density = 0.35;
    double access_density = 0.2;
    ValidateOptions validation;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Relation utilities

inline WorldRelation reflexive_transitive_closure(WorldRelation r) {
    std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r.contains(i, k))
                for (std::size_t j = 0; j < n; ++j)
                    if (r.contains(k, j)) r.insert(i, j);
    return r;
}

/// leq together with every A_p, closed. Structures must grow along it.
inline WorldRelation growth_relation(const NalModel& m) {
    WorldRelation r = m.leq;
    for (const auto& a : m.access) r.absorb(a);
    return reflexive_transitive_closure(std::move(r));
}

namespace detail {

inline bool exists_world(std::size_t n, const std::function<bool(WorldId)>& pred) {
    for (WorldId w = 0; w < n; ++w)
        if (pred(w)) return true;
    return false;
}

/// One pass adding the pairs the frame conditions demand of A. Returns
/// whether anything changed.
inline bool frame_step(const WorldRelation& L, WorldRelation& A, bool f1) {
    std::size_t n = L.size();
    bool changed = false;
    for (auto [w, v] : A.pairs()) {
        if (f1)
            for (WorldId w2 = 0; w2 < n; ++w2)
                if (L.contains(w, w2) &&
                    !exists_world(n, [&](WorldId v2) { return L.contains(v, v2) && A.contains(w2, v2); }))
                    changed |= A.insert(w2, v);
        for (WorldId v2 = 0; v2 < n; ++v2)
            if (L.contains(v, v2) &&
                !exists_world(n, [&](WorldId w2) { return L.contains(w, w2) && A.contains(w2, v2); }))
                changed |= A.insert(w, v2);
        for (WorldId u = 0; u < n; ++u)
            if (A.contains(v, u) &&
                !exists_world(n, [&](WorldId w2) { return L.contains(w, w2) && A.contains(w2, u); }))
                changed |= A.insert(w, u);
        bool id = exists_world(n, [&](WorldId w2) {
            return L.contains(w, w2) && exists_world(n, [&](WorldId mid) { return A.contains(w2, mid) && A.contains(mid, v); });
        });
        if (!id) changed |= A.insert(v, v);
    }
    return changed;
}

/// Adds accessibility pairs until F1/F2/IT/ID, A_{p v q} within A_p and
/// sub-containment all hold.
inline bool close_access(NalModel& m, bool f1) {
    bool any = false;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& a : m.access) changed |= frame_step(m.leq, a, f1);
        for (Principal p = 0; p < m.principal_count(); ++p)
            for (Principal q = 0; q < m.principal_count(); ++q) {
                Principal j = m.join[p][q];
                if (j != p) changed |= m.access[p].absorb(m.access[j]);
            }
        for (const auto& s : m.structures)
            for (const auto& [key, q] : s.sub)
                if (q != key.first) changed |= m.access[key.first].absorb(m.access[q]);
        any |= changed;
    }
    return any;
}

}  // namespace detail

struct RepairResult {
    std::optional<NalModel> model;
    /// Validation of the repaired candidate; rejected when repair could not
    /// restore every condition.
    CheckReport report;
    bool changed = false;
};

/// Adds accessibility pairs until the frame conditions reach a fixed point,
/// then re-validates. Relation extensions are left alone, so a repair that
/// would need them (or that breaks monotonicity) rejects the candidate.
inline RepairResult repair_frame_conditions(NalModel m, const ValidateOptions& opts = {}) {
    RepairResult out;
    if (m.access.size() != m.principal_count() || m.leq.size() != m.world_count() ||
        m.join.size() != m.principal_count()) {
        out.report = validate_model(m, opts);
        return out;
    }
    out.changed = detail::close_access(m, opts.enforce_f1);
    out.report = validate_model(m, opts);
    if (out.report.accepted()) out.model = std::move(m);
    return out;
}

// ---------------------------------------------------------------------------
// Generation

namespace detail {

class ModelBuilder {
public:
    ModelBuilder(const GenConfig& cfg, std::seed_seq& seq) : cfg_(cfg), rng_(seq) {}

    NalModel build() {
        NalModel m;
        m.signature = cfg_.signature;
        std::size_t n = uniform(1, cfg_.max_worlds);
        for (std::size_t i = 0; i < n; ++i) m.world_names.push_back("w" + std::to_string(i));
        lattice(m);
        std::size_t k = m.principal_count();

        // Antisymmetric by construction: only pairs i < j are drawn.
        m.leq = WorldRelation(n);
        for (WorldId i = 0; i < n; ++i)
            for (WorldId j = i + 1; j < n; ++j)
                if (coin(cfg_.leq_density)) m.leq.insert(i, j);
        m.leq = reflexive_transitive_closure(m.leq);

        m.access.assign(k, WorldRelation(n));
        for (auto& a : m.access)
            for (WorldId i = 0; i < n; ++i)
                for (WorldId j = 0; j < n; ++j)
                    if (coin(cfg_.access_density)) a.insert(i, j);
        close_access(m, cfg_.validation.enforce_f1);
        structures(m);
        return m;
    }

private:
    const GenConfig& cfg_;
    std::mt19937_64 rng_;

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, std::max(lo, hi))(rng_);
    }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    /// Union-closed family of subsets of {0,1} containing the empty set;
    /// join is union, bottom the empty set.
    void lattice(NalModel& m) {
        std::size_t cap = std::max<std::size_t>(1, std::min(cfg_.max_principals, cfg_.max_domain));
        std::vector<unsigned> family{0};
        for (int attempt = 0; attempt < 16; ++attempt) {
            std::vector<unsigned> f{0};
            for (unsigned s = 1; s < 4; ++s)
                if (coin(0.5)) f.push_back(s);
            for (bool grew = true; grew;) {
                grew = false;
                for (std::size_t i = 0; i < f.size(); ++i)
                    for (std::size_t j = 0; j < f.size(); ++j)
                        if (std::find(f.begin(), f.end(), f[i] | f[j]) == f.end()) {
                            f.push_back(f[i] | f[j]);
                            grew = true;
                        }
            }
            if (f.size() <= cap) {
                family = f;
                break;
            }
        }
        std::sort(family.begin(), family.end(), [](unsigned a, unsigned b) {
            int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
        std::size_t k = family.size();
        m.principal_names.clear();
        for (std::size_t i = 0; i < k; ++i) m.principal_names.push_back(i == 0 ? "bot" : "p" + std::to_string(i));
        m.bottom = 0;
        m.join.assign(k, std::vector<Principal>(k, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                unsigned u = family[i] | family[j];
                m.join[i][j] = static_cast<Principal>(std::find(family.begin(), family.end(), u) - family.begin());
            }
    }

    struct UnionFind {
        std::vector<std::size_t> parent;
        explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
        std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
        void unite(std::size_t a, std::size_t b) {
            a = find(a), b = find(b);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    };

    std::vector<bool> up_closure(const WorldRelation& R, const std::vector<bool>& seed) {
        std::vector<bool> out(seed.size(), false);
        for (WorldId w = 0; w < seed.size(); ++w)
            if (seed[w])
                for (WorldId u = 0; u < seed.size(); ++u)
                    if (R.contains(w, u)) out[u] = true;
        return out;
    }

    void structures(NalModel& m) {
        std::size_t n = m.world_count(), k = m.principal_count();
        WorldRelation R = growth_relation(m);
        std::size_t total = uniform(k, std::max(k, cfg_.max_domain));

        // Principal individuals exist everywhere; extras appear on an
        // up-closed set of worlds.
        m.individual_names.clear();
        for (std::size_t i = 0; i < total; ++i)
            m.individual_names.push_back(i < k ? "d_" + m.principal_names[i] : "e" + std::to_string(i - k));
        std::vector<std::vector<bool>> present(total, std::vector<bool>(n, true));
        for (std::size_t e = k; e < total; ++e) {
            std::vector<bool> seed(n, false);
            for (WorldId w = 0; w < n; ++w) seed[w] = coin(0.5);
            seed[uniform(0, n - 1)] = true;
            present[e] = up_closure(R, seed);
        }

        // Equalities between extras, active on an up-closed set.
        struct Merge {
            std::size_t a, b;
            std::vector<bool> active;
        };
        std::vector<Merge> merges;
        UnionFind global(total);
        for (std::size_t a = k; a < total; ++a)
            for (std::size_t b = a + 1; b < total; ++b) {
                if (!coin(0.3)) continue;
                std::vector<bool> seed(n, false);
                seed[uniform(0, n - 1)] = true;
                auto active = up_closure(R, seed);
                for (WorldId w = 0; w < n; ++w) active[w] = active[w] && present[a][w] && present[b][w];
                if (std::none_of(active.begin(), active.end(), [](bool x) { return x; })) continue;
                merges.push_back({a, b, active});
                global.unite(a, b);
            }

        std::vector<Individual> everywhere;
        for (std::size_t d = 0; d < total; ++d)
            if (std::all_of(present[d].begin(), present[d].end(), [](bool x) { return x; })) everywhere.push_back(d);
        std::vector<std::size_t> reps;
        for (std::size_t d = 0; d < total; ++d)
            if (global.find(d) == d) reps.push_back(d);

        // Functions and sub are fixed on global classes, so they respect every
        // world's equality and agree across worlds.
        std::map<std::string, std::map<Tuple, Individual>> fun_on_reps;
        for (const auto& [f, arity] : m.signature.functions) {
            std::set<Individual> rs(reps.begin(), reps.end());
            for (const auto& t : tuples_over(rs, arity))
                fun_on_reps[f][t] = everywhere[uniform(0, everywhere.size() - 1)];
        }
        std::map<std::pair<Principal, std::size_t>, Principal> sub_extra;
        for (Principal p = 0; p < k; ++p)
            for (std::size_t r : reps) sub_extra[{p, r}] = uniform(0, k - 1);

        m.structures.assign(n, {});
        for (WorldId w = 0; w < n; ++w) {
            auto& s = m.structures[w];
            UnionFind local(total);
            for (const auto& mg : merges)
                if (mg.active[w]) local.unite(mg.a, mg.b);
            for (std::size_t d = 0; d < total; ++d)
                if (present[d][w]) {
                    s.domain.insert(d);
                    s.eq_class[d] = local.find(d);
                }
            for (const auto& [f, arity] : m.signature.functions)
                for (const auto& t : tuples_over(s.domain, arity)) {
                    Tuple key;
                    for (Individual d : t) key.push_back(global.find(d));
                    s.functions[f][t] = fun_on_reps[f].at(key);
                }
            for (Principal p = 0; p < k; ++p) {
                s.delta[p] = p;
                for (Individual d : s.domain) s.sub[{p, d}] = m.join[p][sub_extra.at({p, global.find(d)})];
            }
            for (Individual d : s.domain) s.pi[d] = d < k ? d : m.bottom;
        }

        // Relation facts are seeded at a world and propagate up R modulo the
        // target world's equality.
        for (const auto& [r, arity] : m.signature.relations) {
            std::vector<std::pair<WorldId, Tuple>> seeds;
            for (WorldId w = 0; w < n; ++w)
                for (const auto& t : tuples_over(m.structures[w].domain, arity))
                    if (coin(0.25)) seeds.emplace_back(w, t);
            for (WorldId w = 0; w < n; ++w) {
                auto& s = m.structures[w];
                auto& ext = s.relations[r];
                for (const auto& t : tuples_over(s.domain, arity))
                    for (const auto& [w0, t0] : seeds) {
                        if (!R.contains(w0, w)) continue;
                        bool same = true;
                        for (std::size_t i = 0; i < arity && same; ++i) same = s.equal(t[i], t0[i]);
                        if (same) {
                            ext.insert(t);
                            break;
                        }
                    }
            }
        }
    }
};

}  // namespace detail

/// The index-th model of a seeded family; validated before it is returned.
inline NalModel generate_model(const GenConfig& cfg, std::size_t index = 0) {
    if (cfg.max_worlds < 1 || cfg.max_principals < 1 || cfg.max_domain < 1)
        throw GenerationError("generation bounds must be at least 1");
    CheckReport last;
    for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(attempt)};
        NalModel m = detail::ModelBuilder(cfg, seq).build();
        last = validate_model(m, cfg.validation);
        if (last.accepted()) return m;
    }
    std::ostringstream os;
    os << "no valid model after " << cfg.max_attempts << " attempts (seed " << cfg.seed << ", index " << index
       << "); last candidate: " << last;
    throw GenerationError(os.str());
}

inline std::vector<NalModel> generate_models(const GenConfig& cfg) {
    std::vector<NalModel> out;
    out.reserve(cfg.sample_count);
    for (std::size_t i = 0; i < cfg.sample_count; ++i) out.push_back(generate_model(cfg, i));
    return out;
}

// ---------------------------------------------------------------------------
// Soundness fuzzing

struct NamedDerivation {
    std::string name;
    Derivation derivation;
};

struct NamedModel {
    std::string name;
    NalModel model;
};

struct SoundnessViolation {
    std::string proof;
    std::string model;
    std::size_t model_index = 0;
    WorldId world = 0;
    std::string world_name;
    Valuation valuation;
    Sequent sequent;
};

struct SoundnessReport {
    std::size_t proofs = 0;
    std::size_t models = 0;
    std::size_t points = 0;
    std::vector<SoundnessViolation> violations;
    /// Proofs or models skipped because they failed their own checks.
    std::vector<std::string> precondition_failures;

    bool clean() const { return violations.empty() && precondition_failures.empty(); }
};

using EvaluatorFactory = std::function<std::unique_ptr<Evaluator>(const NalModel&)>;

inline EvaluatorFactory default_evaluator() {
    return [](const NalModel& m) { return std::make_unique<Evaluator>(m); };
}

/// Checks every root sequent at every (model, world, valuation) point. Each
/// (proof, model) pair contributes at most one violation: its first
/// falsifying point.
inline SoundnessReport soundness_check(const std::vector<NamedDerivation>& proofs,
                                       const std::vector<NamedModel>& models,
                                       const EvaluatorFactory& make = default_evaluator(),
                                       const Signature* sig = nullptr, const KernelOptions& kopts = {}) {
    SoundnessReport rep;
    std::vector<const NamedDerivation*> ok_proofs;
    for (const auto& p : proofs) {
        if (sig && !check_derivation(p.derivation, *sig, kopts).accepted()) {
            rep.precondition_failures.push_back("proof " + p.name + " is rejected by the kernel");
            continue;
        }
        ok_proofs.push_back(&p);
    }
    std::vector<std::size_t> ok_models;
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (!validate_model(models[i].model).accepted()) {
            rep.precondition_failures.push_back("model " + models[i].name + " is rejected by the validator");
            continue;
        }
        ok_models.push_back(i);
    }
    rep.proofs = ok_proofs.size();
    rep.models = ok_models.size();
    for (std::size_t mi : ok_models) {
        const auto& nm = models[mi];
        auto ev = make(nm.model);
        for (const auto* p : ok_proofs) {
            const Sequent& s = p->derivation.conclusion;
            VarSet fv = s.free_vars();
            bool found = false;
            for (WorldId w = 0; w < nm.model.world_count() && !found; ++w)
                for (const auto& v : enumerate_valuations(nm.model.at(w).domain, fv)) {
                    ++rep.points;
                    if (!ev->entails_at(w, v, s)) {
                        rep.violations.push_back({p->name, nm.name, mi, w, nm.model.world_names[w], v, s});
                        found = true;
                        break;
                    }
                }
        }
    }
    return rep;
}

inline std::string format_valuation(const NalModel& m, const Valuation& v) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, d] : v) {
        out += (first ? "" : ", ") + x + " -> " + m.individual_names.at(d);
        first = false;
    }
    return out + "}";
}

inline std::string format_report(const SoundnessReport& rep, const std::vector<NamedModel>& models) {
    std::ostringstream os;
    os << "proofs: " << rep.proofs << "\nmodels: " << rep.models << "\npoints: " << rep.points
       << "\nviolations: " << rep.violations.size() << '\n';
    for (const auto& f : rep.precondition_failures) os << "precondition: " << f << '\n';
    for (const auto& v : rep.violations)
        os << "violation: " << v.proof << " fails in " << v.model << " at " << v.world_name << ' '
           << format_valuation(models.at(v.model_index).model, v.valuation) << ": " << render(v.sequent) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Bounded countermodel search

struct Countermodel {
    NalModel model;
    WorldId world = 0;
};

struct SearchStats {
    std::size_t candidates = 0;
    std::size_t validated = 0;
};

namespace detail {

inline void collect_symbols(const Term& t, std::map<std::string, std::size_t>& fs,
                            std::map<std::string, std::size_t>& rs);
inline void collect_symbols(const Formula& f, std::map<std::string, std::size_t>& fs,
                            std::map<std::string, std::size_t>& rs) {
    if (f.kind() == FormulaKind::Relation) rs[f.name()] = f.terms().size();
    for (const auto& t : f.terms()) collect_symbols(t, fs, rs);
    for (const auto& s : f.subs()) collect_symbols(s, fs, rs);
}
inline void collect_symbols(const Term& t, std::map<std::string, std::size_t>& fs,
                            std::map<std::string, std::size_t>& rs) {
    if (t.kind() == TermKind::Application) fs[t.name()] = t.args().size();
    for (const auto& a : t.args()) collect_symbols(a, fs, rs);
    if (t.kind() == TermKind::Group) collect_symbols(t.body(), fs, rs);
}

/// Up-closed subsets of worlds under R, as bit masks, smallest first.
inline std::vector<unsigned> up_closed_sets(const WorldRelation& R) {
    std::size_t n = R.size();
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (WorldId w = 0; w < n && ok; ++w)
            if (mask >> w & 1u)
                for (WorldId u = 0; u < n && ok; ++u) ok = !R.contains(w, u) || (mask >> u & 1u);
        if (ok) out.push_back(mask);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
    return out;
}

/// Accessibility relations satisfying F1/F2/IT/ID for a fixed order.
inline std::vector<WorldRelation> frame_valid_relations(const WorldRelation& L, bool f1) {
    std::size_t n = L.size(), cells = n * n;
    std::vector<WorldRelation> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
        WorldRelation a(n);
        for (std::size_t c = 0; c < cells; ++c)
            if (bits >> c & 1u) a.insert(c / n, c % n);
        WorldRelation copy = a;
        if (!frame_step(L, copy, f1)) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace detail

/// Enumerates models with 1..max_worlds worlds, orders compatible with the
/// world index (a canonical form that cuts isomorphic copies), chain
/// principal lattices of up to max_principals elements, domain equal to the
/// principal individuals, constant function tables and up-closed relation
/// extensions. Returns the first validated model falsifying the closed
/// formula f at some world.
inline std::optional<Countermodel> find_countermodel(const Formula& f, const GenConfig& bound,
                                                     SearchStats* stats = nullptr) {
    if (!free_vars(f).empty()) throw std::invalid_argument("find_countermodel expects a closed formula");
    SearchStats local;
    SearchStats& st = stats ? *stats : local;

    std::map<std::string, std::size_t> used_f, used_r;
    detail::collect_symbols(f, used_f, used_r);
    Signature sig = bound.signature;
    for (const auto& [s, n] : used_f) sig.functions.try_emplace(s, n);
    for (const auto& [s, n] : used_r) sig.relations.try_emplace(s, n);

    for (std::size_t n = 1; n <= bound.max_worlds; ++n) {
        std::vector<std::pair<WorldId, WorldId>> upper;
        for (WorldId i = 0; i < n; ++i)
            for (WorldId j = i + 1; j < n; ++j) upper.emplace_back(i, j);
        for (std::uint64_t lb = 0; lb < (std::uint64_t{1} << upper.size()); ++lb) {
            WorldRelation L = WorldRelation::identity(n);
            for (std::size_t i = 0; i < upper.size(); ++i)
                if (lb >> i & 1u) L.insert(upper[i].first, upper[i].second);
            if (!(reflexive_transitive_closure(L) == L)) continue;
            auto frames = detail::frame_valid_relations(L, bound.validation.enforce_f1);

            for (std::size_t k = 1; k <= std::max<std::size_t>(1, bound.max_principals); ++k) {
                NalModel m;
                m.signature = sig;
                for (std::size_t i = 0; i < n; ++i) m.world_names.push_back("w" + std::to_string(i));
                for (std::size_t i = 0; i < k; ++i) {
                    m.principal_names.push_back(i == 0 ? "bot" : "p" + std::to_string(i));
                    m.individual_names.push_back("d_" + m.principal_names.back());
                }
                m.leq = L;
                m.bottom = 0;
                m.join.assign(k, std::vector<Principal>(k));
                for (Principal p = 0; p < k; ++p)
                    for (Principal q = 0; q < k; ++q) m.join[p][q] = std::max(p, q);

                std::vector<std::string> fnames;
                for (const auto& [s, _] : sig.functions) fnames.push_back(s);
                std::vector<std::string> enum_f;
                for (const auto& s : fnames)
                    if (used_f.count(s)) enum_f.push_back(s);

                std::optional<Countermodel> found;
                std::vector<std::size_t> fvals(enum_f.size(), 0);
                std::vector<std::size_t> access_idx(k, 0);

                // Access families: chain join-access means A_q within A_p for p <= q.
                std::function<bool(std::size_t)> choose_access;
                std::function<bool()> finish;

                finish = [&]() -> bool {
                    WorldRelation R = growth_relation(m);
                    auto ups = detail::up_closed_sets(R);
                    std::set<Individual> dom;
                    for (Individual d = 0; d < k; ++d) dom.insert(d);
                    std::vector<std::pair<std::string, Tuple>> cells;
                    for (const auto& [r, ar] : sig.relations)
                        if (used_r.count(r))
                            for (const auto& t : tuples_over(dom, ar)) cells.emplace_back(r, t);
                    std::vector<std::size_t> pick(cells.size(), 0);
                    while (true) {
                        ++st.candidates;
                        m.structures.assign(n, {});
                        for (WorldId w = 0; w < n; ++w) {
                            auto& s = m.structures[w];
                            s.domain = dom;
                            for (Individual d : dom) {
                                s.eq_class[d] = d;
                                s.pi[d] = d;
                            }
                            for (Principal p = 0; p < k; ++p) {
                                s.delta[p] = p;
                                for (Individual d : dom) s.sub[{p, d}] = p;
                            }
                            for (const auto& [fn, ar] : sig.functions) {
                                auto it = std::find(enum_f.begin(), enum_f.end(), fn);
                                Individual val = it == enum_f.end() ? 0 : fvals[it - enum_f.begin()];
                                for (const auto& t : tuples_over(dom, ar)) s.functions[fn][t] = val;
                            }
                            for (const auto& [r, _] : sig.relations) s.relations[r];
                            for (std::size_t c = 0; c < cells.size(); ++c)
                                if (ups[pick[c]] >> w & 1u) s.relations[cells[c].first].insert(cells[c].second);
                        }
                        Evaluator ev(m);
                        for (WorldId w = 0; w < n; ++w)
                            if (!ev.holds(w, {}, f)) {
                                ++st.validated;
                                if (validate_model(m, bound.validation).accepted()) {
                                    found = Countermodel{m, w};
                                    return true;
                                }
                                break;
                            }
                        std::size_t c = 0;
                        while (c < cells.size() && ++pick[c] == ups.size()) pick[c++] = 0;
                        if (c == cells.size()) return false;
                    }
                };

                choose_access = [&](std::size_t depth) -> bool {
                    // depth counts down from the top principal to bottom.
                    if (depth == k) return finish();
                    Principal p = k - 1 - depth;
                    for (const auto& a : frames) {
                        if (p + 1 < k && !m.access[p + 1].subset_of(a)) continue;
                        m.access[p] = a;
                        if (choose_access(depth + 1)) return true;
                    }
                    return false;
                };

                while (true) {
                    m.access.assign(k, WorldRelation(n));
                    if (choose_access(0)) return found;
                    std::size_t i = 0;
                    while (i < fvals.size() && ++fvals[i] == k) fvals[i++] = 0;
                    if (i == fvals.size()) break;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace nal
