#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nal/ast.hpp"
#include "nal/report.hpp"

namespace nal {

using WorldId = std::size_t;
using Individual = std::size_t;
using Principal = std::size_t;
using Tuple = std::vector<Individual>;

/// Binary relation on worlds, stored as a dense matrix.
class WorldRelation {
public:
    WorldRelation() = default;
    explicit WorldRelation(std::size_t n) : n_(n), bits_(n * n, false) {}

    static WorldRelation identity(std::size_t n) {
        WorldRelation r(n);
        for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
        return r;
    }

    std::size_t size() const noexcept { return n_; }
    bool contains(WorldId a, WorldId b) const { return bits_[a * n_ + b]; }
    /// Returns true if the pair was new.
    bool insert(WorldId a, WorldId b) {
        if (bits_[a * n_ + b]) return false;
        bits_[a * n_ + b] = true;
        return true;
    }
    void erase(WorldId a, WorldId b) { bits_[a * n_ + b] = false; }

    std::vector<std::pair<WorldId, WorldId>> pairs() const {
        std::vector<std::pair<WorldId, WorldId>> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (contains(a, b)) out.emplace_back(a, b);
        return out;
    }

    bool empty() const {
        for (bool b : bits_)
            if (b) return false;
        return true;
    }

    bool subset_of(const WorldRelation& o) const {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !o.bits_[i]) return false;
        return true;
    }

    /// Adds every pair of `o`; returns true if anything changed.
    bool absorb(const WorldRelation& o) {
        bool changed = false;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (o.bits_[i] && !bits_[i]) {
                bits_[i] = true;
                changed = true;
            }
        return changed;
    }

    bool operator==(const WorldRelation&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<bool> bits_;
};

/// First-order structure of one world plus its sub/delta/pi tables.
struct WorldStructure {
    std::set<Individual> domain;
    /// =_w as a class label per domain element.
    std::map<Individual, std::size_t> eq_class;
    std::map<std::string, std::set<Tuple>> relations;
    std::map<std::string, std::map<Tuple, Individual>> functions;
    std::map<std::pair<Principal, Individual>, Principal> sub;
    std::map<Principal, Individual> delta;
    std::map<Individual, Principal> pi;

    bool has(Individual d) const { return domain.count(d) != 0; }

    bool equal(Individual a, Individual b) const {
        if (a == b) return has(a);
        auto ia = eq_class.find(a), ib = eq_class.find(b);
        return ia != eq_class.end() && ib != eq_class.end() && ia->second == ib->second;
    }

    std::vector<std::vector<Individual>> eq_classes() const {
        std::map<std::size_t, std::vector<Individual>> by_label;
        for (auto [d, c] : eq_class) by_label[c].push_back(d);
        std::vector<std::vector<Individual>> out;
        for (auto& [c, members] : by_label) out.push_back(std::move(members));
        return out;
    }
};

/// A finite NAL model: worlds with constructive order, per-world
/// structures, a principal join semilattice and per-principal accessibility.
struct NalModel {
    Signature signature;
    std::vector<std::string> world_names;
    std::vector<std::string> principal_names;
    std::vector<std::string> individual_names;

    WorldRelation leq;
    std::vector<WorldStructure> structures;
    std::vector<std::vector<Principal>> join;
    Principal bottom = 0;
    std::vector<WorldRelation> access;

    std::size_t world_count() const noexcept { return world_names.size(); }
    std::size_t principal_count() const noexcept { return principal_names.size(); }

    const WorldStructure& at(WorldId w) const { return structures.at(w); }

    Principal join2(Principal p, Principal q) const { return join.at(p).at(q); }

    std::vector<WorldId> successors(WorldId w) const {
        std::vector<WorldId> out;
        for (WorldId v = 0; v < world_count(); ++v)
            if (leq.contains(w, v)) out.push_back(v);
        return out;
    }

    std::optional<WorldId> world_by_name(const std::string& name) const {
        for (WorldId w = 0; w < world_names.size(); ++w)
            if (world_names[w] == name) return w;
        return std::nullopt;
    }
    std::optional<Individual> individual_by_name(const std::string& name) const {
        for (Individual d = 0; d < individual_names.size(); ++d)
            if (individual_names[d] == name) return d;
        return std::nullopt;
    }
};

/// Variable assignment. Images must lie in the domain of the world where the
/// valuation is used.
using Valuation = std::map<std::string, Individual>;

struct ValidateOptions {
    /// F1 is only required by a diamond modality, which NAL lacks.
    bool enforce_f1 = true;
};

// ---------------------------------------------------------------------------
// Lattice and coercion helpers

/// Least upper bound; the empty join is bottom.
template <class Range>
Principal join_all(const NalModel& m, const Range& ps) {
    Principal acc = m.bottom;
    for (Principal p : ps) acc = m.join2(acc, p);
    return acc;
}

inline Principal join_all(const NalModel& m, std::initializer_list<Principal> ps) {
    return join_all<std::initializer_list<Principal>>(m, ps);
}

/// A_{pi_w(d)}: the accessibility of the principal that d denotes at w.
inline const WorldRelation& accessible(const NalModel& m, WorldId w, Individual d) {
    const auto& s = m.at(w);
    auto it = s.pi.find(d);
    if (!s.has(d) || it == s.pi.end())
        throw std::out_of_range("individual " + std::to_string(d) + " is not in the domain of world " +
                                std::to_string(w));
    return m.access.at(it->second);
}

/// p =_P q iff delta_w(p) =_w delta_w(q) at every world.
inline bool principals_equal(const NalModel& m, Principal p, Principal q) {
    for (const auto& s : m.structures) {
        auto ip = s.delta.find(p), iq = s.delta.find(q);
        if (ip == s.delta.end() || iq == s.delta.end() || !s.equal(ip->second, iq->second)) return false;
    }
    return true;
}

/// All tuples of length n over a domain.
inline std::vector<Tuple> tuples_over(const std::set<Individual>& domain, std::size_t n) {
    std::vector<Tuple> out{Tuple{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Tuple> next;
        for (const auto& t : out)
            for (Individual d : domain) {
                auto u = t;
                u.push_back(d);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace detail {

class ModelValidator {
public:
    ModelValidator(const NalModel& m, const ValidateOptions& opts) : m_(m), opts_(opts) {}

    CheckReport run() {
        if (!shape()) return report_;
        for (WorldId w = 0; w < m_.world_count(); ++w) world(w);
        if (!report_.accepted()) return report_;
        partial_order();
        for (WorldId a = 0; a < n(); ++a)
            for (WorldId b = 0; b < n(); ++b)
                if (a != b && m_.leq.contains(a, b)) monotone(a, b, "leq-monotonicity", "<=");
        for (Principal p = 0; p < k(); ++p)
            for (auto [a, b] : m_.access[p].pairs())
                monotone(a, b, "access-monotonicity", "A_" + pname(p));
        semilattice();
        join_access();
        sub_containment();
        for (Principal p = 0; p < k(); ++p) frame(p);
        return report_;
    }

private:
    const NalModel& m_;
    const ValidateOptions& opts_;
    CheckReport report_;

    std::size_t n() const { return m_.world_count(); }
    std::size_t k() const { return m_.principal_count(); }
    std::string wname(WorldId w) const { return m_.world_names[w]; }
    std::string pname(Principal p) const { return m_.principal_names[p]; }
    std::string iname(Individual d) const {
        return d < m_.individual_names.size() ? m_.individual_names[d] : "#" + std::to_string(d);
    }
    std::string tname(const Tuple& t) const {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + iname(t[i]);
        return s + ")";
    }

    void fail(const std::string& path, const std::string& tag, const std::string& why) {
        report_.fail(path, tag, why);
    }

    bool shape() {
        bool ok = true;
        auto bad = [&](const std::string& why) {
            fail("model", "structure", why);
            ok = false;
        };
        if (n() == 0) bad("model has no worlds");
        if (k() == 0) bad("model has no principals");
        if (m_.structures.size() != n()) bad("expected one structure per world");
        if (m_.leq.size() != n()) bad("leq is not a relation on the worlds");
        if (m_.access.size() != k()) bad("expected one accessibility relation per principal");
        for (const auto& a : m_.access)
            if (a.size() != n()) bad("accessibility relation has the wrong dimension");
        if (m_.bottom >= k()) bad("bottom is not a principal");
        if (m_.join.size() != k()) bad("join table must have one row per principal");
        for (const auto& row : m_.join) {
            if (row.size() != k()) bad("join table row has the wrong length");
            for (Principal p : row)
                if (p >= k()) bad("join table names an unknown principal");
        }
        return ok;
    }

    void world(WorldId w) {
        const auto& s = m_.structures[w];
        std::string path = "world " + wname(w);
        for (Individual d : s.domain)
            if (!s.eq_class.count(d)) fail(path, "structure", "individual " + iname(d) + " has no equality class");
        for (auto [d, c] : s.eq_class)
            if (!s.has(d)) fail(path, "structure", "equality class mentions " + iname(d) + " outside the domain");

        for (const auto& [r, tuples] : s.relations) {
            auto ar = m_.signature.relations.find(r);
            for (const auto& t : tuples) {
                if (ar != m_.signature.relations.end() && t.size() != ar->second)
                    fail(path, "structure", "relation " + r + " tuple " + tname(t) + " has the wrong arity");
                for (Individual d : t)
                    if (!s.has(d)) fail(path, "structure", "relation " + r + " tuple " + tname(t) + " leaves the domain");
            }
        }
        for (const auto& [f, arity] : m_.signature.functions) {
            auto it = s.functions.find(f);
            for (const auto& t : tuples_over(s.domain, arity)) {
                if (it == s.functions.end() || !it->second.count(t)) {
                    fail(path, "structure", "function " + f + " is undefined at " + tname(t));
                    continue;
                }
                if (!s.has(it->second.at(t)))
                    fail(path, "structure", "function " + f + tname(t) + " leaves the domain");
            }
        }
        for (Principal p = 0; p < k(); ++p) {
            for (Individual d : s.domain) {
                auto it = s.sub.find({p, d});
                if (it == s.sub.end()) fail(path, "structure", "sub(" + pname(p) + "," + iname(d) + ") is undefined");
                else if (it->second >= k()) fail(path, "structure", "sub names an unknown principal");
            }
            auto it = s.delta.find(p);
            if (it == s.delta.end() || !s.has(it->second))
                fail(path, "structure", "delta(" + pname(p) + ") is not an individual of this world");
        }
        for (Individual d : s.domain) {
            auto it = s.pi.find(d);
            if (it == s.pi.end() || it->second >= k()) fail(path, "structure", "pi(" + iname(d) + ") is undefined");
        }
        if (!report_.accepted()) return;

        // Equality is indistinguishable by relations and functions.
        for (const auto& [r, tuples] : s.relations)
            for (const auto& t : tuples)
                for (const auto& u : tuples_over(s.domain, t.size()))
                    if (!tuples.count(u) && same_tuple(s, t, u))
                        fail(path, "eq-respect", "relation " + r + " holds at " + tname(t) + " but not at equal " +
                                                     tname(u));
        for (const auto& [f, table] : s.functions)
            for (const auto& [t, v] : table)
                for (const auto& [u, v2] : table)
                    if (t < u && same_tuple(s, t, u) && !s.equal(v, v2))
                        fail(path, "eq-respect", "function " + f + " separates equal arguments " + tname(t) + " and " +
                                                     tname(u));
        for (Principal p = 0; p < k(); ++p)
            for (Individual d : s.domain)
                for (Individual e : s.domain)
                    if (d < e && s.equal(d, e) && s.sub.at({p, d}) != s.sub.at({p, e}))
                        fail(path, "eq-respect", "sub(" + pname(p) + ", _) separates equal individuals");

        // Coercions.
        for (Principal p = 0; p < k(); ++p)
            for (Principal q = p + 1; q < k(); ++q)
                if (s.delta.at(p) == s.delta.at(q))
                    fail(path, "delta-injective",
                         "delta maps " + pname(p) + " and " + pname(q) + " to the same individual " +
                             iname(s.delta.at(p)));
        for (Individual d : s.domain) {
            Principal expected = m_.bottom;
            for (Principal p = 0; p < k(); ++p)
                if (s.equal(d, s.delta.at(p))) {
                    expected = p;
                    break;
                }
            if (s.pi.at(d) != expected)
                fail(path, "pi-coercion", "pi(" + iname(d) + ") is " + pname(s.pi.at(d)) + ", expected " +
                                              pname(expected));
        }
    }

    static bool same_tuple(const WorldStructure& s, const Tuple& a, const Tuple& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!s.equal(a[i], b[i])) return false;
        return true;
    }

    void partial_order() {
        const auto& L = m_.leq;
        for (WorldId a = 0; a < n(); ++a) {
            if (!L.contains(a, a)) fail("leq", "leq-partial-order", "leq is not reflexive at " + wname(a));
            for (WorldId b = 0; b < n(); ++b) {
                if (a != b && L.contains(a, b) && L.contains(b, a))
                    fail("leq", "leq-partial-order", "leq is not antisymmetric on " + wname(a) + ", " + wname(b));
                for (WorldId c = 0; c < n(); ++c)
                    if (L.contains(a, b) && L.contains(b, c) && !L.contains(a, c))
                        fail("leq", "leq-partial-order",
                             "leq is not transitive on " + wname(a) + " <= " + wname(b) + " <= " + wname(c));
            }
        }
    }

    // Growth from world a to world b: domain, equality, relations and the
    // function, sub, delta and pi tables.
    void monotone(WorldId a, WorldId b, const std::string& tag, const std::string& via) {
        const auto &sa = m_.structures[a], &sb = m_.structures[b];
        std::string path = wname(a) + " " + via + " " + wname(b);
        auto bad = [&](const std::string& why) { fail(path, tag, why); };
        for (Individual d : sa.domain)
            if (!sb.has(d)) return bad("individual " + iname(d) + " disappears");
        for (Individual d : sa.domain)
            for (Individual e : sa.domain)
                if (d < e && sa.equal(d, e) && !sb.equal(d, e))
                    return bad("equality " + iname(d) + " = " + iname(e) + " is lost");
        for (const auto& [r, tuples] : sa.relations) {
            auto it = sb.relations.find(r);
            for (const auto& t : tuples)
                if (it == sb.relations.end() || !it->second.count(t))
                    return bad("relation " + r + tname(t) + " is lost");
        }
        for (const auto& [f, table] : sa.functions) {
            auto it = sb.functions.find(f);
            for (const auto& [t, v] : table) {
                if (it == sb.functions.end() || !it->second.count(t))
                    return bad("function " + f + " is undefined at " + tname(t));
                if (!sb.equal(v, it->second.at(t))) return bad("function " + f + tname(t) + " changes value");
            }
        }
        for (const auto& [key, q] : sa.sub)
            if (sb.sub.count(key) && sb.sub.at(key) != q)
                return bad("sub(" + pname(key.first) + "," + iname(key.second) + ") changes value");
        for (Principal p = 0; p < k(); ++p)
            if (!sb.equal(sa.delta.at(p), sb.delta.at(p))) return bad("delta(" + pname(p) + ") changes value");
        for (Individual d : sa.domain)
            if (sa.pi.at(d) != sb.pi.at(d)) return bad("pi(" + iname(d) + ") changes value");
    }

    void semilattice() {
        auto J = [&](Principal p, Principal q) { return m_.join[p][q]; };
        for (Principal p = 0; p < k(); ++p) {
            if (J(p, p) != p) fail("join", "semilattice", "join is not idempotent at " + pname(p));
            if (J(m_.bottom, p) != p) fail("join", "semilattice", "bottom is not neutral for " + pname(p));
            for (Principal q = 0; q < k(); ++q) {
                if (J(p, q) != J(q, p))
                    fail("join", "semilattice", "join is not commutative on " + pname(p) + ", " + pname(q));
                for (Principal r = 0; r < k(); ++r)
                    if (J(J(p, q), r) != J(p, J(q, r)))
                        fail("join", "semilattice",
                             "join is not associative on " + pname(p) + ", " + pname(q) + ", " + pname(r));
            }
        }
    }

    void join_access() {
        for (Principal p = 0; p < k(); ++p)
            for (Principal q = 0; q < k(); ++q) {
                Principal j = m_.join[p][q];
                if (!m_.access[j].subset_of(m_.access[p]))
                    fail("access", "join-access",
                         "A_" + pname(j) + " (join of " + pname(p) + ", " + pname(q) + ") is not contained in A_" +
                             pname(p));
            }
    }

    void sub_containment() {
        for (WorldId w = 0; w < n(); ++w)
            for (const auto& [key, q] : m_.structures[w].sub)
                if (!m_.access[q].subset_of(m_.access[key.first]))
                    fail("world " + wname(w), "sub-containment",
                         "sub(" + pname(key.first) + "," + iname(key.second) + ") = " + pname(q) + " but A_" +
                             pname(q) + " is not contained in A_" + pname(key.first));
    }

    void frame(Principal p) {
        const auto& L = m_.leq;
        const auto& A = m_.access[p];
        std::string path = "A_" + pname(p);
        for (WorldId w = 0; w < n(); ++w)
            for (WorldId v = 0; v < n(); ++v) {
                if (!A.contains(w, v)) continue;
                if (opts_.enforce_f1)
                    for (WorldId w2 = 0; w2 < n(); ++w2) {
                        if (!L.contains(w, w2)) continue;
                        bool found = false;
                        for (WorldId v2 = 0; v2 < n() && !found; ++v2) found = L.contains(v, v2) && A.contains(w2, v2);
                        if (!found)
                            fail(path, "F1", wname(w) + " <= " + wname(w2) + " and (" + wname(w) + "," + wname(v) +
                                                 ") in A, but no v' >= " + wname(v) + " with (" + wname(w2) +
                                                 ",v') in A");
                    }
                for (WorldId v2 = 0; v2 < n(); ++v2) {
                    if (!L.contains(v, v2)) continue;
                    bool found = false;
                    for (WorldId w2 = 0; w2 < n() && !found; ++w2) found = L.contains(w, w2) && A.contains(w2, v2);
                    if (!found)
                        fail(path, "F2", "(" + wname(w) + "," + wname(v) + ") in A and " + wname(v) + " <= " +
                                             wname(v2) + ", but no w' >= " + wname(w) + " with (w'," + wname(v2) +
                                             ") in A");
                }
                for (WorldId u = 0; u < n(); ++u) {
                    if (!A.contains(v, u)) continue;
                    bool found = false;
                    for (WorldId w2 = 0; w2 < n() && !found; ++w2) found = L.contains(w, w2) && A.contains(w2, u);
                    if (!found)
                        fail(path, "IT", "(" + wname(w) + "," + wname(v) + ") and (" + wname(v) + "," + wname(u) +
                                             ") in A, but no w' >= " + wname(w) + " with (w'," + wname(u) + ") in A");
                }
                // ID, reading (w, v) as the pair (w, u) of the condition.
                bool found = false;
                for (WorldId w2 = 0; w2 < n() && !found; ++w2) {
                    if (!L.contains(w, w2)) continue;
                    for (WorldId mid = 0; mid < n() && !found; ++mid)
                        found = A.contains(w2, mid) && A.contains(mid, v);
                }
                if (!found)
                    fail(path, "ID", "(" + wname(w) + "," + wname(v) + ") in A, but no w' >= " + wname(w) +
                                         " and v with (w',v), (v," + wname(v) + ") in A");
            }
    }
};

}  // namespace detail

/// The single authority on model acceptance: one failure per violated
/// condition, tagged by condition.
inline CheckReport validate_model(const NalModel& m, const ValidateOptions& opts = {}) {
    return detail::ModelValidator(m, opts).run();
}

}  // namespace nal
