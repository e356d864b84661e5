#pragma once

// Random well-formed terms and formulas over a signature.

#include <random>
#include <string>
#include <vector>

#include "nal/ast.hpp"

namespace nal {

struct SyntaxGenOptions {
    std::size_t max_depth = 4;
    /// Free variables the generator may mention; binders draw from the same pool.
    std::vector<std::string> variables{"x", "y"};
    bool groups = true;
    bool subprincipals = true;
    bool quantifiers = true;
    bool delegation = true;
    bool says = true;
};

class SyntaxGenerator {
public:
    SyntaxGenerator(const Signature& sig, SyntaxGenOptions opts, std::uint64_t seed)
        : sig_(sig), opts_(std::move(opts)), rng_(seed) {
        for (const auto& [f, n] : sig_.functions) functions_.emplace_back(f, n);
        for (const auto& [r, n] : sig_.relations) relations_.emplace_back(r, n);
    }

    std::mt19937_64& rng() { return rng_; }

    Term term() { return term(opts_.max_depth); }
    Formula formula() { return formula(opts_.max_depth); }

    Term term(std::size_t depth) {
        bool can_var = !opts_.variables.empty();
        bool can_const = false;
        for (auto& [f, n] : functions_) can_const |= n == 0;
        if (depth == 0 || coin(0.35)) {
            if (can_var && (!can_const || coin(0.5))) return Term::variable(pick(opts_.variables));
            if (can_const) {
                std::vector<std::string> cs;
                for (auto& [f, n] : functions_)
                    if (n == 0) cs.push_back(f);
                return Term::apply(pick(cs));
            }
        }
        std::vector<int> choices;
        if (!functions_.empty()) choices.insert(choices.end(), {0, 0, 0});
        if (opts_.subprincipals) choices.push_back(1);
        if (opts_.groups) choices.push_back(2);
        if (choices.empty()) {
            if (!can_var) throw std::logic_error("signature and options admit no terms");
            return Term::variable(pick(opts_.variables));
        }
        switch (pick(choices)) {
            case 0: {
                auto [f, n] = pick(functions_);
                std::vector<Term> args;
                for (std::size_t i = 0; i < n; ++i) args.push_back(term(depth - 1));
                return Term::apply(f, std::move(args));
            }
            case 1: return Term::subprincipal(term(depth - 1), term(depth - 1));
            default: return Term::group(binder(), formula(depth - 1));
        }
    }

    Formula formula(std::size_t depth) {
        if (depth == 0 || coin(0.2)) return atom(depth);
        std::vector<int> choices{0, 1, 2, 3, 4, 4};
        if (opts_.quantifiers) choices.insert(choices.end(), {5, 6});
        if (opts_.says) choices.insert(choices.end(), {7, 7});
        if (opts_.delegation) choices.insert(choices.end(), {8, 9});
        Formula a = Formula::truth();
        switch (pick(choices)) {
            case 0: return Formula::conj(formula(depth - 1), formula(depth - 1));
            case 1: return Formula::disj(formula(depth - 1), formula(depth - 1));
            case 2: return Formula::implies(formula(depth - 1), formula(depth - 1));
            case 3: return Formula::negate(formula(depth - 1));
            case 4: return atom(depth);
            case 5: return Formula::forall(binder(), formula(depth - 1));
            case 6: return Formula::exists(binder(), formula(depth - 1));
            case 7: return Formula::says(term(depth - 1), formula(depth - 1));
            case 8: return Formula::speaksfor(term(depth - 1), term(depth - 1));
            default:
                return Formula::speaksfor_on(term(depth - 1), term(depth - 1), binder(), formula(depth - 1));
        }
    }

private:
    const Signature& sig_;
    SyntaxGenOptions opts_;
    std::mt19937_64 rng_;
    std::vector<std::pair<std::string, std::size_t>> functions_, relations_;

    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng_)];
    }

    std::string binder() { return opts_.variables.empty() ? std::string("x") : pick(opts_.variables); }

    Formula atom(std::size_t depth) {
        std::size_t tdepth = depth == 0 ? 0 : std::min<std::size_t>(depth - 1, 1);
        int k = std::uniform_int_distribution<int>(0, 9)(rng_);
        if (k == 0) return Formula::truth();
        if (k == 1) return Formula::falsity();
        if (k <= 3 || relations_.empty()) return Formula::equals(term(tdepth), term(tdepth));
        auto [r, n] = pick(relations_);
        std::vector<Term> args;
        for (std::size_t i = 0; i < n; ++i) args.push_back(term(tdepth));
        return Formula::relation(r, std::move(args));
    }
};

}  // namespace nal
