#pragma once

#include <string>
#include <vector>

#include "poalg/parse.hpp"

namespace poalg {

struct Rule {
    std::string name;
    Term lhs;
    Term rhs;

    Rule(std::string rule_name, Term left, Term right)
        : name(std::move(rule_name)), lhs(std::move(left)), rhs(std::move(right)) {
        if (lhs.arity() != rhs.arity()) throw ArityMismatch("rule '" + name + "' is not parallel");
    }
};

using RuleSet = std::vector<Rule>;

/// The rewriting system of poalgebras, oriented left to right.
///
/// Groups: monoid and comonoid with (co)commutativity (8), bialgebra,
/// unit-counit, qualitativity and transitivity (4), involutivity and
/// Yang-Baxter for gamma (2), naturality of gamma w.r.t. eta, eps, mu,
/// delta, sigma (10).
inline const RuleSet& poalgebra_rules() {
    static const RuleSet rules = [] {
        const std::pair<const char*, std::pair<const char*, const char*>> table[] = {
            {"unit_l", {"(eta * id1) ; mu", "id1"}},
            {"unit_r", {"(id1 * eta) ; mu", "id1"}},
            {"assoc", {"(mu * id1) ; mu", "(id1 * mu) ; mu"}},
            {"com", {"gamma ; mu", "mu"}},
            {"counit_l", {"delta ; (eps * id1)", "id1"}},
            {"counit_r", {"delta ; (id1 * eps)", "id1"}},
            {"coassoc", {"delta ; (delta * id1)", "delta ; (id1 * delta)"}},
            {"cocom", {"delta ; gamma", "delta"}},
            {"bialgebra", {"mu ; delta", "(delta * delta) ; (id1 * gamma * id1) ; (mu * mu)"}},
            {"unit_counit", {"eta ; eps", "id0"}},
            {"qualitative", {"delta ; mu", "id1"}},
            {"transitivity", {"delta ; (id1 * sigma) ; mu", "sigma"}},
            {"gamma_inv", {"gamma ; gamma", "id2"}},
            {"yang_baxter",
             {"(gamma * id1) ; (id1 * gamma) ; (gamma * id1)", "(id1 * gamma) ; (gamma * id1) ; (id1 * gamma)"}},
            {"nat_eta_l", {"(eta * id1) ; gamma", "id1 * eta"}},
            {"nat_eta_r", {"eta * id1", "(id1 * eta) ; gamma"}},
            {"nat_eps_r", {"eps * id1", "gamma ; (id1 * eps)"}},
            {"nat_eps_l", {"gamma ; (eps * id1)", "id1 * eps"}},
            {"nat_mu_l", {"(mu * id1) ; gamma", "(id1 * gamma) ; (gamma * id1) ; (id1 * mu)"}},
            {"nat_mu_r", {"(gamma * id1) ; (id1 * gamma) ; (mu * id1)", "(id1 * mu) ; gamma"}},
            {"nat_delta_l", {"gamma ; (delta * id1)", "(id1 * delta) ; (gamma * id1) ; (id1 * gamma)"}},
            {"nat_delta_r", {"(delta * id1) ; (id1 * gamma) ; (gamma * id1)", "gamma ; (id1 * delta)"}},
            {"nat_sigma_l", {"(sigma * id1) ; gamma", "gamma ; (id1 * sigma)"}},
            {"nat_sigma_r", {"gamma ; (sigma * id1)", "(id1 * sigma) ; gamma"}},
        };
        RuleSet out;
        for (const auto& [name, sides] : table) out.emplace_back(name, parse(sides.first), parse(sides.second));
        return out;
    }();
    return rules;
}

/// Unit and counit compatibility of the usual bialgebra definition.
///
/// They hold in the poset model but do not follow from poalgebra_rules(): on a
/// two-element set in Rel, take mu = comparison of equal inputs, delta = diagonal,
/// eta and eps total, sigma = id.  That model satisfies every base rule and
/// neither of these.
inline const RuleSet& unit_compatibility_rules() {
    static const RuleSet rules = [] {
        RuleSet out;
        out.emplace_back("counit_mu", parse("mu ; eps"), parse("eps * eps"));
        out.emplace_back("unit_delta", parse("eta ; delta"), parse("eta * eta"));
        return out;
    }();
    return rules;
}

/// poalgebra_rules() followed by unit_compatibility_rules().
inline const RuleSet& completed_rules() {
    static const RuleSet rules = [] {
        RuleSet out = poalgebra_rules();
        out.insert(out.end(), unit_compatibility_rules().begin(), unit_compatibility_rules().end());
        return out;
    }();
    return rules;
}

/// The rules not mentioning sigma: the qualitative bicommutative bialgebra subtheory.
inline RuleSet relation_rules(const RuleSet& base = completed_rules()) {
    RuleSet out;
    for (const auto& r : base) {
        if (!r.lhs.contains(Gen::sigma) && !r.rhs.contains(Gen::sigma)) out.push_back(r);
    }
    return out;
}

inline const Rule* find_rule(const RuleSet& rules, std::string_view name) {
    for (const auto& r : rules) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

}  // namespace poalg
