#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "poalg/canon.hpp"
#include "poalg/combinators.hpp"
#include "poalg/enumerate.hpp"
#include "poalg/factorization.hpp"
#include "poalg/interp.hpp"
#include "poalg/io.hpp"
#include "poalg/relation.hpp"
#include "poalg/rewrite.hpp"
#include "poalg/rules.hpp"

namespace poalg {

struct Failure {
    std::string id;
    std::string detail;
};

/// Outcome counts of one suite, with a record per failed case.
struct Report {
    explicit Report(std::string name = "") : suite(std::move(name)) {}

    std::string suite;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t inconclusive = 0;
    std::vector<Failure> failures;

    void check(bool ok, const std::string& id, const std::string& detail = "") {
        if (ok) {
            ++pass;
        } else {
            ++fail;
            failures.push_back({id, detail});
        }
    }

    void merge(const Report& other) {
        pass += other.pass;
        fail += other.fail;
        inconclusive += other.inconclusive;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }

    bool ok() const { return fail == 0; }
    std::size_t total() const { return pass + fail + inconclusive; }

    std::string text() const {
        std::string out = "SUITE " + suite + " pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) +
                          " inconclusive=" + std::to_string(inconclusive) + "\n";
        for (const auto& f : failures) out += "FAIL " + f.id + " " + f.detail + "\n";
        return out;
    }
};

/// All morphisms with at most `max_events` events, any arity.
inline EnumSpec events_up_to(std::size_t max_events) {
    EnumSpec spec;
    spec.max_events = max_events;
    spec.max_dom = max_events;
    spec.max_cod = max_events;
    return spec;
}

namespace detail {

inline std::string describe(const PosetMorphism& f) {
    std::string out = std::to_string(f.dom()) + "->" + std::to_string(f.cod()) + " k=" +
                      std::to_string(f.internal_count()) + " {";
    for (auto [a, b] : f.poset().hasse()) out += " " + event_name(f, a) + "<" + event_name(f, b);
    return out + " }";
}

inline std::string describe(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
    return "[" + out + "]";
}

inline std::string describe(const std::set<std::size_t>& s) { return describe(std::vector<std::size_t>(s.begin(), s.end())); }

}  // namespace detail

/// Every rule, and every rule whiskered as id_a * - * id_b with a+b <= max_pad, holds in the model.
inline Report suite_soundness(const RuleSet& rules = completed_rules(), std::size_t max_pad = 2) {
    Report r{"soundness"};
    for (const auto& rule : rules) {
        for (std::size_t a = 0; a <= max_pad; ++a) {
            for (std::size_t b = 0; a + b <= max_pad; ++b) {
                const bool ok = tp_equal(whisker(a, rule.lhs, b), whisker(a, rule.rhs, b));
                r.check(ok, rule.name + "/" + std::to_string(a) + "," + std::to_string(b), "sides differ in the model");
            }
        }
    }
    return r;
}

/// interp(canonical_term(f)) is isomorphic to f for every enumerated f.
inline Report suite_fullness(const EnumSpec& spec) {
    Report r{"fullness"};
    for (const auto& f : enumerate_morphisms(spec)) {
        r.check(isomorphic(interp(canonical_term(f)), f), detail::describe(f), "canonical term interprets differently");
    }
    return r;
}

/// Factorization data with m+k+n <= max_size satisfying both closure conditions.
inline std::vector<Factorization> transitive_factorizations(std::size_t max_size) {
    std::vector<Factorization> out;
    for (std::size_t m = 0; m <= max_size; ++m) {
        for (std::size_t k = 0; m + k <= max_size; ++k) {
            for (std::size_t n = 0; m + k + n <= max_size; ++n) {
                // Bits of `code`: block j takes m+j bits, then the closing relation takes (m+k)*n.
                std::size_t bits = (m + k) * n;
                for (std::size_t j = 0; j < k; ++j) bits += m + j;
                for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
                    Factorization F;
                    F.m = m;
                    F.k = k;
                    F.n = n;
                    F.blocks.resize(k);
                    std::size_t b = 0;
                    for (std::size_t j = 0; j < k; ++j) {
                        for (std::size_t i = 0; i < m + j; ++i, ++b) {
                            if ((code >> b) & 1U) F.blocks[j].insert(i);
                        }
                    }
                    F.closing = Relation(m + k, n);
                    for (std::size_t i = 0; i < m + k; ++i) {
                        for (std::size_t j = 0; j < n; ++j, ++b) {
                            if ((code >> b) & 1U) F.closing.insert(i, j);
                        }
                    }
                    if (is_transitive(F)) out.push_back(std::move(F));
                }
            }
        }
    }
    return out;
}

/// Both round trips between (morphism, linearization) pairs and transitive factorizations.
inline Report suite_bijection(const EnumSpec& spec, std::size_t max_fact_size = 5) {
    Report r{"bijection"};
    for (const auto& f : enumerate_morphisms(spec)) {
        for (const auto& x : linearizations(f)) {
            const Composite c = fact_compose(factorize(f, x));
            // Block j of the composite is internal event x[j] of f.
            const bool exact = c.morphism == f.permute_internal(x.order);
            const bool ok = exact && isomorphic(c.morphism, f) && c.induced == Linearization::identity(x.size());
            r.check(ok, detail::describe(f) + " x=" + detail::describe(x.order), "fact_compose o factorize differs");
        }
    }
    for (const auto& F : transitive_factorizations(max_fact_size)) {
        const Composite c = fact_compose(F);
        r.check(factorize(c.morphism, c.induced) == F, "F(" + std::to_string(F.m) + "," + std::to_string(F.k) + "," + std::to_string(F.n) + ")",
                "factorize o fact_compose differs");
    }
    return r;
}

/// switch(factorize(f,x), i) = factorize(f, x o tau_i) for every legal swap.
inline Report suite_switch_coherence(const EnumSpec& spec) {
    Report r{"switch-coherence"};
    for (const auto& f : enumerate_morphisms(spec)) {
        for (const auto& x : linearizations(f)) {
            const Factorization F = factorize(f, x);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                if (!f.independent(f.internal(x[i]), f.internal(x[i + 1]))) continue;
                const Linearization y = x * Transposition(x.size(), i);
                const Factorization G = switch_blocks(F, i);
                const bool ok = G == factorize(f, y) &&
                                isomorphic(fact_compose(G).morphism, fact_compose(F).morphism);
                r.check(ok, detail::describe(f) + " x=" + detail::describe(x.order) + " i=" + std::to_string(i),
                        "switched factorization differs");
            }
        }
    }
    return r;
}

/// The W, X and G identities between combinator terms, checked in the model for n <= max_n.
inline Report suite_term_laws(std::size_t max_n = 3) {
    Report r{"term-laws"};
    auto subsets = [](std::size_t n) {
        std::vector<std::set<std::size_t>> out;
        for (Mask s = 0; s < (Mask{1} << n); ++s) {
            std::set<std::size_t> x;
            detail::for_each_bit(s, [&](std::size_t e) { x.insert(e); });
            out.push_back(std::move(x));
        }
        return out;
    };
    auto tag = [](const char* law, std::size_t n, const std::string& rest) {
        return std::string(law) + "/n=" + std::to_string(n) + rest;
    };
    for (std::size_t n = 0; n <= max_n; ++n) {
        for (std::size_t i = 0; i < n; ++i) {
            const Term wi = w_term(n, i);
            r.check(tp_equal(Term::seq(wi, wi), wi), tag("w-idempotent", n, " i=" + std::to_string(i)));
            for (std::size_t j = i + 1; j < n; ++j) {
                const Term wj = w_term(n, j);
                r.check(tp_equal(Term::seq(wi, wj), Term::seq(wj, wi)),
                        tag("w-commute", n, " i=" + std::to_string(i) + " j=" + std::to_string(j)));
            }
        }
        const auto all = subsets(n);
        for (const auto& I : all) {
            for (const auto& J : all) {
                // X^{n+1}_J o X^n_I = G^n o X^{n+1}_I o X^n_J
                const Term lhs = Term::seq(x_term(n, I), x_term(n + 1, J));
                const Term rhs = seq_all({x_term(n, J), x_term(n + 1, I), g_term(n)});
                r.check(tp_equal(lhs, rhs), tag("x-swap", n, " I=" + detail::describe(I) + " J=" + detail::describe(J)));
            }
        }
        // X^{n+2}_I o G^n_i = G^{n+1}_i o X^{n+2}_{tau_i(I)} for I in [n+2], i in [n+1]
        for (const auto& I : subsets(n + 2)) {
            for (std::size_t i = 0; i <= n; ++i) {
                const Transposition tau(n + 2, i);
                std::set<std::size_t> moved;
                for (std::size_t e : I) moved.insert(tau(e));
                const Term lhs = Term::seq(g_term(n, i), x_term(n + 2, I));
                const Term rhs = Term::seq(x_term(n + 2, moved), g_term(n + 1, i));
                r.check(tp_equal(lhs, rhs), tag("g-natural", n, " I=" + detail::describe(I) + " i=" + std::to_string(i)));
            }
        }
    }
    return r;
}

/// Switch coherence together with the term-side laws.
inline Report suite_switch(const EnumSpec& spec, std::size_t max_n = 3) {
    Report r = suite_switch_coherence(spec);
    r.suite = "switch";
    r.merge(suite_term_laws(max_n));
    return r;
}

/// rel_to_poset preserves identities and composition and is injective up to isomorphism.
inline Report suite_relations(std::size_t max_arity = 3) {
    Report r{"relations"};
    std::vector<std::vector<std::vector<Relation>>> rels(max_arity + 1);
    for (std::size_t m = 0; m <= max_arity; ++m) {
        for (std::size_t n = 0; n <= max_arity; ++n) rels[m].push_back(all_relations(m, n));
    }
    for (std::size_t n = 0; n <= max_arity; ++n) {
        r.check(rel_to_poset(rel_id(n)) == identity(n), "identity/" + std::to_string(n));
    }
    for (std::size_t m = 0; m <= max_arity; ++m) {
        for (std::size_t n = 0; n <= max_arity; ++n) {
            std::set<CanonicalKey> keys;
            bool round_trip = true;
            for (const auto& a : rels[m][n]) {
                const PosetMorphism f = rel_to_poset(a);
                keys.insert(canonical_key(f));
                round_trip = round_trip && poset_to_rel(f) == a;
            }
            const std::string id = std::to_string(m) + "->" + std::to_string(n);
            r.check(round_trip, "round-trip/" + id);
            r.check(keys.size() == rels[m][n].size(), "injective/" + id, "two relations embed isomorphically");
            for (std::size_t p = 0; p <= max_arity; ++p) {
                std::size_t bad = 0;
                for (const auto& a : rels[m][n]) {
                    const PosetMorphism fa = rel_to_poset(a);
                    for (const auto& b : rels[n][p]) {
                        if (!isomorphic(rel_to_poset(rel_compose(a, b)), compose(fa, rel_to_poset(b)))) ++bad;
                    }
                }
                r.check(bad == 0, "compose/" + id + "->" + std::to_string(p), std::to_string(bad) + " composites differ");
            }
        }
    }
    return r;
}

namespace detail {

/// Isomorphism classes of strict orders on n unlabeled points, by brute force over all
/// relations and all relabelings.  Deliberately shares no code with enumerate_morphisms.
inline std::size_t brute_force_order_classes(std::size_t n) {
    const std::size_t cells = n * n;
    std::set<std::uint64_t> classes;
    std::vector<std::size_t> perm(n);
    for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << cells); ++rel) {
        auto lt = [&](std::size_t a, std::size_t b) { return (rel >> (a * n + b)) & 1U; };
        bool order = true;
        for (std::size_t a = 0; a < n && order; ++a) {
            if (lt(a, a)) order = false;
            for (std::size_t b = 0; b < n && order; ++b) {
                for (std::size_t c = 0; c < n && order; ++c) {
                    if (lt(a, b) && lt(b, c) && !lt(a, c)) order = false;
                }
            }
        }
        if (!order) continue;
        std::iota(perm.begin(), perm.end(), 0);
        std::uint64_t best = UINT64_MAX;
        do {
            std::uint64_t code = 0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (lt(a, b)) code |= std::uint64_t{1} << (perm[a] * n + perm[b]);
                }
            }
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        classes.insert(best);
    }
    return classes.size();
}

}  // namespace detail

/// Per-size counts of 0->0 classes from enumerate_morphisms.
inline std::vector<std::size_t> closed_class_counts(std::size_t max_events) {
    std::vector<std::size_t> counts(max_events + 1, 0);
    EnumSpec spec;
    spec.max_events = max_events;
    for (const auto& f : enumerate_morphisms(spec)) ++counts[f.event_count()];
    return counts;
}

/// Class counts against the brute-force oracle, key uniqueness, and closure under duality.
inline Report suite_enumeration(std::size_t max_closed = 4, std::size_t max_events = 5) {
    Report r{"enumeration"};
    const auto counts = closed_class_counts(max_closed);
    for (std::size_t e = 0; e <= max_closed; ++e) {
        const std::size_t oracle = detail::brute_force_order_classes(e);
        r.check(counts[e] == oracle, "count/" + std::to_string(e),
                "enumerated " + std::to_string(counts[e]) + ", oracle " + std::to_string(oracle));
    }
    const auto all = enumerate_morphisms(events_up_to(max_events));
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<const PosetMorphism*>> by_shape;
    std::set<CanonicalKey> keys;
    for (const auto& f : all) {
        r.check(keys.insert(canonical_key(f)).second, "unique/" + detail::describe(f), "duplicate key");
        by_shape[{f.dom(), f.cod(), f.internal_count()}].push_back(&f);
    }
    for (const auto& f : all) {
        r.check(keys.contains(canonical_key(dual(f))), "dual/" + detail::describe(f), "dual not enumerated");
    }
    // Distinct keys must mean non-isomorphic.
    for (const auto& [shape, group] : by_shape) {
        std::size_t clashes = 0;
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) clashes += isomorphic(*group[a], *group[b]);
        }
        r.check(clashes == 0, "key-iso/" + std::to_string(std::get<0>(shape)) + "," + std::to_string(std::get<1>(shape)) +
                                  "," + std::to_string(std::get<2>(shape)),
                std::to_string(clashes) + " isomorphic pairs with distinct keys");
    }
    return r;
}

struct FaithfulSpec {
    std::size_t pairs = 250;
    std::uint64_t seed = 1;
    std::size_t exhaustive_generators = 3;  // every interchange class up to this size joins the pool
    std::size_t random_terms = 8000;         // plus this many random terms of 4..max_generators
    std::size_t max_generators = 6;
    std::size_t max_width = 3;
    SearchBudget budget;
};

namespace detail {

inline Diagram random_diagram(std::mt19937_64& rng, std::size_t generators, std::size_t max_width) {
    Diagram d{static_cast<std::size_t>(rng() % (max_width + 1)), {}};
    for (std::size_t g = 0; g < generators; ++g) {
        const std::size_t w = d.cod();
        std::vector<Slice> options;
        for (const auto& gi : signature) {
            if (gi.dom > w || w - gi.dom + gi.cod > max_width) continue;
            for (std::size_t left = 0; left + gi.dom <= w; ++left) options.push_back({left, gi.gen, w - gi.dom - left});
        }
        d.slices.push_back(options[rng() % options.size()]);
    }
    return canonical_diagram(d);
}

}  // namespace detail

/// Pairs of distinct terms with equal interpretations, grouped by interpretation and sampled with a seed.
inline std::vector<std::pair<Term, Term>> sample_equal_pairs(const FaithfulSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    TermEnumSpec exhaustive;
    exhaustive.max_generators = spec.exhaustive_generators;
    exhaustive.max_width = spec.max_width;
    std::vector<Diagram> pool = enumerate_diagrams(exhaustive);
    if (spec.max_generators > spec.exhaustive_generators) {
        const std::size_t span = spec.max_generators - spec.exhaustive_generators;
        for (std::size_t i = 0; i < spec.random_terms; ++i) {
            const std::size_t g = spec.exhaustive_generators + 1 + rng() % span;
            pool.push_back(detail::random_diagram(rng, g, spec.max_width));
        }
    }
    std::map<std::tuple<std::size_t, std::size_t, CanonicalKey>, std::map<std::string, Term>> buckets;
    for (const auto& d : pool) {
        const Term t = to_term(d);
        buckets[{d.dom(), d.cod(), canonical_key(interp(t))}].emplace(diagram_key(d), t);
    }
    std::vector<std::vector<Term>> groups;
    for (auto& [key, members] : buckets) {
        if (members.size() < 2) continue;
        auto& g = groups.emplace_back();
        for (auto& [k, t] : members) g.push_back(t);
    }
    std::vector<std::pair<Term, Term>> out;
    if (groups.empty()) return out;
    for (std::size_t i = 0; i < spec.pairs; ++i) {
        const auto& g = groups[rng() % groups.size()];
        const std::size_t a = rng() % g.size();
        const std::size_t b = (a + 1 + rng() % (g.size() - 1)) % g.size();
        out.emplace_back(g[a], g[b]);
    }
    return out;
}

/// Bounded rewrite search between sampled equal pairs; misses are inconclusive, not failures.
/// A case fails only if a reported path does not replay.
inline Report suite_faithful(const FaithfulSpec& spec = {}, const RuleSet& rules = completed_rules()) {
    Report r{"faithful"};
    std::size_t index = 0;
    for (const auto& [a, b] : sample_equal_pairs(spec)) {
        const std::string id = "pair" + std::to_string(index++);
        if (!tp_equal(a, b)) {
            r.check(false, id, "sampled pair is not equal in the model");
            continue;
        }
        const SearchResult found = connected(a, b, rules, spec.budget);
        if (!found.found) {
            ++r.inconclusive;
            continue;
        }
        bool replay = true;
        const PosetMorphism target = interp(a);
        for (const auto& step : found.path) replay = replay && isomorphic(interp(step.result), target);
        const Term last = found.path.empty() ? a : found.path.back().result;
        replay = replay && monoidal_equal(last, b);
        r.check(replay, id, print(a) + " ~ " + print(b) + ": path does not replay");
    }
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"soundness", "fullness", "bijection", "switch",
                                                "faithful", "relations", "enumeration"};
    return names;
}

struct SuiteOptions {
    std::size_t max_events = 5;
    std::uint64_t seed = 1;
    std::size_t budget = SearchBudget{}.max_nodes;
};

/// Runs a suite by name with the CLI's defaults; throws std::invalid_argument for unknown names.
inline Report run_suite(const std::string& name, const SuiteOptions& opt = {}) {
    if (name == "soundness") return suite_soundness();
    if (name == "fullness") return suite_fullness(events_up_to(opt.max_events));
    if (name == "bijection") {
        EnumSpec spec = events_up_to(opt.max_events);
        spec.max_dom = std::min<std::size_t>(spec.max_dom, 2);
        spec.max_cod = std::min<std::size_t>(spec.max_cod, 2);
        return suite_bijection(spec, opt.max_events);
    }
    if (name == "switch") return suite_switch(events_up_to(opt.max_events));
    if (name == "faithful") {
        FaithfulSpec spec;
        spec.seed = opt.seed;
        spec.budget.max_nodes = opt.budget;
        return suite_faithful(spec);
    }
    if (name == "relations") return suite_relations();
    if (name == "enumeration") return suite_enumeration(std::min<std::size_t>(opt.max_events, 4), opt.max_events);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace poalg
