#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "poalg/combinators.hpp"
#include "poalg/dot.hpp"
#include "poalg/enumerate.hpp"
#include "poalg/harness.hpp"
#include "poalg/interp.hpp"
#include "poalg/io.hpp"
#include "poalg/parse.hpp"

namespace poalg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

namespace detail {

/// The contents of `arg` if it names a readable file, else `arg` itself.
inline std::string slurp(const std::string& arg) {
    std::ifstream in(arg);
    if (!in) return arg;
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline bool starts_with_word(const std::string& text, char head) {
    const auto p = text.find_first_not_of(" \t\r\n");
    return p != std::string::npos && text[p] == head && (p + 1 == text.size() || std::isspace(text[p + 1]));
}

/// A morphism given in the P text format, or a term to interpret.
inline PosetMorphism load_morphism(const std::string& arg) {
    const std::string text = slurp(arg);
    if (starts_with_word(text, 'P')) return read_morphism(text);
    return interp(parse(text));
}

inline std::vector<std::size_t> parse_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        std::size_t used = 0;
        const unsigned long v = std::stoul(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad list element '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Runs one CLI invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite posets, poalgebra terms and their factorizations", "poalg"};
    app.require_subcommand(1);

    std::string a, b;
    bool dot = false;
    std::string lin;
    std::string suite;
    SuiteOptions sopt;
    EnumSpec espec;
    espec.max_events = 3;
    std::size_t dom = 0, cod = 0;
    bool dom_set = false, cod_set = false;

    auto* parse_cmd = app.add_subcommand("parse", "Parse a term and print it with its arity");
    parse_cmd->add_option("term", a, "term expression")->required();

    auto* interp_cmd = app.add_subcommand("interp", "Interpret a term as a poset morphism");
    interp_cmd->add_option("term", a, "term expression")->required();
    interp_cmd->add_flag("--dot", dot, "emit Graphviz instead of the text format");

    auto* eq_cmd = app.add_subcommand("eq", "Decide equality of two parallel terms");
    eq_cmd->add_option("left", a)->required();
    eq_cmd->add_option("right", b)->required();

    auto* compose_cmd = app.add_subcommand("compose", "Compose two morphisms (first, then second)");
    compose_cmd->add_option("first", a)->required();
    compose_cmd->add_option("second", b)->required();

    auto* tensor_cmd = app.add_subcommand("tensor", "Tensor two morphisms");
    tensor_cmd->add_option("left", a)->required();
    tensor_cmd->add_option("right", b)->required();

    auto* fact_cmd = app.add_subcommand("factorize", "Factorize a morphism along a linearization");
    fact_cmd->add_option("morphism", a)->required();
    fact_cmd->add_option("--lin", lin, "internal events in order, e.g. 0,2,1");

    auto* fc_cmd = app.add_subcommand("fact-compose", "Compose factorization data into a morphism");
    fc_cmd->add_option("factorization", a)->required();

    auto* r2t_cmd = app.add_subcommand("rel2term", "Term for a relation");
    r2t_cmd->add_option("relation", a)->required();

    auto* canon_cmd = app.add_subcommand("canon", "Canonical term of a morphism");
    canon_cmd->add_option("morphism", a)->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "List isomorphism classes of morphisms");
    enum_cmd->add_option("--max-events", espec.max_events)->check(CLI::Range(std::size_t{0}, max_enum_events));
    enum_cmd->add_option("--dom", dom)->each([&](const std::string&) { dom_set = true; });
    enum_cmd->add_option("--cod", cod)->each([&](const std::string&) { cod_set = true; });

    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    verify_cmd->add_option("--max-events", sopt.max_events)->check(CLI::Range(std::size_t{0}, max_enum_events));
    verify_cmd->add_option("--seed", sopt.seed);
    verify_cmd->add_option("--budget", sopt.budget, "node budget of each rewrite search");

    auto* dot_cmd = app.add_subcommand("dot", "Graphviz drawing of a morphism");
    dot_cmd->add_option("morphism", a)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (parse_cmd->parsed()) {
            const Term t = parse(detail::slurp(a));
            out << print(t) << "\n" << t.dom() << " -> " << t.cod() << "\n";
        } else if (interp_cmd->parsed()) {
            const PosetMorphism f = interp(parse(detail::slurp(a)));
            out << (dot ? export_dot(f) : write_morphism(f));
        } else if (eq_cmd->parsed()) {
            out << (tp_equal(parse(detail::slurp(a)), parse(detail::slurp(b))) ? "EQUAL" : "NOT EQUAL") << "\n";
        } else if (compose_cmd->parsed()) {
            out << write_morphism(compose(detail::load_morphism(a), detail::load_morphism(b)));
        } else if (tensor_cmd->parsed()) {
            out << write_morphism(tensor(detail::load_morphism(a), detail::load_morphism(b)));
        } else if (fact_cmd->parsed()) {
            const PosetMorphism f = detail::load_morphism(a);
            const Linearization x = lin.empty() ? linearizations(f).front() : Linearization{detail::parse_list(lin)};
            out << write_factorization(factorize(f, x));
        } else if (fc_cmd->parsed()) {
            out << write_morphism(fact_compose(read_factorization(detail::slurp(a))).morphism);
        } else if (r2t_cmd->parsed()) {
            out << print(rel_to_term(read_relation(detail::slurp(a)))) << "\n";
        } else if (canon_cmd->parsed()) {
            out << print(canonical_term(detail::load_morphism(a))) << "\n";
        } else if (enum_cmd->parsed()) {
            espec.max_dom = dom_set ? dom : espec.max_events;
            espec.min_dom = dom_set ? dom : 0;
            espec.max_cod = cod_set ? cod : espec.max_events;
            espec.min_cod = cod_set ? cod : 0;
            const auto all = enumerate_morphisms(espec);
            for (std::size_t i = 0; i < all.size(); ++i) out << (i == 0 ? "" : "\n") << write_morphism(all[i]);
            err << all.size() << " classes\n";
        } else if (verify_cmd->parsed()) {
            const Report r = run_suite(suite, sopt);
            out << r.text();
            return r.ok() ? exit_ok : exit_domain;
        } else if (dot_cmd->parsed()) {
            out << export_dot(detail::load_morphism(a));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}

}  // namespace poalg::cli
