#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "poalg/term.hpp"

namespace poalg {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t pos, const std::string& what)
        : std::invalid_argument("at offset " + std::to_string(pos) + ": " + what), position(pos) {}

    std::size_t position;
};

namespace detail {

// term := seq ;  seq := par (";" par)* ;  par := atom ("*" atom)*
// atom := generator | "id" NAT | "(" seq ")"
class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse() {
        Term t = seq();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return t;
    }

private:
    Term seq() {
        Term t = par();
        while (accept(';')) {
            const std::size_t at = pos_;
            Term next = par();
            if (t.cod() != next.dom()) {
                throw ParseError(at, "arity mismatch in ';': " + std::to_string(t.cod()) + " != " +
                                         std::to_string(next.dom()));
            }
            t = Term::seq(t, next);
        }
        return t;
    }

    Term par() {
        Term t = atom();
        while (accept('*')) t = Term::par(t, atom());
        return t;
    }

    Term atom() {
        skip_space();
        if (accept('(')) {
            Term t = seq();
            if (!accept(')')) fail("expected ')'");
            return t;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view word = text_.substr(start, pos_ - start);
        if (word.empty()) {
            if (pos_ == text_.size()) fail("unexpected end of input");
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        if (word == "id") {
            skip_space();
            const std::size_t digits = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (digits == pos_) fail("expected a width after 'id'");
            return Term::id(std::stoul(std::string(text_.substr(digits, pos_ - digits))));
        }
        if (auto g = gen_from_name(word)) return Term::gen(*g);
        throw ParseError(start, "unknown generator '" + std::string(word) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the term DSL; `;` is diagrammatic composition and `*` the tensor, both left-associative.
inline Term parse(std::string_view text) { return detail::TermParser(text).parse(); }

}  // namespace poalg
