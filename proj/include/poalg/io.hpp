#pragma once

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "poalg/factorization.hpp"
#include "poalg/poset.hpp"
#include "poalg/relation.hpp"

namespace poalg {

class FormatError : public std::invalid_argument {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> words;
};

/// Non-empty lines split into words, with `#` comments removed.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        line = line.substr(0, std::min(line.find('#'), line.size()));
        std::istringstream in{std::string(line)};
        Line l{number, {}};
        for (std::string w; in >> w;) l.words.push_back(w);
        if (!l.words.empty()) out.push_back(std::move(l));
        pos = end + 1;
    }
    return out;
}

inline std::size_t to_nat(const Line& l, std::size_t w) {
    if (w >= l.words.size()) throw FormatError(l.number, "missing field");
    const std::string& s = l.words[w];
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw FormatError(l.number, "expected a number, got '" + s + "'");
    return v;
}

inline void expect_words(const Line& l, std::size_t n) {
    if (l.words.size() != n) throw FormatError(l.number, "expected " + std::to_string(n) + " fields");
}

inline std::string event_name(const PosetMorphism& f, std::size_t e) {
    if (e < f.dom()) return "s" + std::to_string(e);
    if (e < f.dom() + f.cod()) return "t" + std::to_string(e - f.dom());
    return "i" + std::to_string(e - f.dom() - f.cod());
}

}  // namespace detail

/// Reads `P m n k` followed by `< a b` lines over the names s*, t*, i*.
inline PosetMorphism read_morphism(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].words[0] != "P") throw FormatError(lines.empty() ? 1 : lines[0].number, "expected 'P m n k'");
    const auto& head = lines[0];
    detail::expect_words(head, 4);
    const std::size_t m = detail::to_nat(head, 1);
    const std::size_t n = detail::to_nat(head, 2);
    const std::size_t k = detail::to_nat(head, 3);
    if (m + n + k > max_poset_events) throw FormatError(head.number, "too many events");

    auto event = [&](const detail::Line& l, const std::string& name) -> std::size_t {
        if (name.size() < 2) throw FormatError(l.number, "bad event name '" + name + "'");
        const detail::Line idx{l.number, {name.substr(1)}};
        const std::size_t i = detail::to_nat(idx, 0);
        const char kind = name[0];
        if (kind == 's' && i < m) return i;
        if (kind == 't' && i < n) return m + i;
        if (kind == 'i' && i < k) return m + n + i;
        throw FormatError(l.number, "unknown event '" + name + "'");
    };
    std::vector<EventPair> pairs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.words[0] != "<") throw FormatError(l.number, "expected '< a b'");
        detail::expect_words(l, 3);
        const std::size_t a = event(l, l.words[1]);
        const std::size_t b = event(l, l.words[2]);
        if (a < m + n && a >= m) throw FormatError(l.number, "target " + l.words[1] + " is not maximal");
        if (b < m) throw FormatError(l.number, "source " + l.words[2] + " is not minimal");
        pairs.emplace_back(a, b);
    }
    return PosetMorphism::from_layout(m, n, k, pairs);
}

/// Hasse pairs only, sorted by event name, so equal morphisms print identically.
inline std::string write_morphism(const PosetMorphism& f) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (auto [a, b] : f.poset().hasse()) edges.emplace_back(detail::event_name(f, a), detail::event_name(f, b));
    std::sort(edges.begin(), edges.end());
    std::string out = "P " + std::to_string(f.dom()) + " " + std::to_string(f.cod()) + " " +
                      std::to_string(f.internal_count()) + "\n";
    for (const auto& [a, b] : edges) out += "< " + a + " " + b + "\n";
    return out;
}

/// Reads `R m n` followed by `i j` lines.
inline Relation read_relation(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].words[0] != "R") throw FormatError(lines.empty() ? 1 : lines[0].number, "expected 'R m n'");
    detail::expect_words(lines[0], 3);
    Relation r(detail::to_nat(lines[0], 1), detail::to_nat(lines[0], 2));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        detail::expect_words(l, 2);
        const std::size_t a = detail::to_nat(l, 0);
        const std::size_t b = detail::to_nat(l, 1);
        if (a >= r.dom() || b >= r.cod()) throw FormatError(l.number, "pair out of range");
        r.insert(a, b);
    }
    return r;
}

inline std::string write_relation(const Relation& r) {
    std::string out = "R " + std::to_string(r.dom()) + " " + std::to_string(r.cod()) + "\n";
    for (auto [i, j] : r.pairs()) out += std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

/// Reads `F m k n`, one `I j e...` line per block, then `R i j` lines.
inline Factorization read_factorization(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].words[0] != "F") throw FormatError(lines.empty() ? 1 : lines[0].number, "expected 'F m k n'");
    detail::expect_words(lines[0], 4);
    Factorization F;
    F.m = detail::to_nat(lines[0], 1);
    F.k = detail::to_nat(lines[0], 2);
    F.n = detail::to_nat(lines[0], 3);
    F.blocks.resize(F.k);
    F.closing = Relation(F.m + F.k, F.n);
    std::vector<bool> seen(F.k, false);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.words[0] == "I") {
            const std::size_t j = detail::to_nat(l, 1);
            if (j >= F.k) throw FormatError(l.number, "block index out of range");
            if (seen[j]) throw FormatError(l.number, "block " + std::to_string(j) + " given twice");
            seen[j] = true;
            for (std::size_t w = 2; w < l.words.size(); ++w) {
                const std::size_t e = detail::to_nat(l, w);
                if (e >= F.m + j) throw FormatError(l.number, "element outside [m+j]");
                F.blocks[j].insert(e);
            }
        } else if (l.words[0] == "R") {
            detail::expect_words(l, 3);
            const std::size_t a = detail::to_nat(l, 1);
            const std::size_t b = detail::to_nat(l, 2);
            if (a >= F.m + F.k || b >= F.n) throw FormatError(l.number, "pair out of range");
            F.closing.insert(a, b);
        } else {
            throw FormatError(l.number, "expected an 'I' or 'R' line");
        }
    }
    for (std::size_t j = 0; j < F.k; ++j) {
        if (!seen[j]) throw FormatError(lines[0].number, "block " + std::to_string(j) + " missing");
    }
    return F;
}

inline std::string write_factorization(const Factorization& F) {
    std::string out = "F " + std::to_string(F.m) + " " + std::to_string(F.k) + " " + std::to_string(F.n) + "\n";
    for (std::size_t j = 0; j < F.k; ++j) {
        out += "I " + std::to_string(j);
        for (std::size_t e : F.blocks[j]) out += " " + std::to_string(e);
        out += "\n";
    }
    for (auto [i, j] : F.closing.pairs()) out += "R " + std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

}  // namespace poalg
