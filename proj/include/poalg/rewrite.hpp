#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "poalg/rules.hpp"
#include "poalg/slices.hpp"

namespace poalg {

enum class Direction : std::uint8_t { forward, backward };

inline Direction flip(Direction d) { return d == Direction::forward ? Direction::backward : Direction::forward; }

class InvalidPosition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Where a rule side occurs in the interchange normal form of a term.
///
/// For a non-empty pattern, `picks` lists the matched slice indices in pattern order.
/// An identity pattern occupies no slice; it sits before slice `gap` with `offset`
/// wires to its left.
struct RedexPosition {
    std::vector<std::size_t> picks;
    std::size_t gap = 0;
    std::size_t offset = 0;

    friend bool operator==(const RedexPosition&, const RedexPosition&) = default;
};

struct Redex {
    std::size_t rule;
    Direction direction;
    RedexPosition position;
};

namespace detail {

struct Arrangement {
    std::vector<Slice> slices;
    std::size_t start;
};

inline bool swap_tagged(std::vector<Slice>& s, std::vector<std::size_t>& tags, std::size_t i) {
    if (!try_swap(s, i)) return false;
    std::swap(tags[i], tags[i + 1]);
    return true;
}

/// Rearranges `target` by interchanges so the picked slices become contiguous, in order.
inline std::optional<Arrangement> gather(const std::vector<Slice>& target, std::span<const std::size_t> picks) {
    std::vector<Slice> w = target;
    std::vector<std::size_t> tags(w.size());
    std::iota(tags.begin(), tags.end(), 0);
    auto pos_of = [&](std::size_t tag) {
        return static_cast<std::size_t>(std::find(tags.begin(), tags.end(), tag) - tags.begin());
    };
    std::size_t ws = pos_of(picks[0]);
    std::size_t we = ws + 1;
    for (std::size_t j = 1; j < picks.size(); ++j) {
        std::size_t p = pos_of(picks[j]);
        if (p >= ws && p < we) return std::nullopt;
        if (p < ws) {
            // Slide the candidate forward across the window.
            for (std::size_t r = p; r + 1 < we; ++r) {
                if (!swap_tagged(w, tags, r)) return std::nullopt;
            }
            --ws;
            continue;
        }
        while (p > we) {
            if (swap_tagged(w, tags, p - 1)) {
                --p;
                continue;
            }
            // The slice just before the candidate blocks it; move that slice in front of the window.
            auto w2 = w;
            auto t2 = tags;
            for (std::size_t r = p - 1; r > ws; --r) {
                if (!swap_tagged(w2, t2, r - 1)) return std::nullopt;
            }
            w = std::move(w2);
            tags = std::move(t2);
            ++ws;
            ++we;
        }
        ++we;
    }
    return Arrangement{std::move(w), ws};
}

/// Wire offsets (left, right) when window slices equal the pattern up to uniform padding.
inline std::optional<std::pair<std::size_t, std::size_t>> window_offsets(const std::vector<Slice>& w,
                                                                         std::size_t start,
                                                                         const std::vector<Slice>& pat,
                                                                         std::size_t count) {
    const Slice& first = w[start];
    if (first.left < pat[0].left || first.right < pat[0].right) return std::nullopt;
    const std::size_t off = first.left - pat[0].left;
    const std::size_t roff = first.right - pat[0].right;
    for (std::size_t j = 0; j < count; ++j) {
        const Slice& s = w[start + j];
        if (s.gen != pat[j].gen || s.left != pat[j].left + off || s.right != pat[j].right + roff) {
            return std::nullopt;
        }
    }
    return std::pair{off, roff};
}

inline std::size_t boundary_width(const Diagram& d, std::size_t gap) {
    return gap == 0 ? d.width : d.slices[gap - 1].cod();
}

inline std::vector<Slice> pad(const std::vector<Slice>& s, std::size_t left, std::size_t right) {
    std::vector<Slice> out = s;
    for (auto& x : out) {
        x.left += left;
        x.right += right;
    }
    return out;
}

/// Sides of a rule in interchange normal form.
struct CompiledRule {
    Diagram lhs;
    Diagram rhs;
    const Diagram& side(Direction d) const { return d == Direction::forward ? lhs : rhs; }
    const Diagram& other(Direction d) const { return d == Direction::forward ? rhs : lhs; }
};

inline std::vector<CompiledRule> compile(const RuleSet& rules) {
    std::vector<CompiledRule> out;
    out.reserve(rules.size());
    for (const auto& r : rules) out.push_back({normalize(r.lhs), normalize(r.rhs)});
    return out;
}

/// Calls `emit(position, rewritten)` for every occurrence of `pattern` in the normal-form diagram `d`.
template <typename Emit>
void for_each_match(const Diagram& d, const Diagram& pattern, const Diagram& replacement, Emit&& emit) {
    const auto& pat = pattern.slices;
    if (pat.empty()) {
        const std::size_t p = pattern.width;
        for (std::size_t gap = 0; gap <= d.slices.size(); ++gap) {
            const std::size_t w = boundary_width(d, gap);
            if (w < p) continue;
            for (std::size_t off = 0; off + p <= w; ++off) {
                Diagram out{d.width, {}};
                out.slices.assign(d.slices.begin(), d.slices.begin() + static_cast<std::ptrdiff_t>(gap));
                auto ins = pad(replacement.slices, off, w - p - off);
                out.slices.insert(out.slices.end(), ins.begin(), ins.end());
                out.slices.insert(out.slices.end(), d.slices.begin() + static_cast<std::ptrdiff_t>(gap),
                                  d.slices.end());
                emit(RedexPosition{{}, gap, off}, std::move(out));
            }
        }
        return;
    }
    std::vector<std::size_t> picks;
    std::vector<bool> used(d.slices.size(), false);
    auto rec = [&](auto&& self) -> void {
        const std::size_t j = picks.size();
        if (j > 0) {
            auto arr = gather(d.slices, picks);
            if (!arr) return;
            auto offs = window_offsets(arr->slices, arr->start, pat, j);
            if (!offs) return;
            if (j == pat.size()) {
                Diagram out{d.width, {}};
                const auto& w = arr->slices;
                out.slices.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(arr->start));
                auto ins = pad(replacement.slices, offs->first, offs->second);
                out.slices.insert(out.slices.end(), ins.begin(), ins.end());
                out.slices.insert(out.slices.end(), w.begin() + static_cast<std::ptrdiff_t>(arr->start + j), w.end());
                emit(RedexPosition{picks, picks.front(), offs->first}, std::move(out));
                return;
            }
        }
        for (std::size_t c = 0; c < d.slices.size(); ++c) {
            if (used[c] || d.slices[c].gen != pat[j].gen) continue;
            used[c] = true;
            picks.push_back(c);
            self(self);
            picks.pop_back();
            used[c] = false;
        }
    };
    rec(rec);
}

inline std::optional<Diagram> rewrite_at(const Diagram& d, const Diagram& pattern, const Diagram& replacement,
                                         const RedexPosition& pos) {
    const auto& pat = pattern.slices;
    if (pat.empty()) {
        if (!pos.picks.empty() || pos.gap > d.slices.size()) return std::nullopt;
        const std::size_t w = boundary_width(d, pos.gap);
        if (pos.offset + pattern.width > w) return std::nullopt;
        Diagram out{d.width, {}};
        out.slices.assign(d.slices.begin(), d.slices.begin() + static_cast<std::ptrdiff_t>(pos.gap));
        auto ins = pad(replacement.slices, pos.offset, w - pattern.width - pos.offset);
        out.slices.insert(out.slices.end(), ins.begin(), ins.end());
        out.slices.insert(out.slices.end(), d.slices.begin() + static_cast<std::ptrdiff_t>(pos.gap), d.slices.end());
        return out;
    }
    if (pos.picks.size() != pat.size()) return std::nullopt;
    for (std::size_t j = 0; j < pat.size(); ++j) {
        const std::size_t c = pos.picks[j];
        if (c >= d.slices.size() || d.slices[c].gen != pat[j].gen) return std::nullopt;
        if (std::count(pos.picks.begin(), pos.picks.end(), c) != 1) return std::nullopt;
    }
    auto arr = gather(d.slices, pos.picks);
    if (!arr) return std::nullopt;
    auto offs = window_offsets(arr->slices, arr->start, pat, pat.size());
    if (!offs) return std::nullopt;
    Diagram out{d.width, {}};
    const auto& w = arr->slices;
    out.slices.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(arr->start));
    auto ins = pad(replacement.slices, offs->first, offs->second);
    out.slices.insert(out.slices.end(), ins.begin(), ins.end());
    out.slices.insert(out.slices.end(), w.begin() + static_cast<std::ptrdiff_t>(arr->start + pat.size()), w.end());
    return out;
}

}  // namespace detail

/// Every occurrence of a rule's left-hand side, matched modulo interchange and whiskering.
inline std::vector<Redex> find_redexes(const Term& t, const RuleSet& rules,
                                       Direction direction = Direction::forward) {
    const Diagram d = normalize(t);
    const auto compiled = detail::compile(rules);
    std::vector<Redex> out;
    for (std::size_t r = 0; r < compiled.size(); ++r) {
        detail::for_each_match(d, compiled[r].side(direction), compiled[r].other(direction),
                               [&](RedexPosition pos, Diagram&&) { out.push_back({r, direction, std::move(pos)}); });
    }
    return out;
}

/// Rewrites one occurrence; positions refer to the interchange normal form of `t`.
inline Term apply(const Term& t, const Rule& rule, const RedexPosition& pos, Direction direction) {
    const Diagram d = normalize(t);
    const Diagram lhs = normalize(rule.lhs);
    const Diagram rhs = normalize(rule.rhs);
    const Diagram& from = direction == Direction::forward ? lhs : rhs;
    const Diagram& to = direction == Direction::forward ? rhs : lhs;
    auto out = detail::rewrite_at(d, from, to, pos);
    if (!out) throw InvalidPosition("rule '" + rule.name + "' does not match at the given position");
    return to_term(normalize(*out));
}

struct SearchBudget {
    std::size_t max_nodes = 50000;
    std::size_t max_depth = 8;
    /// Terms larger than this are not explored.
    std::size_t max_slices = 12;
};

struct RewriteStep {
    std::size_t rule;
    Direction direction;
    Term result;
};

struct SearchResult {
    bool found = false;
    std::vector<RewriteStep> path;
    std::size_t explored = 0;
};

/// Bidirectional breadth-first search for a chain of rule applications (either direction).
/// A negative result only means the budget ran out.
inline SearchResult connected(const Term& a, const Term& b, const RuleSet& rules, const SearchBudget& budget = {}) {
    if (a.arity() != b.arity()) throw ArityMismatch("connected: terms are not parallel");
    struct Visit {
        std::string parent;
        std::size_t rule;
        Direction direction;
        std::size_t depth;
        Diagram diagram;
    };
    using Tree = std::unordered_map<std::string, Visit>;
    const auto compiled = detail::compile(rules);

    const Diagram da = canonical_diagram(normalize(a));
    const Diagram db = canonical_diagram(normalize(b));
    Tree trees[2];
    std::vector<std::string> frontier[2];
    const std::string ka = diagram_key(da);
    const std::string kb = diagram_key(db);
    trees[0].emplace(ka, Visit{"", 0, Direction::forward, 0, da});
    trees[1].emplace(kb, Visit{"", 0, Direction::forward, 0, db});
    frontier[0].push_back(ka);
    frontier[1].push_back(kb);

    SearchResult result;
    auto build = [&](const std::string& meet) {
        std::vector<RewriteStep> forward_half;
        for (std::string k = meet; !trees[0].at(k).parent.empty() || k != ka;) {
            const Visit& v = trees[0].at(k);
            forward_half.push_back({v.rule, v.direction, to_term(v.diagram)});
            k = v.parent;
        }
        std::reverse(forward_half.begin(), forward_half.end());
        result.path = std::move(forward_half);
        for (std::string k = meet; k != kb;) {
            const Visit& v = trees[1].at(k);
            const Visit& up = trees[1].at(v.parent);
            result.path.push_back({v.rule, flip(v.direction), to_term(up.diagram)});
            k = v.parent;
        }
        result.found = true;
    };
    if (ka == kb) {
        result.found = true;
        result.explored = 1;
        return result;
    }

    std::size_t depth[2] = {0, 0};
    while (!frontier[0].empty() && !frontier[1].empty()) {
        if (depth[0] + depth[1] >= budget.max_depth) break;
        const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        Tree& mine = trees[side];
        const Tree& theirs = trees[1 - side];
        std::vector<std::string> next;
        std::optional<std::string> meet;
        for (const std::string& key : frontier[side]) {
            const Diagram d = mine.at(key).diagram;
            for (std::size_t r = 0; r < compiled.size() && !meet; ++r) {
                for (Direction dir : {Direction::forward, Direction::backward}) {
                    detail::for_each_match(d, compiled[r].side(dir), compiled[r].other(dir),
                                           [&](const RedexPosition&, Diagram&& raw) {
                                               if (meet || raw.slices.size() > budget.max_slices) return;
                                               Diagram nd = normalize(raw);
                                               std::string nk = diagram_key(nd);
                                               if (mine.contains(nk)) return;
                                               mine.emplace(nk, Visit{key, r, dir, depth[side] + 1, std::move(nd)});
                                               ++result.explored;
                                               if (theirs.contains(nk)) {
                                                   meet = nk;
                                                   return;
                                               }
                                               next.push_back(std::move(nk));
                                           });
                    if (meet) break;
                }
            }
            if (meet || result.explored >= budget.max_nodes) break;
        }
        if (meet) {
            build(*meet);
            return result;
        }
        if (result.explored >= budget.max_nodes) break;
        frontier[side] = std::move(next);
        ++depth[side];
    }
    return result;
}

}  // namespace poalg
