#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "poalg/poset.hpp"

namespace poalg {

/// Byte string identifying a morphism up to isomorphism.
struct CanonicalKey {
    std::string bytes;
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

inline constexpr std::size_t max_canonical_internal = 16;

namespace detail {

struct Labeling {
    std::vector<std::size_t> perm;   // new internal l is old internal perm[l]
    std::vector<Mask> code;          // per position: relations to earlier positions
};

/// Fingerprint-sorted backtracking for the lexicographically least internal adjacency code.
inline Labeling canonical_labeling(const PosetMorphism& f) {
    const std::size_t k = f.internal_count();
    if (k > max_canonical_internal) {
        throw std::length_error("canonical labeling limited to " + std::to_string(max_canonical_internal) +
                                " internal events");
    }
    const auto prints = internal_fingerprints(f);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return prints[a] < prints[b]; });

    Labeling best;
    bool have_best = false;
    std::vector<std::size_t> perm;
    std::vector<Mask> code;
    std::vector<bool> used(k, false);

    auto row = [&](std::size_t l, std::size_t cand) {
        Mask out = 0;
        for (std::size_t q = 0; q < l; ++q) {
            const std::size_t other = perm[q];
            if (f.less(f.internal(other), f.internal(cand))) out |= bit(2 * q);
            if (f.less(f.internal(cand), f.internal(other))) out |= bit(2 * q + 1);
        }
        return out;
    };
    // `tight` means the prefix so far equals best's prefix.
    auto search = [&](auto&& self, std::size_t l, bool tight) -> void {
        if (l == k) {
            if (!have_best || code < best.code) {
                best.perm = perm;
                best.code = code;
                have_best = true;
            }
            return;
        }
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t cand = order[c];
            if (used[cand] || prints[cand] != prints[order[l]]) continue;
            const Mask r = row(l, cand);
            bool next_tight = false;
            if (have_best && tight) {
                if (r > best.code[l]) continue;
                next_tight = r == best.code[l];
            }
            used[cand] = true;
            perm.push_back(cand);
            code.push_back(r);
            self(self, l + 1, next_tight);
            perm.pop_back();
            code.pop_back();
            used[cand] = false;
        }
    };
    search(search, 0, true);
    return best;
}

}  // namespace detail

/// The representative of f's isomorphism class with canonically numbered internal events.
inline PosetMorphism canonical_form(const PosetMorphism& f) {
    return f.permute_internal(detail::canonical_labeling(f).perm);
}

inline CanonicalKey canonical_key(const PosetMorphism& f) {
    const auto lab = detail::canonical_labeling(f);
    const PosetMorphism c = f.permute_internal(lab.perm);
    CanonicalKey key;
    auto put = [&](Mask v) {
        for (int b = 0; b < 8; ++b) key.bytes.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
    };
    put(f.dom());
    put(f.cod());
    put(f.internal_count());
    for (std::size_t e = 0; e < c.event_count(); ++e) put(c.poset().above(e));
    return key;
}

}  // namespace poalg
