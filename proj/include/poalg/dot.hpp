#pragma once

#include <string>

#include "poalg/io.hpp"

namespace poalg {

/// Hasse diagram in Graphviz syntax: sources at the bottom, targets at the top,
/// external events open and internal events filled.
inline std::string export_dot(const PosetMorphism& f) {
    auto name = [&](std::size_t e) { return detail::event_name(f, e); };
    std::string out = "digraph morphism {\n  rankdir=BT;\n  node [shape=circle, width=0.2, label=\"\"];\n";
    for (std::size_t e = 0; e < f.event_count(); ++e) {
        out += "  " + name(e) + " [xlabel=\"" + name(e) + "\"";
        if (f.is_internal(e)) out += ", style=filled, fillcolor=black";
        out += "];\n";
    }
    auto rank = [&](const char* which, std::size_t first, std::size_t count) {
        if (count == 0) return;
        out += std::string("  { rank=") + which + ";";
        for (std::size_t e = first; e < first + count; ++e) out += " " + name(e) + ";";
        out += " }\n";
    };
    rank("min", 0, f.dom());
    rank("max", f.dom(), f.cod());
    for (auto [a, b] : f.poset().hasse()) out += "  " + name(a) + " -> " + name(b) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace poalg
