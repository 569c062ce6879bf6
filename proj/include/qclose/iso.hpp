#pragma once

#include <stdexcept>

#include "exclusion_set.hpp"
#include "graph.hpp"

namespace qclose {

enum class IsoMode { subgraph, isomorphism };

/// Pattern/host instance. P maps pattern vertices (rows) to host vertices
/// (columns): p(a,c)=1 means pattern vertex a is placed on host vertex c.
struct IsoInstance {
    Graph pattern;
    Graph host;
    IsoMode mode;
};

/// Cover / equality exclusions. Subgraph mode: a pattern edge may not land
/// on a host non-edge. Isomorphism mode additionally forbids a pattern
/// non-edge from landing on a host edge. Smaller patterns are padded with
/// isolated vertices (subgraph mode only); padding rows generate nothing.
inline ExclusionSet build_iso_exclusions(const IsoInstance& inst) {
    const int mp = inst.pattern.vertex_count();
    const int mg = inst.host.vertex_count();
    if (inst.mode == IsoMode::isomorphism && mp != mg)
        throw std::invalid_argument("isomorphism mode: vertex counts must match");
    if (mp > mg)
        throw std::invalid_argument("pattern larger than host");
    const int m = mg;

    ExclusionSet e(m);
    auto f_adj = [&](int a, int b) { return a < mp && b < mp && inst.pattern.adjacent(a, b); };
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            const bool fe = f_adj(a, b);
            if (fe) {
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d)
                        if (c != d && !inst.host.adjacent(c, d)) e.add(a, c, b, d);
            } else if (inst.mode == IsoMode::isomorphism) {
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d)
                        if (c != d && inst.host.adjacent(c, d)) e.add(a, c, b, d);
            }
        }
    }
    return e;
}

} // namespace qclose
