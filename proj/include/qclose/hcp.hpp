#pragma once

#include <numeric>
#include <vector>

#include "exclusion_set.hpp"
#include "graph.hpp"
#include "qmatrix.hpp"

namespace qclose {

/// Hamilton-cycle model: p(u,i)=1 means the i-th arc of the anchored cycle
/// enters vertex u; the anchor is the origin and terminal vertex and is
/// relabeled last internally (internal vertices 0..n-1, anchor = n).
struct HcpModel {
    int n;              // permutation dimension = vertex_count - 1
    int anchor;         // anchor in input labeling, 0-based
    std::vector<int> to_input; // internal vertex -> input vertex
    bool cubic;
    ExclusionSet exclusions;
};

/// Exclusion-set construction from unit-weight shortest paths. For each
/// (ordered) vertex pair the connecting arc is temporarily deleted; every
/// path length k below the resulting shortest-path distance is impossible,
/// which forbids the corresponding position combinations. Deletion starting
/// k is 2 for existing arcs and 1 for non-arcs; an unreachable endpoint
/// (distance sentinel n+1) drives k through the whole range — the deleted
/// arc is essential.
inline ExclusionSet build_hcp_exclusions(const Graph& g, int anchor) {
    const int n1 = g.vertex_count();
    if (anchor < 0 || anchor >= n1)
        throw std::out_of_range("anchor out of range");
    const int n = n1 - 1;
    if (n < 2)
        throw std::invalid_argument("hcp model: need at least 3 vertices");

    // Relabel so the anchor is the last vertex.
    std::vector<int> to_input;
    for (int v = 0; v < n1; ++v)
        if (v != anchor) to_input.push_back(v);
    to_input.push_back(anchor);
    Graph h = g.relabeled(to_input);
    const int A = n;

    ExclusionSet e(n);

    // Case 1: arcs into the anchor. A missing path of length k from u to
    // the anchor forbids u from the late positions; position n+1-k becomes
    // impossible, which zeroes p(u, n+1-k) outright.
    for (int u = 0; u < n; ++u) {
        const bool arc = h.adjacent(u, A);
        if (arc) h.remove_edge(u, A);
        const int m = shortest_path_length(h, u, A);
        for (int k = (arc ? 2 : 1); k < m; ++k)
            e.force_zero(u, n - k); // 1-based position n+1-k
        if (arc) h.add_edge(u, A);
    }

    // Case 2: arcs out of the anchor — symmetric, forbidding early positions.
    for (int v = 0; v < n; ++v) {
        const bool arc = h.adjacent(A, v);
        if (arc) h.remove_edge(A, v);
        const int m = shortest_path_length(h, A, v);
        for (int k = (arc ? 2 : 1); k < m; ++k)
            e.force_zero(v, k - 1); // 1-based position k
        if (arc) h.add_edge(A, v);
    }

    // General case: ordered non-anchor pairs (u,v); a missing u->v path of
    // length k forbids the offset-k position combinations.
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            const bool arc = h.adjacent(u, v);
            if (arc) h.remove_edge(u, v);
            const int m = shortest_path_length(h, u, v);
            for (int k = (arc ? 2 : 1); k < m; ++k)
                for (int l = 0; l + k < n; ++l)
                    e.add(u, l, v, l + k); // 1-based {p(u,l), p(v,l+k)}, l=1..n-k
            if (arc) h.add_edge(u, v);
        }
    }
    return e;
}

inline HcpModel build_hcp_model(const Graph& g, int anchor) {
    std::vector<int> to_input;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != anchor) to_input.push_back(v);
    to_input.push_back(anchor);
    return HcpModel{g.vertex_count() - 1, anchor, std::move(to_input), g.is_cubic(),
                    build_hcp_exclusions(g, anchor)};
}

/// Reversal symmetry of undirected cycles: a cycle traversed backwards is
/// also a cycle, so a zero pair (u,i,v,j) forces its reversal partner
/// (u,n+1-i,v,n+1-j) to zero. The map is an involution, but the pass is
/// iterated anyway so idempotence is by construction.
inline bool companion_closure(QMatrix& q) {
    const int n = q.dim();
    bool changed_any = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u)
            for (int i = 0; i < n; ++i)
                for (int v = 0; v < n; ++v) {
                    if (v == u) continue;
                    for (int j = 0; j < n; ++j) {
                        if (j == i || q.get(u, i, v, j)) continue;
                        const int ri = n - 1 - i; // 1-based n+1-i
                        const int rj = n - 1 - j;
                        if (ri == rj) continue; // partner hits a structural zero
                        if (q.get(u, ri, v, rj)) {
                            q.zero_pair(PairKey::canonical(u, ri, v, rj));
                            changed = true;
                        }
                    }
                }
        changed_any |= changed;
    }
    return changed_any;
}

} // namespace qclose
