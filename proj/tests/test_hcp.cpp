#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include "qclose/hcp.hpp"
#include "qclose/qmatrix.hpp"
#include "test_util.hpp"

using qclose::build_hcp_exclusions;
using qclose::Counts;
using qclose::ExclusionSet;
using qclose::Graph;
using qclose::PairKey;

namespace {

/// All Hamilton cycles through the anchor, as permutation encodings
/// (position -> internal vertex, anchor relabeled last). Both traversal
/// directions appear as separate encodings.
std::vector<std::vector<int>> hamilton_encodings(const Graph& g, int anchor) {
    const int n1 = g.vertex_count();
    const int n = n1 - 1;
    std::vector<int> to_internal(static_cast<std::size_t>(n1));
    int next = 0;
    for (int v = 0; v < n1; ++v) to_internal[v] = v == anchor ? n : next++;

    std::vector<std::vector<int>> out;
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0); // internal non-anchor vertices
    std::vector<int> from_internal(static_cast<std::size_t>(n1));
    for (int v = 0; v < n1; ++v) from_internal[to_internal[v]] = v;
    do {
        bool ok = g.adjacent(anchor, from_internal[order[0]]);
        for (int i = 0; i + 1 < n && ok; ++i)
            ok = g.adjacent(from_internal[order[i]], from_internal[order[i + 1]]);
        if (ok && g.adjacent(from_internal[order[n - 1]], anchor)) out.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

} // namespace

TEST_CASE("K4: complete graphs exclude nothing") {
    const Graph k4 = testutil::load_graph("k4.edges");
    const ExclusionSet e = build_hcp_exclusions(k4, 3);
    CHECK(e.pair_count() == 0);
}

TEST_CASE("C4 exclusions match the hand-derived set") {
    const Graph c4 = testutil::load_graph("c4.edges");
    const ExclusionSet e = build_hcp_exclusions(c4, 3);

    // First/last-arc cases: vertex 2 (input labels 1-based: vertex 2... the
    // anchor's non-neighbor) can sit only in the middle position; the two
    // anchor neighbors lose one position each.
    CHECK(e.forced_zero(0, 1));
    CHECK(e.forced_zero(1, 0));
    CHECK(e.forced_zero(1, 2));
    CHECK(e.forced_zero(2, 1));
    CHECK(e.forced_positions().size() == 4);

    // General case: eight pairs (1-based in comments).
    const std::vector<PairKey> expected = {
        PairKey::canonical(0, 0, 1, 2), // {p(1,1),p(2,3)}
        PairKey::canonical(1, 0, 0, 2), // {p(2,1),p(1,3)}
        PairKey::canonical(0, 0, 2, 1), // {p(1,1),p(3,2)}
        PairKey::canonical(0, 1, 2, 2), // {p(1,2),p(3,3)}
        PairKey::canonical(2, 0, 0, 1), // {p(3,1),p(1,2)}
        PairKey::canonical(2, 1, 0, 2), // {p(3,2),p(1,3)}
        PairKey::canonical(1, 0, 2, 2), // {p(2,1),p(3,3)}
        PairKey::canonical(2, 0, 1, 2), // {p(3,1),p(2,3)}
    };
    for (const PairKey& k : expected) CHECK(e.contains(k));

    // Nothing else beyond the forced positions' own pairs.
    std::set<PairKey> allowed(expected.begin(), expected.end());
    for (const PairKey& k : e.pairs_sorted()) {
        const bool from_forced = e.forced_zero(k.u, k.i) || e.forced_zero(k.v, k.j);
        if (!from_forced) CHECK(allowed.count(k) == 1);
    }
}

TEST_CASE("adjacency is restored after construction") {
    const Graph before = testutil::load_graph("petersen.edges");
    Graph g = before;
    (void)build_hcp_exclusions(g, 9);
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            CHECK(g.adjacent(a, b) == before.adjacent(a, b));
}

TEST_CASE("Petersen counts are anchor-independent") {
    const Graph g = testutil::load_graph("petersen.g6");
    for (int anchor = 0; anchor < 10; ++anchor) {
        const ExclusionSet e = build_hcp_exclusions(g, anchor);
        CHECK(qclose::initial_counts(e) == Counts{57, 858});
        CHECK(qclose::init_q(9, e).counts() == Counts{57, 858});
    }
}

TEST_CASE("no Hamilton cycle encoding is ever excluded") {
    std::mt19937_64 rng(21);
    std::vector<Graph> graphs;
    graphs.push_back(testutil::load_graph("k4.edges"));
    graphs.push_back(testutil::load_graph("c4.edges"));
    for (int t = 0; t < 6; ++t) graphs.push_back(testutil::planted_cubic(8, rng));

    for (const Graph& g : graphs) {
        const int n1 = g.vertex_count();
        const int n = n1 - 1;
        for (int anchor = 0; anchor < n1; ++anchor) {
            const ExclusionSet e = build_hcp_exclusions(g, anchor);
            const auto cycles = hamilton_encodings(g, anchor);
            for (const auto& sigma : cycles) {
                for (int i = 0; i < n; ++i) {
                    CHECK_FALSE(e.forced_zero(sigma[i], i));
                    for (int j = i + 1; j < n; ++j)
                        CHECK_FALSE(e.contains(sigma[i], i, sigma[j], j));
                }
            }
        }
    }
}

TEST_CASE("essential arcs force their endpoints' positions") {
    // A triangle with a pendant path: 1-2, 2-3, 1-3, 3-4. Edge 3-4 is a cut
    // edge, so deleting it disconnects vertex 4; with anchor 4 every
    // position pair for the (3,4) arc is excluded except adjacency itself.
    const Graph g = qclose::parse_graph("4 4\n1 2\n2 3\n1 3\n3 4\n", qclose::GraphFormat::edge_list);
    const ExclusionSet e = build_hcp_exclusions(g, 3);
    // Deleting the essential arc makes the anchor unreachable (distance
    // sentinel n+1), so the k-loops run through the whole range: Case 1
    // kills the early positions of vertex 3 (internal 2) and Case 2 the
    // late ones. A bridge at the anchor leaves no position at all — the
    // model is infeasible straight from initialization.
    CHECK(e.forced_zero(2, 0));
    CHECK(e.forced_zero(2, 1));
    CHECK(e.forced_zero(2, 2));
    const qclose::QMatrix q = qclose::init_q(3, e);
    const auto w = q.check_rows_columns();
    REQUIRE(w.has_value());
    // Pair coverage cascades: with vertex 3 pinned nowhere, the other two
    // vertices lose their remaining position too, and the scan reports the
    // first empty p row.
    CHECK(w->kind == qclose::RowColWitness::Kind::p_row);
    CHECK(w->u == 0);
}

TEST_CASE("companion closure applies the reversal symmetry") {
    const int n = 9;
    qclose::QMatrix q = qclose::init_q(n, ExclusionSet(n));
    q.zero_pair(PairKey::canonical(0, 1, 2, 3)); // (u,i,v,j)=(1,2,3,4) 1-based
    CHECK(qclose::companion_closure(q));
    CHECK_FALSE(q.get(0, 7, 2, 5)); // partner (1,8,3,6) 1-based
    CHECK_FALSE(qclose::companion_closure(q)); // idempotent

    qclose::QMatrix fresh = qclose::init_q(4, ExclusionSet(4));
    CHECK_FALSE(qclose::companion_closure(fresh));
}

TEST_CASE("companion closure is a no-op on freshly built HCP models") {
    for (const char* name : {"petersen.edges", "c4.edges", "k4.edges"}) {
        const Graph g = testutil::load_graph(name);
        const ExclusionSet e = build_hcp_exclusions(g, g.vertex_count() - 1);
        qclose::QMatrix q = qclose::init_q(e.dim(), e);
        CHECK_FALSE(qclose::companion_closure(q));
    }
}
