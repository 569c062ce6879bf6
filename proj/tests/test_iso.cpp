#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "qclose/engine.hpp"
#include "qclose/iso.hpp"
#include "test_util.hpp"

using qclose::build_iso_exclusions;
using qclose::ExclusionSet;
using qclose::Graph;
using qclose::IsoInstance;
using qclose::IsoMode;

namespace {

/// Brute-force (sub)isomorphism check: sigma maps pattern vertex a to host
/// vertex sigma[a]; collects every witnessing permutation.
std::vector<std::vector<int>> brute_witnesses(const Graph& f, const Graph& g, IsoMode mode) {
    const int m = g.vertex_count();
    const int mp = f.vertex_count();
    std::vector<int> sigma(static_cast<std::size_t>(m));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = a + 1; b < m && ok; ++b) {
                const bool fe = a < mp && b < mp && f.adjacent(a, b);
                const bool ge = g.adjacent(sigma[a], sigma[b]);
                if (fe && !ge) ok = false;
                if (mode == IsoMode::isomorphism && !fe && ge) ok = false;
            }
        if (ok) out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

Graph path3() { return qclose::parse_graph("3 2\n1 2\n2 3\n", qclose::GraphFormat::edge_list); }
Graph triangle() { return qclose::parse_graph("3 3\n1 2\n2 3\n1 3\n", qclose::GraphFormat::edge_list); }
Graph k2() { return qclose::parse_graph("2 1\n1 2\n", qclose::GraphFormat::edge_list); }
Graph empty2() { return qclose::parse_graph("2 0\n", qclose::GraphFormat::edge_list, false); }

} // namespace

TEST_CASE("K2 into K2 (subgraph): nothing excluded") {
    const ExclusionSet e = build_iso_exclusions({k2(), k2(), IsoMode::subgraph});
    CHECK(e.pair_count() == 0);
}

TEST_CASE("K2 into the 2-vertex empty host (subgraph): infeasible at init") {
    const ExclusionSet e = build_iso_exclusions({k2(), empty2(), IsoMode::subgraph});
    CHECK(e.pair_count() == 2);
    CHECK(e.contains(0, 0, 1, 1));
    CHECK(e.contains(0, 1, 1, 0));
    qclose::QMatrix q = qclose::init_q(2, e);
    const auto rep = qclose::run(q);
    CHECK(rep.decision.kind == qclose::DecisionKind::infeasible);
    CHECK(rep.sweeps == 0);
}

TEST_CASE("path-3 vs triangle (isomorphism): infeasible at init") {
    const ExclusionSet e = build_iso_exclusions({path3(), triangle(), IsoMode::isomorphism});
    // F(1,3)=0 while every host off-diagonal is 1: all pairs between
    // pattern rows 1 and 3 are excluded.
    for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
            if (c != d) CHECK(e.contains(0, c, 2, d));
    qclose::QMatrix q = qclose::init_q(3, e);
    const auto rep = qclose::run(q);
    CHECK(rep.decision.kind == qclose::DecisionKind::infeasible);
    CHECK(rep.sweeps == 0);
    CHECK(brute_witnesses(path3(), triangle(), IsoMode::isomorphism).empty());
}

TEST_CASE("K3 vs K3 (isomorphism): undecided") {
    const ExclusionSet e = build_iso_exclusions({triangle(), triangle(), IsoMode::isomorphism});
    qclose::QMatrix q = qclose::init_q(3, e);
    const auto rep = qclose::run(q);
    CHECK(rep.decision.kind == qclose::DecisionKind::undecided);
}

TEST_CASE("isomorphism mode rejects mismatched sizes; padding covers subgraph mode") {
    CHECK_THROWS_AS(build_iso_exclusions({k2(), triangle(), IsoMode::isomorphism}),
                    std::invalid_argument);
    // K2 into a triangle: the padded pattern vertex generates nothing.
    const ExclusionSet e = build_iso_exclusions({k2(), triangle(), IsoMode::subgraph});
    CHECK(e.pair_count() == 0);
    CHECK_THROWS_AS(build_iso_exclusions({triangle(), k2(), IsoMode::subgraph}),
                    std::invalid_argument);
}

TEST_CASE("subgraph exclusions are a subset of isomorphism exclusions") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        const int m = 3 + static_cast<int>(rng() % 3);
        Graph f(m), g(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (rng() % 2) f.add_edge(a, b);
                if (rng() % 2) g.add_edge(a, b);
            }
        const ExclusionSet sub = build_iso_exclusions({f, g, IsoMode::subgraph});
        const ExclusionSet iso = build_iso_exclusions({f, g, IsoMode::isomorphism});
        for (const auto& k : sub.pairs_sorted()) CHECK(iso.contains(k));
    }
}

TEST_CASE("soundness: witness permutations avoid the exclusion set") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 30; ++t) {
        const int m = 3 + static_cast<int>(rng() % 3);
        Graph f(m), g(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (rng() % 3 == 0) f.add_edge(a, b);
                if (rng() % 2) g.add_edge(a, b);
            }
        for (const IsoMode mode : {IsoMode::subgraph, IsoMode::isomorphism}) {
            const ExclusionSet e = build_iso_exclusions({f, g, mode});
            for (const auto& sigma : brute_witnesses(f, g, mode))
                for (int a = 0; a < m; ++a)
                    for (int b = a + 1; b < m; ++b)
                        CHECK_FALSE(e.contains(a, sigma[a], b, sigma[b]));
        }
    }
}

TEST_CASE("metamorphic: simultaneous relabeling induces pair relabeling") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 10; ++t) {
        const int m = 4;
        Graph f(m), g(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                if (rng() % 2) f.add_edge(a, b);
                if (rng() % 2) g.add_edge(a, b);
            }
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        const Graph f2 = f.relabeled(perm);
        const ExclusionSet e1 = build_iso_exclusions({f, g, IsoMode::isomorphism});
        const ExclusionSet e2 = build_iso_exclusions({f2, g, IsoMode::isomorphism});
        // e2's pattern vertex a is e1's perm[a]; pair sets must correspond.
        CHECK(e1.pair_count() == e2.pair_count());
        for (const auto& k : e2.pairs_sorted())
            CHECK(e1.contains(perm[k.u], k.i, perm[k.v], k.j));
    }
}
