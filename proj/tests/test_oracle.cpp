#include <catch2/catch_amalgamated.hpp>

#include "qclose/engine.hpp"
#include "qclose/oracle.hpp"
#include "test_util.hpp"

using qclose::enumerate_open;
using qclose::ExclusionSet;
using qclose::PairKey;

TEST_CASE("empty exclusion set: everything open") {
    const auto res = enumerate_open(3, ExclusionSet(3));
    CHECK(res.feasible);
    CHECK(res.surviving_permutations == 6);
    CHECK(res.true_open_pairs.size() == 18);
    CHECK(res.true_open_p.size() == 9);
}

TEST_CASE("C4 model ground truth") {
    const qclose::Graph g = testutil::load_graph("c4.edges");
    const ExclusionSet e = qclose::build_hcp_exclusions(g, 3);
    const auto res = enumerate_open(3, e);
    CHECK(res.feasible);
    CHECK(res.surviving_permutations == 2); // the two traversal directions
    const std::set<PairKey> expected = {
        PairKey::canonical(0, 0, 1, 1), PairKey::canonical(0, 0, 2, 2),
        PairKey::canonical(1, 1, 2, 2), PairKey::canonical(0, 2, 1, 1),
        PairKey::canonical(0, 2, 2, 0), PairKey::canonical(1, 1, 2, 0),
    };
    CHECK(res.true_open_pairs == expected);
    const std::set<std::pair<int, int>> expected_p = {{0, 0}, {0, 2}, {1, 1}, {2, 0}, {2, 2}};
    CHECK(res.true_open_p == expected_p);
}

TEST_CASE("saturated exclusion set: infeasible") {
    ExclusionSet e(3);
    for (int u = 0; u < 3; ++u)
        for (int i = 0; i < 3; ++i)
            e.force_zero(u, i);
    const auto res = enumerate_open(3, e);
    CHECK_FALSE(res.feasible);
    CHECK(res.surviving_permutations == 0);
    CHECK(res.true_open_pairs.empty());
}

TEST_CASE("bound enforcement") {
    CHECK_THROWS_AS(enumerate_open(10, ExclusionSet(10)), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_open(4, ExclusionSet(5)), std::invalid_argument);
}

TEST_CASE("verify_run verdicts") {
    const qclose::Graph k4 = testutil::load_graph("k4.edges");
    const ExclusionSet e = qclose::build_hcp_exclusions(k4, 3);
    qclose::QMatrix q = qclose::init_q(3, e);
    const auto rep = qclose::run(q);
    const auto v = qclose::verify_run(3, e, q, rep.decision);
    CHECK(v.consistent);
    CHECK(v.description == "consistent");

    // Corrupting the final state must be flagged.
    qclose::QMatrix bad = q;
    bad.kill_block(0, 0);
    const auto vbad = qclose::verify_run(3, e, bad, rep.decision);
    CHECK_FALSE(vbad.consistent);

    // Oracle-infeasible + engine-undecided is allowed but labeled.
    ExclusionSet dead(3);
    for (int i = 0; i < 3; ++i) dead.force_zero(0, i);
    qclose::Decision undecided;
    undecided.kind = qclose::DecisionKind::undecided;
    const qclose::QMatrix qq = qclose::init_q(3, ExclusionSet(3));
    const auto vsound = qclose::verify_run(3, dead, qq, undecided);
    CHECK(vsound.consistent);
    CHECK(vsound.description == "incomplete but sound");

    // A false infeasibility claim is a violation.
    qclose::Decision wrong;
    wrong.kind = qclose::DecisionKind::infeasible;
    const auto vwrong = qclose::verify_run(3, ExclusionSet(3),
                                           qclose::init_q(3, ExclusionSet(3)), wrong);
    CHECK_FALSE(vwrong.consistent);
}

TEST_CASE("Petersen at the oracle bound: zero survivors, engine agrees") {
    const qclose::Graph g = testutil::load_graph("petersen.g6");
    const ExclusionSet e = qclose::build_hcp_exclusions(g, 9);
    const auto res = enumerate_open(9, e);
    CHECK_FALSE(res.feasible);
    CHECK(res.surviving_permutations == 0);

    qclose::QMatrix q = qclose::init_q(9, e);
    const auto rep = qclose::run(q);
    CHECK(rep.decision.kind == qclose::DecisionKind::infeasible);
    CHECK(qclose::verify_run(9, e, q, rep.decision).consistent);
}
