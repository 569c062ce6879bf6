#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "engine.hpp"
#include "exclusion_set.hpp"
#include "qmatrix.hpp"

namespace qclose {

/// Ground truth by exhaustive permutation enumeration. A permutation
/// survives when none of its C(n,2) covering pairs is excluded and none of
/// its unit positions is forced zero; the true open set is the union of
/// covering pairs over survivors.
struct OracleResult {
    bool feasible = false;
    std::int64_t surviving_permutations = 0;
    std::set<PairKey> true_open_pairs;
    std::set<std::pair<int, int>> true_open_p;
};

inline constexpr int kOracleMaxN = 9;

inline OracleResult enumerate_open(int n, const ExclusionSet& e) {
    if (n != e.dim())
        throw std::invalid_argument("oracle: dimension mismatch");
    if (n > kOracleMaxN)
        throw std::invalid_argument("oracle: n exceeds the enumeration bound " +
                                    std::to_string(kOracleMaxN));
    OracleResult out;
    std::vector<int> sigma(static_cast<std::size_t>(n)); // position i -> vertex sigma[i]
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (e.forced_zero(sigma[i], i)) ok = false;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (e.contains(sigma[i], i, sigma[j], j)) ok = false;
        if (!ok) continue;
        ++out.surviving_permutations;
        for (int i = 0; i < n; ++i) {
            out.true_open_p.emplace(sigma[i], i);
            for (int j = i + 1; j < n; ++j)
                out.true_open_pairs.insert(PairKey::canonical(sigma[i], i, sigma[j], j));
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    out.feasible = out.surviving_permutations > 0;
    return out;
}

struct Verdict {
    bool consistent = true;
    std::string description = "consistent";
};

/// Validates an engine run against the oracle: the engine may only remove
/// provably dead cells, and may only claim infeasible when the oracle finds
/// no survivor. The converse gap (oracle infeasible, engine undecided) is
/// allowed — the engine is a sound but incomplete detector.
inline Verdict verify_run(int n, const ExclusionSet& e, const QMatrix& engine_final,
                          const Decision& decision) {
    const OracleResult truth = enumerate_open(n, e);
    for (const auto& [u, i] : truth.true_open_p)
        if (!engine_final.p(u, i))
            return {false, "violation: engine removed p(" + std::to_string(u + 1) + "," +
                               std::to_string(i + 1) + ") which covers a surviving permutation"};
    for (const PairKey& k : truth.true_open_pairs)
        if (!engine_final.get(k.u, k.i, k.v, k.j))
            return {false, "violation: engine removed open pair (" + std::to_string(k.u + 1) +
                               "," + std::to_string(k.i + 1) + "," + std::to_string(k.v + 1) +
                               "," + std::to_string(k.j + 1) + ")"};
    if (decision.kind == DecisionKind::infeasible && truth.feasible)
        return {false, "violation: engine reported infeasible on a feasible instance"};
    if (!truth.feasible && decision.kind == DecisionKind::undecided)
        return {true, "incomplete but sound"};
    return {true, "consistent"};
}

} // namespace qclose
