#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bit_matrix.hpp"
#include "hcp.hpp"
#include "qmatrix.hpp"

namespace qclose {

enum class OverlayDepth { double_only, triple };
enum class SweepOrder { row_major, shuffled };

struct ClosureConfig {
    OverlayDepth overlay_depth = OverlayDepth::triple;
    bool boolean_closure_enabled = true;
    bool companion_symmetry = false;
    std::optional<std::int64_t> max_sweeps;
    int worker_count = 1;
    SweepOrder sweep_order = SweepOrder::row_major;
    std::uint64_t seed = 0;
};

enum class DecisionKind { infeasible, undecided, budget_exhausted };

inline const char* to_string(DecisionKind k) {
    switch (k) {
    case DecisionKind::infeasible: return "infeasible";
    case DecisionKind::undecided: return "undecided";
    case DecisionKind::budget_exhausted: return "budget_exhausted";
    }
    return "";
}

struct Decision {
    DecisionKind kind = DecisionKind::undecided;
    std::optional<RowColWitness> witness; // infeasible only
    std::optional<Counts> open_counts;    // undecided / budget_exhausted
};

struct RunReport {
    std::int64_t sweeps = 0;
    std::int64_t match_tests = 0;
    std::int64_t pairs_removed = 0;
    std::int64_t p_removed = 0;
    double wall_seconds = 0.0;
    Decision decision;
};

/// A p survives while its block still dominates some permutation.
inline bool test_p_variable(const QMatrix& q, int u, int i, std::int64_t* match_tests = nullptr) {
    if (match_tests) ++*match_tests;
    return has_perfect_match(q.block_view(u, i));
}

namespace detail {

/// Scratch for the overlay pipeline, one per worker.
struct OverlayScratch {
    BitMatrix d{1};
    BitMatrix t{1};
};

inline bool pair_test_impl(const QMatrix& q, int u, int i, int v, int j, OverlayDepth depth,
                           OverlayScratch& s, std::int64_t& match_tests) {
    const int n = q.dim();
    overlay_into(s.d, q.block_view(u, i), q.block_view(v, j));
    ++match_tests;
    if (!has_perfect_match(s.d)) return false;
    if (depth == OverlayDepth::triple) {
        // Inner fixpoint: any removal from the double overlay restarts the
        // scan from the first interior cell. D is scratch; nothing here is
        // written back to Q.
        bool restart = true;
        while (restart) {
            restart = false;
            for (int w = 0; w < n && !restart; ++w) {
                if (w == u || w == v) continue;
                for (int k = 0; k < n && !restart; ++k) {
                    if (k == i || k == j || !s.d.get(w, k)) continue;
                    overlay_into(s.t, s.d, q.block_view(w, k));
                    ++match_tests;
                    if (!has_perfect_match(s.t)) {
                        s.d.clear(w, k);
                        restart = true;
                    }
                }
            }
        }
        ++match_tests;
        if (!has_perfect_match(s.d)) return false;
    }
    return true;
}

} // namespace detail

/// Double overlay plus, at triple depth, the inner third-block fixpoint.
/// Orientation-independent: overlay is commutative and the interior scan
/// excludes both owner rows and columns.
inline bool test_pair_variable(const QMatrix& q, const PairKey& k,
                               OverlayDepth depth = OverlayDepth::triple,
                               std::int64_t* match_tests = nullptr) {
    detail::OverlayScratch s;
    std::int64_t local = 0;
    const bool r = detail::pair_test_impl(q, k.u, k.i, k.v, k.j, depth, s, local);
    if (match_tests) *match_tests += local;
    return r;
}

namespace detail {

struct Candidate {
    int u, i, v, j; // v == -1 encodes the p-cell candidate of block (u,i)
    bool is_p() const { return v < 0; }
};

inline std::vector<std::pair<int, int>> block_order(int n, const ClosureConfig& cfg,
                                                    std::int64_t sweep) {
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u)
        for (int i = 0; i < n; ++i)
            order.emplace_back(u, i);
    if (cfg.sweep_order == SweepOrder::shuffled) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(sweep) * 0x9e3779b97f4a7c15ull);
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

inline std::vector<std::pair<int, int>> cell_order(int n, int u, int i, const ClosureConfig& cfg,
                                                   std::int64_t sweep) {
    std::vector<std::pair<int, int>> order;
    for (int v = 0; v < n; ++v) {
        if (v == u) continue;
        for (int j = 0; j < n; ++j)
            if (j != i) order.emplace_back(v, j);
    }
    if (cfg.sweep_order == SweepOrder::shuffled) {
        std::mt19937_64 rng(cfg.seed ^ (static_cast<std::uint64_t>(sweep) << 32) ^
                            (static_cast<std::uint64_t>(u * n + i) * 0xd1342543de82ef95ull));
        std::shuffle(order.begin(), order.end(), rng);
    }
    return order;
}

} // namespace detail

/// Full closure run: optional up-front Boolean closure, then matching
/// sweeps to a global fixpoint (undecided), a violated row/column
/// (infeasible), or the sweep budget (budget_exhausted). With one worker
/// the sweep follows the serial schedule — live reads, immediate writes,
/// Boolean closure re-run after every p kill. With several workers each
/// sweep tests all candidates against an immutable snapshot taken at sweep
/// start and merges removals afterwards; removability is antitone in Q, so
/// stale-snapshot removals stay valid and both schedules reach the same
/// fixpoint.
inline RunReport run(QMatrix& q, const ClosureConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = q.dim();
    RunReport rep;
    auto finish = [&](DecisionKind kind, std::optional<RowColWitness> w) {
        rep.decision.kind = kind;
        rep.decision.witness = std::move(w);
        if (kind != DecisionKind::infeasible) rep.decision.open_counts = q.counts();
        rep.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    };

    if (cfg.companion_symmetry) companion_closure(q);
    if (cfg.boolean_closure_enabled) q.boolean_closure();
    if (auto w = q.check_rows_columns()) return finish(DecisionKind::infeasible, *w);

    while (true) {
        if (cfg.max_sweeps && rep.sweeps >= *cfg.max_sweeps)
            return finish(DecisionKind::budget_exhausted, std::nullopt);
        ++rep.sweeps;
        bool changed = false;

        if (cfg.worker_count <= 1) {
            detail::OverlayScratch scratch;
            for (auto [u, i] : detail::block_order(n, cfg, rep.sweeps)) {
                if (!q.p(u, i)) continue;
                if (!test_p_variable(q, u, i, &rep.match_tests)) {
                    q.kill_block(u, i);
                    ++rep.p_removed;
                    changed = true;
                    if (cfg.boolean_closure_enabled) q.boolean_closure();
                    if (auto w = q.check_rows_columns())
                        return finish(DecisionKind::infeasible, *w);
                    continue; // next block; the outer loop revisits survivors
                }
                for (auto [v, j] : detail::cell_order(n, u, i, cfg, rep.sweeps)) {
                    if (!q.get(u, i, v, j)) continue;
                    if (!detail::pair_test_impl(q, u, i, v, j, cfg.overlay_depth, scratch,
                                                rep.match_tests)) {
                        q.zero_pair(PairKey::canonical(u, i, v, j));
                        ++rep.pairs_removed;
                        changed = true;
                    }
                }
            }
        } else {
            const QMatrix snapshot = q;
            std::vector<detail::Candidate> cand;
            for (auto [u, i] : detail::block_order(n, cfg, rep.sweeps)) {
                if (!snapshot.p(u, i)) continue;
                cand.push_back({u, i, -1, -1});
                for (auto [v, j] : detail::cell_order(n, u, i, cfg, rep.sweeps))
                    if (snapshot.get(u, i, v, j)) cand.push_back({u, i, v, j});
            }
            const int workers = std::min<int>(cfg.worker_count,
                                              std::max<std::size_t>(cand.size(), 1));
            std::vector<std::vector<char>> fails(workers);
            std::vector<std::int64_t> tests(workers, 0);
            auto body = [&](int w) {
                detail::OverlayScratch scratch;
                fails[w].assign(cand.size(), 0);
                for (std::size_t c = w; c < cand.size(); c += workers) {
                    const auto& k = cand[c];
                    const bool keep =
                        k.is_p() ? test_p_variable(snapshot, k.u, k.i, &tests[w])
                                 : detail::pair_test_impl(snapshot, k.u, k.i, k.v, k.j,
                                                          cfg.overlay_depth, scratch, tests[w]);
                    if (!keep) fails[w][c] = 1;
                }
            };
            std::vector<std::thread> pool;
            for (int w = 1; w < workers; ++w) pool.emplace_back(body, w);
            body(0);
            for (auto& t : pool) t.join();
            for (int w = 0; w < workers; ++w) rep.match_tests += tests[w];
            // Merge in candidate order: deterministic regardless of worker count.
            for (std::size_t c = 0; c < cand.size(); ++c) {
                if (!fails[c % workers][c]) continue;
                const auto& k = cand[c];
                if (k.is_p()) {
                    if (q.p(k.u, k.i)) {
                        q.kill_block(k.u, k.i);
                        ++rep.p_removed;
                        changed = true;
                    }
                } else if (q.get(k.u, k.i, k.v, k.j)) {
                    q.zero_pair(PairKey::canonical(k.u, k.i, k.v, k.j));
                    ++rep.pairs_removed;
                    changed = true;
                }
            }
        }

        if (cfg.boolean_closure_enabled) {
            if (q.boolean_closure().changed) changed = true;
        }
        if (auto w = q.check_rows_columns()) return finish(DecisionKind::infeasible, *w);
        if (!changed) return finish(DecisionKind::undecided, std::nullopt);
    }
}

} // namespace qclose
