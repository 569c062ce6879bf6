#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bit_matrix.hpp"
#include "exclusion_set.hpp"

namespace qclose {

struct Counts {
    std::int64_t p_nonzero = 0;
    std::int64_t v_size = 0;
    friend bool operator==(const Counts&, const Counts&) = default;
};

/// An all-zero row or column of the full n²×n² matrix, reported at the
/// granularity it was found: the p layer, or an interior row/column of a
/// live block.
struct RowColWitness {
    enum class Kind { p_row, p_col, block_row, block_col };
    Kind kind;
    int u = -1; // p_row / block owner row
    int i = -1; // p_col / block owner column
    int x = -1; // block_row: interior row v; block_col: interior column j

    std::string describe() const {
        switch (kind) {
        case Kind::p_row: return "p-layer row " + std::to_string(u + 1) + " all zero";
        case Kind::p_col: return "p-layer column " + std::to_string(i + 1) + " all zero";
        case Kind::block_row:
            return "block (" + std::to_string(u + 1) + "," + std::to_string(i + 1) +
                   ") interior row " + std::to_string(x + 1) + " all zero";
        case Kind::block_col:
            return "block (" + std::to_string(u + 1) + "," + std::to_string(i + 1) +
                   ") interior column " + std::to_string(x + 1) + " all zero";
        }
        return "";
    }
    friend bool operator==(const RowColWitness&, const RowColWitness&) = default;
};

struct ClosureOutcome {
    bool changed = false;
    std::optional<RowColWitness> witness;
};

/// The n²×n² block boolean matrix of the pair-variable system. Block (u,i)
/// carries p(u,i) at its own (u,i) cell and pair variables elsewhere; the
/// remaining entries of row u and column i within a block are structural
/// zeros. Cells only ever transition 1 -> 0; every write is paired with its
/// symmetric partner, so q(u,i,v,j) == q(v,j,u,i) always holds.
class QMatrix {
public:
    QMatrix(int n, const ExclusionSet& e) : n_(n), blocks_(static_cast<std::size_t>(n) * n, BitMatrix(n)) {
        if (e.dim() != n)
            throw std::invalid_argument("init_q: exclusion set dimension mismatch");
        for (int u = 0; u < n; ++u) {
            for (int i = 0; i < n; ++i) {
                BitMatrix& b = block(u, i);
                for (int v = 0; v < n; ++v)
                    for (int j = 0; j < n; ++j)
                        if ((v == u) == (j == i)) b.set(v, j);
            }
        }
        for (const PairKey& k : e.pairs_sorted()) {
            block(k.u, k.i).clear(k.v, k.j);
            block(k.v, k.j).clear(k.u, k.i);
        }
        for (auto [u, i] : e.forced_positions())
            kill_block(u, i);
    }

    int dim() const { return n_; }

    bool p(int u, int i) const { return block(u, i).get(u, i); }
    bool get(int u, int i, int v, int j) const { return block(u, i).get(v, j); }

    const BitMatrix& block_view(int u, int i) const { return block(u, i); }

    /// Zeroes p(u,i), its whole block, and its cell in every other block.
    void kill_block(int u, int i) {
        block(u, i).clear_all();
        for (int v = 0; v < n_; ++v)
            for (int j = 0; j < n_; ++j)
                block(v, j).clear(u, i);
    }

    /// Zeroes both orientations of a pair cell; false when already zero (or
    /// the key addresses a structural zero, which cannot hold a pair).
    bool zero_pair(const PairKey& k) {
        BitMatrix& a = block(k.u, k.i);
        BitMatrix& b = block(k.v, k.j);
        const bool was = a.get(k.v, k.j) || b.get(k.u, k.i);
        a.clear(k.v, k.j);
        b.clear(k.u, k.i);
        return was;
    }

    /// Unit propagation over the block equations, to fixpoint:
    ///   R1 symmetry (maintained by paired writes),
    ///   R2 dead p  => dead block,
    ///   R3 a live block with an empty interior row/column => p dies,
    ///   R4 a single survivor in an interior row (column) consumes its
    ///      column (row) within the block.
    ClosureOutcome boolean_closure() {
        bool changed_any = false;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u = 0; u < n_; ++u) {
                for (int i = 0; i < n_; ++i) {
                    BitMatrix& b = block(u, i);
                    if (!b.get(u, i)) {
                        // R2: entry points keep dead blocks zeroed; re-assert anyway.
                        bool any_bit = false;
                        for (int v = 0; v < n_ && !any_bit; ++v) any_bit = !b.row_empty(v);
                        if (any_bit) {
                            kill_block(u, i);
                            changed = true;
                        }
                        continue;
                    }
                    bool dead = false;
                    for (int v = 0; v < n_ && !dead; ++v)
                        if (v != u && b.row_empty(v)) dead = true;
                    for (int j = 0; j < n_ && !dead; ++j)
                        if (j != i && b.column_empty(j)) dead = true;
                    if (dead) {
                        kill_block(u, i);
                        changed = true;
                        continue;
                    }
                    for (int v = 0; v < n_; ++v) {
                        if (v == u) continue;
                        int nz = 0, jj = -1;
                        for (int j = 0; j < n_; ++j)
                            if (b.get(v, j)) { ++nz; jj = j; if (nz > 1) break; }
                        if (nz == 1) {
                            for (int w = 0; w < n_; ++w) {
                                if (w == u || w == v) continue;
                                if (b.get(w, jj)) {
                                    b.clear(w, jj);
                                    block(w, jj).clear(u, i);
                                    changed = true;
                                }
                            }
                        }
                    }
                    for (int j = 0; j < n_; ++j) {
                        if (j == i) continue;
                        int nz = 0, vv = -1;
                        for (int v = 0; v < n_; ++v)
                            if (b.get(v, j)) { ++nz; vv = v; if (nz > 1) break; }
                        if (nz == 1) {
                            for (int k = 0; k < n_; ++k) {
                                if (k == i || k == j) continue;
                                if (b.get(vv, k)) {
                                    b.clear(vv, k);
                                    block(vv, k).clear(u, i);
                                    changed = true;
                                }
                            }
                        }
                    }
                }
            }
            changed_any |= changed;
        }
        return ClosureOutcome{changed_any, check_rows_columns()};
    }

    /// Finds an all-zero row or column of the full matrix. Scan order:
    /// p-layer rows, p-layer columns, then blocks row-major. A full-matrix
    /// row (u,v), v != u, is empty exactly when some live block (u,i) has
    /// interior row v empty AND no block (u,*) holds a live cell in row v —
    /// the p-layer scan covers the case where every block (u,*) is dead.
    std::optional<RowColWitness> check_rows_columns() const {
        for (int u = 0; u < n_; ++u) {
            bool any = false;
            for (int i = 0; i < n_ && !any; ++i) any = p(u, i);
            if (!any) return RowColWitness{RowColWitness::Kind::p_row, u, -1, -1};
        }
        for (int i = 0; i < n_; ++i) {
            bool any = false;
            for (int u = 0; u < n_ && !any; ++u) any = p(u, i);
            if (!any) return RowColWitness{RowColWitness::Kind::p_col, -1, i, -1};
        }
        for (int u = 0; u < n_; ++u) {
            for (int i = 0; i < n_; ++i) {
                const BitMatrix& b = block(u, i);
                if (!b.get(u, i)) continue;
                for (int v = 0; v < n_; ++v) {
                    if (v == u || !b.row_empty(v)) continue;
                    if (full_row_empty(u, v))
                        return RowColWitness{RowColWitness::Kind::block_row, u, i, v};
                }
                for (int j = 0; j < n_; ++j) {
                    if (j == i || !b.column_empty(j)) continue;
                    if (full_column_empty(i, j))
                        return RowColWitness{RowColWitness::Kind::block_col, u, i, j};
                }
            }
        }
        return std::nullopt;
    }

    /// Live p cells, and live pair cells counted once (orientation i < j).
    Counts counts() const {
        Counts c;
        for (int u = 0; u < n_; ++u)
            for (int i = 0; i < n_; ++i) {
                const BitMatrix& b = block(u, i);
                if (b.get(u, i)) ++c.p_nonzero;
                for (int v = 0; v < n_; ++v) {
                    if (v == u) continue;
                    for (int j = i + 1; j < n_; ++j)
                        if (b.get(v, j)) ++c.v_size;
                }
            }
        return c;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    BitMatrix& block(int u, int i) { return blocks_[static_cast<std::size_t>(u) * n_ + i]; }
    const BitMatrix& block(int u, int i) const {
        return blocks_[static_cast<std::size_t>(u) * n_ + i];
    }

    bool full_row_empty(int u, int v) const {
        for (int i = 0; i < n_; ++i)
            if (!block(u, i).row_empty(v)) return false;
        return true;
    }
    bool full_column_empty(int i, int j) const {
        for (int u = 0; u < n_; ++u)
            if (!block(u, i).column_empty(j)) return false;
        return true;
    }

    int n_;
    std::vector<BitMatrix> blocks_;
};

inline QMatrix init_q(int n, const ExclusionSet& e) { return QMatrix(n, e); }

/// Counts at the reporting measurement point: a position is discounted when
/// it is forced or some interior row/column of its block is entirely
/// excluded; pair cells of the discounted blocks are dropped without
/// touching their mirror orientations, and survivors are counted once with
/// i < j. This is the raw post-initialization tally, before any symmetric
/// propagation.
inline Counts initial_counts(const ExclusionSet& e) {
    const int n = e.dim();
    std::vector<char> dead(static_cast<std::size_t>(n) * n, 0);
    for (int u = 0; u < n; ++u) {
        for (int i = 0; i < n; ++i) {
            bool d = e.forced_zero(u, i);
            for (int v = 0; v < n && !d; ++v) {
                if (v == u) continue;
                bool empty = true;
                for (int j = 0; j < n && empty; ++j)
                    if (j != i && !e.contains(u, i, v, j)) empty = false;
                d = empty;
            }
            for (int j = 0; j < n && !d; ++j) {
                if (j == i) continue;
                bool empty = true;
                for (int v = 0; v < n && empty; ++v)
                    if (v != u && !e.contains(u, i, v, j)) empty = false;
                d = empty;
            }
            dead[static_cast<std::size_t>(u) * n + i] = d;
        }
    }
    Counts c;
    for (int u = 0; u < n; ++u)
        for (int i = 0; i < n; ++i) {
            if (dead[static_cast<std::size_t>(u) * n + i]) continue;
            ++c.p_nonzero;
            for (int v = 0; v < n; ++v) {
                if (v == u) continue;
                for (int j = i + 1; j < n; ++j)
                    if (!e.contains(u, i, v, j)) ++c.v_size;
            }
        }
    return c;
}

} // namespace qclose
