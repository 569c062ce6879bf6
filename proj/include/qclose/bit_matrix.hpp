#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qclose {

/// Dense square {0,1} matrix with word-packed rows. The unit of the
/// overlay and matching kernels; sides are small (tens), so everything
/// is kept flat and branch-light.
class BitMatrix {
public:
    explicit BitMatrix(int side, bool fill = false)
        : n_(side), words_(static_cast<int>((side + 63) / 64)),
          bits_(static_cast<std::size_t>(side) * static_cast<std::size_t>((side + 63) / 64), 0) {
        if (side < 1)
            throw std::invalid_argument("BitMatrix: side must be >= 1");
        if (fill) {
            for (int r = 0; r < n_; ++r)
                for (int c = 0; c < n_; ++c)
                    set(r, c);
        }
    }

    static BitMatrix identity(int side) {
        BitMatrix m(side);
        for (int i = 0; i < side; ++i)
            m.set(i, i);
        return m;
    }

    int side() const { return n_; }
    int words_per_row() const { return words_; }

    bool get(int r, int c) const {
        return (bits_[idx(r, c)] >> (c & 63)) & 1u;
    }
    void set(int r, int c) { bits_[idx(r, c)] |= std::uint64_t{1} << (c & 63); }
    void clear(int r, int c) { bits_[idx(r, c)] &= ~(std::uint64_t{1} << (c & 63)); }

    const std::uint64_t* row(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }
    std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }

    bool row_empty(int r) const {
        const std::uint64_t* w = row(r);
        for (int k = 0; k < words_; ++k)
            if (w[k]) return false;
        return true;
    }

    bool column_empty(int c) const {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        const int word = c >> 6;
        for (int r = 0; r < n_; ++r)
            if (bits_[static_cast<std::size_t>(r) * words_ + word] & mask) return false;
        return true;
    }

    /// True when the bitwise OR of all rows leaves some column uncovered.
    bool any_column_empty() const {
        for (int k = 0; k < words_; ++k) {
            std::uint64_t acc = 0;
            for (int r = 0; r < n_; ++r)
                acc |= bits_[static_cast<std::size_t>(r) * words_ + k];
            if (acc != full_word(k)) return true;
        }
        return false;
    }

    std::int64_t count() const {
        std::int64_t total = 0;
        for (std::uint64_t w : bits_)
            total += std::popcount(w);
        return total;
    }

    void clear_all() { bits_.assign(bits_.size(), 0); }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(r) * words_ + (c >> 6);
    }
    std::uint64_t full_word(int k) const {
        const int rem = n_ - k * 64;
        if (rem >= 64) return ~std::uint64_t{0};
        return (std::uint64_t{1} << rem) - 1;
    }

    int n_;
    int words_;
    std::vector<std::uint64_t> bits_;
};

/// Component-wise AND, written into dst (resized to match).
inline void overlay_into(BitMatrix& dst, const BitMatrix& a, const BitMatrix& b) {
    if (a.side() != b.side())
        throw std::invalid_argument("overlay: dimension mismatch");
    if (dst.side() != a.side())
        dst = BitMatrix(a.side());
    const int n = a.side(), w = a.words_per_row();
    for (int r = 0; r < n; ++r) {
        const std::uint64_t* ra = a.row(r);
        const std::uint64_t* rb = b.row(r);
        std::uint64_t* rd = dst.row(r);
        for (int k = 0; k < w; ++k)
            rd[k] = ra[k] & rb[k];
    }
}

inline BitMatrix overlay(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.side());
    overlay_into(out, a, b);
    return out;
}

/// Perfect-matching existence (rows to columns) by augmenting paths.
/// Returns true iff some permutation matrix is dominated by m. The
/// empty-row / empty-column screens run first; inside the closure
/// sweeps they answer the large majority of calls.
inline bool has_perfect_match(const BitMatrix& m) {
    const int n = m.side();
    const int w = m.words_per_row();
    for (int r = 0; r < n; ++r)
        if (m.row_empty(r)) return false;
    if (m.any_column_empty()) return false;

    thread_local std::vector<int> col_match;
    thread_local std::vector<std::uint64_t> visited;
    col_match.assign(static_cast<std::size_t>(n), -1);
    visited.assign(static_cast<std::size_t>(w), 0);

    auto augment = [&](auto&& self, int r) -> bool {
        const std::uint64_t* rw = m.row(r);
        for (int k = 0; k < w; ++k) {
            std::uint64_t avail = rw[k] & ~visited[k];
            while (avail) {
                const int c = k * 64 + std::countr_zero(avail);
                const std::uint64_t bit = avail & (~avail + 1);
                avail ^= bit;
                visited[k] |= bit;
                if (col_match[c] < 0 || self(self, col_match[c])) {
                    col_match[c] = r;
                    return true;
                }
            }
        }
        return false;
    };

    for (int r = 0; r < n; ++r) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!augment(augment, r)) return false;
    }
    return true;
}

} // namespace qclose
