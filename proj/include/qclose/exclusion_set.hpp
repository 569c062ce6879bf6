#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qclose {

/// Canonical key of a pair variable {p(u,i), p(v,j)}. Indices are 0-based
/// internally (text I/O is 1-based). Canonical orientation is i < j; the
/// symmetric partner (v,j,u,i) is implied.
struct PairKey {
    int u, i, v, j;

    static PairKey canonical(int u, int i, int v, int j) {
        if (u == v || i == j)
            throw std::invalid_argument("PairKey: requires u != v and i != j");
        if (i > j) {
            std::swap(u, v);
            std::swap(i, j);
        }
        return PairKey{u, i, v, j};
    }

    friend bool operator==(const PairKey&, const PairKey&) = default;
    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

/// The exclusion set E: canonical pair keys plus the positions forced to
/// zero at the p level. A position is forced exactly when every admissible
/// pair involving it is present; force counts are maintained incrementally
/// so the forced set never needs a rescan.
class ExclusionSet {
public:
    explicit ExclusionSet(int n) : n_(n) {
        if (n < 1 || n > 255)
            throw std::invalid_argument("ExclusionSet: dimension must be in 1..255");
        cover_count_.assign(static_cast<std::size_t>(n) * n, 0);
        forced_.assign(static_cast<std::size_t>(n) * n, 0);
    }

    int dim() const { return n_; }

    /// Inserts the canonical pair; returns false when already present.
    bool add(int u, int i, int v, int j) {
        check_range(u, "u");
        check_range(i, "i");
        check_range(v, "v");
        check_range(j, "j");
        const PairKey k = PairKey::canonical(u, i, v, j);
        if (!keys_.insert(pack(k)).second) return false;
        bump(k.u, k.i);
        bump(k.v, k.j);
        return true;
    }
    bool add(const PairKey& k) { return add(k.u, k.i, k.v, k.j); }

    bool contains(int u, int i, int v, int j) const {
        if (u == v || i == j) return false;
        return keys_.count(pack(PairKey::canonical(u, i, v, j))) != 0;
    }
    bool contains(const PairKey& k) const { return contains(k.u, k.i, k.v, k.j); }

    /// Excludes every admissible pair involving (u,i), which marks the
    /// position forced to zero.
    void force_zero(int u, int i) {
        check_range(u, "u");
        check_range(i, "i");
        for (int v = 0; v < n_; ++v) {
            if (v == u) continue;
            for (int j = 0; j < n_; ++j) {
                if (j == i) continue;
                add(u, i, v, j);
            }
        }
    }

    bool forced_zero(int u, int i) const {
        return forced_[static_cast<std::size_t>(u) * n_ + i] != 0;
    }

    std::size_t pair_count() const { return keys_.size(); }

    /// Canonical pairs in lexicographic (u,i,v,j) order — deterministic for
    /// serialization and tests.
    std::vector<PairKey> pairs_sorted() const {
        std::vector<PairKey> out;
        out.reserve(keys_.size());
        for (std::uint32_t k : keys_)
            out.push_back(unpack(k));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::pair<int, int>> forced_positions() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int i = 0; i < n_; ++i)
                if (forced_zero(u, i)) out.emplace_back(u, i);
        return out;
    }

    /// Text format: header `n <dim>`, then one canonical pair per line as
    /// `u i v j`, 1-based, i < j; `#` starts a comment.
    void write_text(std::ostream& os) const {
        os << "n " << n_ << "\n";
        for (const PairKey& k : pairs_sorted())
            os << k.u + 1 << " " << k.i + 1 << " " << k.v + 1 << " " << k.j + 1 << "\n";
    }

    std::string to_text() const {
        std::ostringstream os;
        write_text(os);
        return os.str();
    }

    static ExclusionSet from_text(std::istream& is) {
        std::string line;
        int dim = -1;
        ExclusionSet e(1);
        std::size_t lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            if (dim < 0) {
                std::string tag;
                if (!(ls >> tag)) continue; // blank/comment before header
                if (tag != "n")
                    throw parse_error("exclusion set line " + std::to_string(lineno) +
                                      ": expected header 'n <dim>'");
                if (!(ls >> dim) || dim < 1)
                    throw parse_error("exclusion set: bad dimension in header");
                e = ExclusionSet(dim);
                continue;
            }
            int u, i, v, j;
            if (!(ls >> u)) continue; // blank/comment line
            if (!(ls >> i >> v >> j))
                throw parse_error("exclusion set line " + std::to_string(lineno) +
                                  ": expected 'u i v j'");
            std::string extra;
            if (ls >> extra)
                throw parse_error("exclusion set line " + std::to_string(lineno) +
                                  ": trailing tokens");
            if (u < 1 || u > dim || i < 1 || i > dim || v < 1 || v > dim || j < 1 || j > dim)
                throw parse_error("exclusion set line " + std::to_string(lineno) +
                                  ": index out of range 1.." + std::to_string(dim));
            if (u == v || i == j)
                throw parse_error("exclusion set line " + std::to_string(lineno) +
                                  ": pair must couple distinct rows and columns");
            if (i > j)
                throw parse_error("exclusion set line " + std::to_string(lineno) +
                                  ": pairs must be written with i < j");
            e.add(u - 1, i - 1, v - 1, j - 1);
        }
        if (dim < 0)
            throw parse_error("exclusion set: missing header 'n <dim>'");
        return e;
    }

    static ExclusionSet from_text(const std::string& text) {
        std::istringstream is(text);
        return from_text(is);
    }

    friend bool operator==(const ExclusionSet& a, const ExclusionSet& b) {
        return a.n_ == b.n_ && a.keys_ == b.keys_;
    }

private:
    void check_range(int x, const char* what) const {
        if (x < 0 || x >= n_)
            throw std::out_of_range(std::string("ExclusionSet: index ") + what +
                                    " out of range");
    }
    void bump(int u, int i) {
        int& c = cover_count_[static_cast<std::size_t>(u) * n_ + i];
        if (++c == (n_ - 1) * (n_ - 1))
            forced_[static_cast<std::size_t>(u) * n_ + i] = 1;
    }
    static std::uint32_t pack(const PairKey& k) {
        return (static_cast<std::uint32_t>(k.u) << 24) |
               (static_cast<std::uint32_t>(k.i) << 16) |
               (static_cast<std::uint32_t>(k.v) << 8) |
               static_cast<std::uint32_t>(k.j);
    }
    static PairKey unpack(std::uint32_t x) {
        return PairKey{static_cast<int>((x >> 24) & 0xff), static_cast<int>((x >> 16) & 0xff),
                       static_cast<int>((x >> 8) & 0xff), static_cast<int>(x & 0xff)};
    }

    int n_;
    std::unordered_set<std::uint32_t> keys_;
    std::vector<int> cover_count_;
    std::vector<char> forced_;
};

} // namespace qclose
