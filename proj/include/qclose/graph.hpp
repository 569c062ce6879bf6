#pragma once

#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qclose {

enum class GraphFormat { graph6, edge_list, adjacency };

/// Simple undirected graph with dense adjacency. Vertices are 0-based
/// internally; all text formats are 1-based (graph6 is index-free).
class Graph {
public:
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0), edges_(0) {
        if (n < 1)
            throw graph_error(graph_error_kind::syntax, "graph: vertex count must be >= 1");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return edges_; }

    bool adjacent(int a, int b) const { return adj_[idx(a, b)] != 0; }

    void add_edge(int a, int b) {
        check(a);
        check(b);
        if (a == b)
            throw graph_error(graph_error_kind::loop,
                              "graph: loop at vertex " + std::to_string(a + 1));
        if (adjacent(a, b))
            throw graph_error(graph_error_kind::multi_edge,
                              "graph: duplicate edge " + std::to_string(a + 1) + "-" +
                                  std::to_string(b + 1));
        adj_[idx(a, b)] = adj_[idx(b, a)] = 1;
        ++edges_;
    }

    void remove_edge(int a, int b) {
        if (adjacent(a, b)) {
            adj_[idx(a, b)] = adj_[idx(b, a)] = 0;
            --edges_;
        }
    }

    int degree(int v) const {
        int d = 0;
        for (int w = 0; w < n_; ++w) d += adj_[idx(v, w)];
        return d;
    }

    bool is_regular(int k) const {
        for (int v = 0; v < n_; ++v)
            if (degree(v) != k) return false;
        return true;
    }
    bool is_cubic() const { return is_regular(3); }

    bool connected() const {
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        std::deque<int> dq{0};
        seen[0] = 1;
        int reached = 1;
        while (!dq.empty()) {
            const int x = dq.front();
            dq.pop_front();
            for (int y = 0; y < n_; ++y)
                if (adj_[idx(x, y)] && !seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    dq.push_back(y);
                }
        }
        return reached == n_;
    }

    /// Relabels vertices by perm: new vertex k was old perm[k].
    Graph relabeled(const std::vector<int>& perm) const {
        Graph g(n_);
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (adjacent(perm[a], perm[b])) g.add_edge(a, b);
        return g;
    }

private:
    void check(int v) const {
        if (v < 0 || v >= n_)
            throw graph_error(graph_error_kind::vertex_range,
                              "graph: vertex " + std::to_string(v + 1) + " out of range 1.." +
                                  std::to_string(n_));
    }
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

    int n_;
    std::vector<char> adj_;
    int edges_;
};

/// Unit-weight shortest path length (edge count) between distinct vertices;
/// returns vertex_count as the unreachable sentinel (= n+1 for an
/// (n+1)-vertex graph).
inline int shortest_path_length(const Graph& g, int u, int v) {
    const int n1 = g.vertex_count();
    if (u == v) return 0;
    std::vector<int> dist(static_cast<std::size_t>(n1), -1);
    std::deque<int> dq{u};
    dist[u] = 0;
    while (!dq.empty()) {
        const int x = dq.front();
        dq.pop_front();
        for (int y = 0; y < n1; ++y) {
            if (!g.adjacent(x, y) || dist[y] >= 0) continue;
            dist[y] = dist[x] + 1;
            if (y == v) return dist[y];
            dq.push_back(y);
        }
    }
    return n1;
}

namespace detail {

inline Graph parse_graph6(const std::string& text) {
    std::string s = text;
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s.erase(0, header.size());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
        s.pop_back();
    if (s.empty()) throw parse_error("graph6: empty input");
    std::size_t pos = 0;
    auto next = [&]() -> int {
        if (pos >= s.size()) throw parse_error("graph6: truncated input");
        const unsigned char c = static_cast<unsigned char>(s[pos++]);
        if (c < 63 || c > 126)
            throw parse_error("graph6: invalid character at offset " + std::to_string(pos - 1));
        return c - 63;
    };
    long long n;
    int first = next();
    if (first < 63) {
        n = first;
    } else {
        // 126 prefix: 3- or 6-group size encoding
        int a = next();
        if (a == 63) {
            long long acc = 0;
            for (int k = 0; k < 6; ++k) acc = (acc << 6) | next();
            n = acc;
        } else {
            long long acc = a;
            for (int k = 0; k < 2; ++k) acc = (acc << 6) | next();
            n = acc;
        }
    }
    if (n < 1 || n > 255) throw parse_error("graph6: unsupported vertex count");
    Graph g(static_cast<int>(n));
    int bits = 0, have = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (have == 0) {
                bits = next();
                have = 6;
            }
            --have;
            if ((bits >> have) & 1) g.add_edge(i, j);
        }
    }
    while (pos < s.size()) {
        if (s[pos] != '\n' && s[pos] != '\r')
            throw parse_error("graph6: trailing characters");
        ++pos;
    }
    return g;
}

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long long nv = -1, ne = -1;
    std::size_t lineno = 0, got = 0;
    Graph g(1);
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (nv < 0) {
            if (!(ls >> nv)) continue;
            if (!(ls >> ne) || nv < 1 || ne < 0)
                throw parse_error("edge list line " + std::to_string(lineno) +
                                  ": expected header 'V E'");
            g = Graph(static_cast<int>(nv));
            continue;
        }
        long long a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b))
            throw parse_error("edge list line " + std::to_string(lineno) +
                              ": expected 'u v'");
        std::string extra;
        if (ls >> extra)
            throw parse_error("edge list line " + std::to_string(lineno) + ": trailing tokens");
        if (a < 1 || a > nv || b < 1 || b > nv)
            throw graph_error(graph_error_kind::vertex_range,
                              "edge list line " + std::to_string(lineno) +
                                  ": vertex out of range 1.." + std::to_string(nv));
        g.add_edge(static_cast<int>(a) - 1, static_cast<int>(b) - 1);
        ++got;
    }
    if (nv < 0) throw parse_error("edge list: missing header 'V E'");
    if (static_cast<long long>(got) != ne)
        throw parse_error("edge list: header declares " + std::to_string(ne) +
                          " edges, found " + std::to_string(got));
    return g;
}

inline Graph parse_adjacency(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<int>> rows;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            for (char c : tok) {
                if (c == '0')
                    row.push_back(0);
                else if (c == '1')
                    row.push_back(1);
                else
                    throw parse_error("adjacency matrix: entries must be 0 or 1");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw parse_error("adjacency matrix: empty input");
    for (const auto& r : rows)
        if (r.size() != n) throw parse_error("adjacency matrix: not square");
    for (std::size_t a = 0; a < n; ++a) {
        if (rows[a][a] != 0)
            throw graph_error(graph_error_kind::loop,
                              "adjacency matrix: nonzero diagonal at " + std::to_string(a + 1));
        for (std::size_t b = 0; b < n; ++b)
            if (rows[a][b] != rows[b][a])
                throw parse_error("adjacency matrix: not symmetric");
    }
    Graph g(static_cast<int>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (rows[a][b]) g.add_edge(static_cast<int>(a), static_cast<int>(b));
    return g;
}

} // namespace detail

inline Graph parse_graph(const std::string& text, GraphFormat format,
                         bool require_connected = true) {
    Graph g = format == GraphFormat::graph6      ? detail::parse_graph6(text)
              : format == GraphFormat::edge_list ? detail::parse_edge_list(text)
                                                 : detail::parse_adjacency(text);
    if (require_connected && !g.connected())
        throw graph_error(graph_error_kind::disconnected, "graph: not connected");
    return g;
}

} // namespace qclose
