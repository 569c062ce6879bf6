#pragma once

#include <stdexcept>
#include <string>

namespace qclose {

/// Malformed input text (any format).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class graph_error_kind { syntax, loop, multi_edge, disconnected, vertex_range };

/// Graph-specific validation failure; kind distinguishes loop / multi-edge /
/// disconnected / out-of-range from plain syntax errors.
struct graph_error : parse_error {
    graph_error(graph_error_kind k, const std::string& msg) : parse_error(msg), kind(k) {}
    graph_error_kind kind;
};

} // namespace qclose
