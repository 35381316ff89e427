#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "circa/matching.hpp"
#include "circa/polyhedron.hpp"

namespace circa {

// Insertion-ordered JSON keeps serialized output byte-stable.
using Json = nlohmann::ordered_json;

/// Missing or unreadable file (distinct from malformed content).
class FileError : public std::runtime_error {
public:
    explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

/*
 * Universal instance file: {"name", "A", "b", "B", "d", "c", optional "x0"}
 * with matrices as row-lists of rational strings. Rationals are always
 * serialized as canonical "p/q" strings; bare JSON integers are accepted on
 * input.
 */
struct Instance {
    std::string name;
    Polyhedron polyhedron;
    RatVector cost;
    std::optional<RatVector> start;
};

Instance parse_instance(const Json& j);
Json instance_to_json(const Instance& instance);
Instance load_instance(const std::string& path);

/// Graph file: {"nodes": [...], "edges": [[u, v], ...]}.
Graph parse_graph(const Json& j);
Graph load_graph(const std::string& path);

/// Digraph file: {"nodes": [...], "arcs": [[u, v], ...], "s": ..., "t": ...}.
Digraph parse_digraph(const Json& j);
Digraph load_digraph(const std::string& path);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& value);
RatVector vector_from_json(const Json& j);
Json vector_to_json(const RatVector& v);
RatMatrix matrix_from_json(const Json& j, Index expected_cols);
Json matrix_to_json(const RatMatrix& m);

/// Comma-separated rational list, e.g. "1/2,0,-3" (for --at / --x0 flags).
RatVector parse_point(const std::string& text);

Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace circa
