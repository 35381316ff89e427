#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circa/polyhedron.hpp"

namespace circa {

/*
 * Simple undirected graph with named nodes. Node names are stored sorted and
 * edges as index pairs (smaller endpoint first) in lexicographic order, so
 * everything derived from a graph (polytopes, instance files, costs) is
 * byte-reproducible. Loops and parallel edges are rejected; at least three
 * nodes and one edge are required. Connectivity is not required: auxiliary
 * graphs of the reduction below can be disconnected.
 */
class Graph {
public:
    Graph(std::vector<std::string> nodes,
          std::vector<std::pair<std::string, std::string>> edges);

    Index node_count() const { return static_cast<Index>(names_.size()); }
    Index edge_count() const { return static_cast<Index>(edges_.size()); }
    const std::vector<std::string>& node_names() const { return names_; }
    const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }
    const std::string& node_name(Index v) const { return names_[static_cast<std::size_t>(v)]; }
    Index node_index(const std::string& name) const;

    Index degree(Index v) const;
    bool is_leaf(Index v) const { return degree(v) == 1; }
    const std::vector<Index>& incident_edges(Index v) const;
    Index edge_other_end(Index e, Index v) const;
    std::optional<Index> edge_between(Index u, Index v) const;

    bool is_connected() const;
    bool is_bipartite() const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<Index, Index>> edges_;
    std::vector<std::vector<Index>> incident_;
};

/// Fractional matching polytope of g: variables indexed by the canonical
/// edge order, one degree row per node of degree >= 2, then a negated
/// identity block for the nonnegativity rows.
Polyhedron build_fmat(const Graph& g);

/// Structural families covering all circuits of the fractional matching
/// polytope: alternating even cycles, odd cycles unbalanced at one node,
/// alternating paths, an odd cycle with a pendant path, and two odd cycles
/// joined by a path or a shared node.
enum class CircuitFamily { even_cycle, odd_cycle, path, cycle_path, cycle_path_cycle };

const char* family_name(CircuitFamily family);

/// Witness subgraph of a classified circuit, as edge-index lists.
struct FamilyTag {
    CircuitFamily family;
    std::vector<Index> cycle;         // first (or only) cycle, empty for paths
    std::vector<Index> path;          // pendant / connecting path, possibly empty
    std::vector<Index> second_cycle;  // cycle_path_cycle only
};

struct TaggedCircuit {
    RatVector circuit;  // canonical representative (first nonzero entry positive)
    FamilyTag tag;
};

/// Every admissible family vector on g, canonicalized up to global sign,
/// in lexicographic order. Desk scale.
std::vector<TaggedCircuit> generate_family_circuits(const Graph& g);

/// Classifies a circuit of build_fmat(g) by the shape of its support and its
/// weight pattern. Throws InvariantViolation when no family matches.
FamilyTag classify_circuit(const Graph& g, const RatVector& circuit);

/// Directed graph with distinguished source and sink.
class Digraph {
public:
    Digraph(std::vector<std::string> nodes,
            std::vector<std::pair<std::string, std::string>> arcs, const std::string& source,
            const std::string& sink);

    Index node_count() const { return static_cast<Index>(names_.size()); }
    const std::vector<std::string>& node_names() const { return names_; }
    const std::string& node_name(Index v) const { return names_[static_cast<std::size_t>(v)]; }
    const std::vector<std::pair<Index, Index>>& arcs() const { return arcs_; }
    Index source() const { return source_; }
    Index sink() const { return sink_; }
    bool has_arc(Index from, Index to) const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<Index, Index>> arcs_;
    Index source_;
    Index sink_;
};

/// Exhaustive search for a directed source-to-sink path visiting every node.
/// Permutation-based; intended for up to ~10 nodes.
bool hamiltonian_path_exists(const Digraph& d);

/*
 * Pivot-rule hardness instance derived from a digraph: an auxiliary
 * bipartite graph with two copies per non-sink node, a reference perfect-ish
 * matching, and costs that reward one alternating source'-to-sink' path with
 * exactly 2W + n - 1 (n = digraph node count). The instance's rate optimum
 * reaches that threshold iff the digraph has a Hamiltonian source-sink path.
 */
struct HardnessInstance {
    Graph graph;
    RatVector cost;               // integer entries, canonical edge order
    std::vector<Index> matching;  // edge indices, ascending
    RatVector matching_point;     // characteristic vector of the matching
    Int weight;                   // W
    Int threshold;                // 2W + n - 1
};

/// Builds and validates the instance. The default weight is
/// |E(aux graph)| + |nodes(d)| + 1; a supplied weight must exceed the
/// auxiliary edge count.
HardnessInstance build_hardness_instance(const Digraph& d, std::optional<Int> weight = {});

/// Circuits of build_fmat(g), for bipartite g, that are feasible directions
/// at the characteristic vector of the given matching: alternating paths and
/// even cycles whose negative edges lie in the matching, enumerated directly
/// with pruning instead of a polyhedral scan. Returns oriented vectors.
std::vector<RatVector> matching_feasible_circuits(const Graph& g,
                                                  const std::vector<Index>& matching);

struct HardnessScores {
    std::optional<Rational> best_rate;         // max -cost.g over feasible circuits
    std::optional<Rational> best_improvement;  // max -cost.(step * g), improving circuits only
};

/// Brute-force pivot optima at the instance's matching point.
HardnessScores score_hardness_instance(const HardnessInstance& instance);

}  // namespace circa
