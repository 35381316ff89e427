#include "circa/matching.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "circa/errors.hpp"

namespace circa {

namespace {

std::vector<Index> cycle_edges(const Graph& g, const std::vector<Index>& seq) {
    std::vector<Index> out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out.push_back(*g.edge_between(seq[i], seq[(i + 1) % seq.size()]));
    }
    return out;
}

std::vector<Index> path_edges(const Graph& g, const std::vector<Index>& seq) {
    std::vector<Index> out;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        out.push_back(*g.edge_between(seq[i], seq[i + 1]));
    }
    return out;
}

// Writes alternating values first, -first, ... along the closed node sequence.
void assign_cycle(const Graph& g, RatVector& vec, const std::vector<Index>& seq, long first) {
    long value = first;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        vec(*g.edge_between(seq[i], seq[(i + 1) % seq.size()])) = value;
        value = -value;
    }
}

void assign_path(const Graph& g, RatVector& vec, const std::vector<Index>& seq, long first) {
    long value = first;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        vec(*g.edge_between(seq[i], seq[i + 1])) = value;
        value = -value;
    }
}

std::vector<Index> rotate_cycle_to(const std::vector<Index>& seq, Index start) {
    const auto it = std::find(seq.begin(), seq.end(), start);
    std::vector<Index> out(it, seq.end());
    out.insert(out.end(), seq.begin(), it);
    return out;
}

// All simple paths, each emitted once (walking from the smaller endpoint).
void for_each_path(const Graph& g, const std::function<void(const std::vector<Index>&)>& emit) {
    const Index nn = g.node_count();
    std::vector<Index> seq;
    std::vector<bool> used(static_cast<std::size_t>(nn), false);
    std::function<void()> extend = [&] {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            const Index next = g.edge_other_end(e, cur);
            if (used[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            used[static_cast<std::size_t>(next)] = true;
            if (seq.front() < next) {
                emit(seq);
            }
            extend();
            used[static_cast<std::size_t>(next)] = false;
            seq.pop_back();
        }
    };
    for (Index s = 0; s < nn; ++s) {
        seq.assign(1, s);
        used.assign(static_cast<std::size_t>(nn), false);
        used[static_cast<std::size_t>(s)] = true;
        extend();
    }
}

// All simple cycles as node sequences: minimal node first, then the smaller
// neighbor, so each cycle appears exactly once.
void for_each_cycle(const Graph& g, const std::function<void(const std::vector<Index>&)>& emit) {
    const Index nn = g.node_count();
    std::vector<Index> seq;
    std::vector<bool> used(static_cast<std::size_t>(nn), false);
    std::function<void()> extend = [&] {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            const Index next = g.edge_other_end(e, cur);
            if (next == seq.front()) {
                if (seq.size() >= 3 && seq[1] < cur) {
                    emit(seq);
                }
                continue;
            }
            if (next < seq.front() || used[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            used[static_cast<std::size_t>(next)] = true;
            extend();
            used[static_cast<std::size_t>(next)] = false;
            seq.pop_back();
        }
    };
    for (Index s = 0; s < nn; ++s) {
        seq.assign(1, s);
        used.assign(static_cast<std::size_t>(nn), false);
        used[static_cast<std::size_t>(s)] = true;
        extend();
    }
}

// Simple paths start, p1, ..., pk (k >= 1) avoiding blocked nodes; every
// prefix is emitted.
void pendant_paths(const Graph& g, Index start, const std::vector<bool>& blocked,
                   const std::function<void(const std::vector<Index>&)>& emit) {
    std::vector<Index> seq{start};
    std::vector<bool> used(static_cast<std::size_t>(g.node_count()), false);
    used[static_cast<std::size_t>(start)] = true;
    std::function<void()> extend = [&] {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            const Index next = g.edge_other_end(e, cur);
            if (used[static_cast<std::size_t>(next)] || blocked[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            used[static_cast<std::size_t>(next)] = true;
            emit(seq);
            extend();
            used[static_cast<std::size_t>(next)] = false;
            seq.pop_back();
        }
    };
    extend();
}

// Simple paths from start to any target node whose interior avoids both the
// blocked and the target sets.
void connector_paths(const Graph& g, Index start, const std::vector<bool>& blocked,
                     const std::vector<bool>& target,
                     const std::function<void(const std::vector<Index>&)>& emit) {
    std::vector<Index> seq{start};
    std::vector<bool> used(static_cast<std::size_t>(g.node_count()), false);
    used[static_cast<std::size_t>(start)] = true;
    std::function<void()> extend = [&] {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            const Index next = g.edge_other_end(e, cur);
            if (used[static_cast<std::size_t>(next)]) {
                continue;
            }
            if (target[static_cast<std::size_t>(next)]) {
                seq.push_back(next);
                emit(seq);
                seq.pop_back();
                continue;
            }
            if (blocked[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            used[static_cast<std::size_t>(next)] = true;
            extend();
            used[static_cast<std::size_t>(next)] = false;
            seq.pop_back();
        }
    };
    extend();
}

}  // namespace

Graph::Graph(std::vector<std::string> nodes,
             std::vector<std::pair<std::string, std::string>> edges) {
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
        throw PreconditionError("graph: duplicate node name");
    }
    if (nodes.size() < 3) {
        throw PreconditionError("graph: at least three nodes required");
    }
    names_ = std::move(nodes);
    std::set<std::pair<Index, Index>> seen;
    for (const auto& [a, b] : edges) {
        Index u = node_index(a);
        Index v = node_index(b);
        if (u == v) {
            throw PreconditionError("graph: loop at node " + a);
        }
        if (u > v) {
            std::swap(u, v);
        }
        if (!seen.insert({u, v}).second) {
            throw PreconditionError("graph: parallel edge " + a + "-" + b);
        }
    }
    if (seen.empty()) {
        throw PreconditionError("graph: at least one edge required");
    }
    edges_.assign(seen.begin(), seen.end());
    incident_.resize(names_.size());
    for (Index e = 0; e < edge_count(); ++e) {
        incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].first)].push_back(e);
        incident_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].second)].push_back(
            e);
    }
}

Index Graph::node_index(const std::string& name) const {
    const auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) {
        throw PreconditionError("graph: unknown node " + name);
    }
    return static_cast<Index>(it - names_.begin());
}

Index Graph::degree(Index v) const {
    return static_cast<Index>(incident_[static_cast<std::size_t>(v)].size());
}

const std::vector<Index>& Graph::incident_edges(Index v) const {
    return incident_[static_cast<std::size_t>(v)];
}

Index Graph::edge_other_end(Index e, Index v) const {
    const auto& [a, b] = edges_[static_cast<std::size_t>(e)];
    return a == v ? b : a;
}

std::optional<Index> Graph::edge_between(Index u, Index v) const {
    for (Index e : incident_[static_cast<std::size_t>(u)]) {
        if (edge_other_end(e, u) == v) {
            return e;
        }
    }
    return std::nullopt;
}

bool Graph::is_connected() const {
    std::vector<bool> seen(static_cast<std::size_t>(node_count()), false);
    std::vector<Index> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const Index v = stack.back();
        stack.pop_back();
        for (Index e : incident_edges(v)) {
            const Index w = edge_other_end(e, v);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool Graph::is_bipartite() const {
    std::vector<int> color(static_cast<std::size_t>(node_count()), 0);
    for (Index s = 0; s < node_count(); ++s) {
        if (color[static_cast<std::size_t>(s)] != 0) {
            continue;
        }
        color[static_cast<std::size_t>(s)] = 1;
        std::vector<Index> stack{s};
        while (!stack.empty()) {
            const Index v = stack.back();
            stack.pop_back();
            for (Index e : incident_edges(v)) {
                const Index w = edge_other_end(e, v);
                if (color[static_cast<std::size_t>(w)] == 0) {
                    color[static_cast<std::size_t>(w)] = -color[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] ==
                           color[static_cast<std::size_t>(v)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Polyhedron build_fmat(const Graph& g) {
    const Index n = g.edge_count();
    std::vector<Index> constrained;
    for (Index v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) >= 2) {
            constrained.push_back(v);
        }
    }
    const Index rows = static_cast<Index>(constrained.size()) + n;
    RatMatrix b = RatMatrix::Zero(rows, n);
    RatVector d(rows);
    Index r = 0;
    for (Index v : constrained) {
        for (Index e : g.incident_edges(v)) {
            b(r, e) = 1;
        }
        d(r) = 1;
        ++r;
    }
    for (Index e = 0; e < n; ++e) {
        b(r, e) = -1;
        d(r) = 0;
        ++r;
    }
    return Polyhedron(RatMatrix(0, n), RatVector(0), std::move(b), std::move(d));
}

const char* family_name(CircuitFamily family) {
    switch (family) {
        case CircuitFamily::even_cycle:
            return "even-cycle";
        case CircuitFamily::odd_cycle:
            return "odd-cycle";
        case CircuitFamily::path:
            return "path";
        case CircuitFamily::cycle_path:
            return "cycle-path";
        case CircuitFamily::cycle_path_cycle:
            return "cycle-path-cycle";
    }
    return "?";
}

std::vector<TaggedCircuit> generate_family_circuits(const Graph& g) {
    const Index n = g.edge_count();
    const Index nn = g.node_count();
    std::map<RatVector, FamilyTag, LexLess> out;
    auto add = [&](const RatVector& vec, FamilyTag tag) {
        out.emplace(canonical_direction(vec), std::move(tag));
    };

    std::vector<std::vector<Index>> odd_cycles;
    for_each_cycle(g, [&](const std::vector<Index>& seq) {
        if (seq.size() % 2 == 0) {
            RatVector vec = RatVector::Zero(n);
            assign_cycle(g, vec, seq, 1);
            add(vec, {CircuitFamily::even_cycle, cycle_edges(g, seq), {}, {}});
        } else {
            odd_cycles.push_back(seq);
            for (Index w : seq) {
                RatVector vec = RatVector::Zero(n);
                assign_cycle(g, vec, rotate_cycle_to(seq, w), 1);
                add(vec, {CircuitFamily::odd_cycle, cycle_edges(g, seq), {}, {}});
            }
        }
    });

    for_each_path(g, [&](const std::vector<Index>& seq) {
        RatVector vec = RatVector::Zero(n);
        assign_path(g, vec, seq, 1);
        add(vec, {CircuitFamily::path, {}, path_edges(g, seq), {}});
    });

    // Odd cycle with a pendant path attached at one cycle node.
    for (const auto& cycle : odd_cycles) {
        std::vector<bool> blocked(static_cast<std::size_t>(nn), false);
        for (Index v : cycle) {
            blocked[static_cast<std::size_t>(v)] = true;
        }
        for (Index u : cycle) {
            pendant_paths(g, u, blocked, [&](const std::vector<Index>& pseq) {
                RatVector vec = RatVector::Zero(n);
                assign_cycle(g, vec, rotate_cycle_to(cycle, u), 1);
                assign_path(g, vec, pseq, -2);
                add(vec, {CircuitFamily::cycle_path, cycle_edges(g, cycle), path_edges(g, pseq),
                          {}});
            });
        }
    }

    // Two odd cycles, joined by a path or sharing one node.
    for (std::size_t i = 0; i < odd_cycles.size(); ++i) {
        for (std::size_t j = i + 1; j < odd_cycles.size(); ++j) {
            const auto& first = odd_cycles[i];
            const auto& second = odd_cycles[j];
            std::vector<Index> shared;
            for (Index v : first) {
                if (std::find(second.begin(), second.end(), v) != second.end()) {
                    shared.push_back(v);
                }
            }
            if (shared.size() == 1) {
                RatVector vec = RatVector::Zero(n);
                assign_cycle(g, vec, rotate_cycle_to(first, shared.front()), 1);
                assign_cycle(g, vec, rotate_cycle_to(second, shared.front()), -1);
                add(vec, {CircuitFamily::cycle_path_cycle, cycle_edges(g, first), {},
                          cycle_edges(g, second)});
                continue;
            }
            if (!shared.empty()) {
                continue;  // no family shape allows two or more shared nodes
            }
            std::vector<bool> blocked(static_cast<std::size_t>(nn), false);
            std::vector<bool> target(static_cast<std::size_t>(nn), false);
            for (Index v : first) {
                blocked[static_cast<std::size_t>(v)] = true;
            }
            for (Index v : second) {
                target[static_cast<std::size_t>(v)] = true;
            }
            for (Index u : first) {
                connector_paths(g, u, blocked, target, [&](const std::vector<Index>& pseq) {
                    RatVector vec = RatVector::Zero(n);
                    assign_cycle(g, vec, rotate_cycle_to(first, u), 1);
                    assign_path(g, vec, pseq, -2);
                    // Last path edge value fixes the second cycle's start sign.
                    const long last =
                        pseq.size() % 2 == 0 ? -2 : 2;  // edge count = pseq.size() - 1
                    assign_cycle(g, vec, rotate_cycle_to(second, pseq.back()), -last / 2);
                    add(vec, {CircuitFamily::cycle_path_cycle, cycle_edges(g, first),
                              path_edges(g, pseq), cycle_edges(g, second)});
                });
            }
        }
    }

    std::vector<TaggedCircuit> result;
    result.reserve(out.size());
    for (auto& [vec, tag] : out) {
        result.push_back({vec, std::move(tag)});
    }
    return result;
}

FamilyTag classify_circuit(const Graph& g, const RatVector& circuit) {
    if (circuit.size() != g.edge_count()) {
        throw DimensionError("classify_circuit: vector has wrong dimension");
    }
    const Index nn = g.node_count();
    std::vector<Index> ones;
    std::vector<Index> twos;
    std::vector<std::vector<Index>> inc(static_cast<std::size_t>(nn));
    std::vector<Rational> balance(static_cast<std::size_t>(nn), Rational(0));
    Index touched = 0;
    for (Index e = 0; e < g.edge_count(); ++e) {
        const Rational& value = circuit(e);
        if (value == 0) {
            continue;
        }
        const Rational a = abs(value);
        if (a == 1) {
            ones.push_back(e);
        } else if (a == 2) {
            twos.push_back(e);
        } else {
            throw InvariantViolation("classify_circuit: entry weight outside {1,2}");
        }
        const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
        if (inc[static_cast<std::size_t>(u)].empty()) {
            ++touched;
        }
        if (inc[static_cast<std::size_t>(v)].empty()) {
            ++touched;
        }
        inc[static_cast<std::size_t>(u)].push_back(e);
        inc[static_cast<std::size_t>(v)].push_back(e);
        balance[static_cast<std::size_t>(u)] += value;
        balance[static_cast<std::size_t>(v)] += value;
    }
    if (ones.empty() && twos.empty()) {
        throw InvariantViolation("classify_circuit: zero vector");
    }

    auto fail = [](const char* why) -> FamilyTag {
        throw InvariantViolation(std::string("classify_circuit: ") + why);
    };

    // Connectivity of the support subgraph.
    {
        Index start = -1;
        for (Index v = 0; v < nn && start < 0; ++v) {
            if (!inc[static_cast<std::size_t>(v)].empty()) {
                start = v;
            }
        }
        std::vector<bool> seen(static_cast<std::size_t>(nn), false);
        std::vector<Index> stack{start};
        seen[static_cast<std::size_t>(start)] = true;
        Index reached = 1;
        while (!stack.empty()) {
            const Index v = stack.back();
            stack.pop_back();
            for (Index e : inc[static_cast<std::size_t>(v)]) {
                const Index w = g.edge_other_end(e, v);
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != touched) {
            return fail("support is disconnected");
        }
    }

    auto support_degree = [&](Index v) {
        return static_cast<Index>(inc[static_cast<std::size_t>(v)].size());
    };
    std::vector<Index> deg1;
    std::vector<Index> deg4;
    for (Index v = 0; v < nn; ++v) {
        const Index d = support_degree(v);
        if (d == 0 || d == 2) {
            continue;
        }
        if (d == 1) {
            deg1.push_back(v);
        } else if (d == 4) {
            deg4.push_back(v);
        } else if (twos.empty() || d != 3) {
            return fail("support degree outside the family shapes");
        }
    }
    const auto unbalanced_count = [&] {
        Index c = 0;
        for (Index v = 0; v < nn; ++v) {
            if (balance[static_cast<std::size_t>(v)] != 0) {
                ++c;
            }
        }
        return c;
    };

    // Traces the chain of support edges from `from`, never walking back over
    // the previous edge; stops when it returns to `from` or hits a dead end.
    auto trace = [&](Index from, Index first_edge) {
        std::vector<Index> node_seq{from};
        Index prev_edge = first_edge;
        Index cur = g.edge_other_end(first_edge, from);
        while (cur != from) {
            node_seq.push_back(cur);
            Index next_edge = -1;
            for (Index e : inc[static_cast<std::size_t>(cur)]) {
                if (e != prev_edge) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge < 0) {
                break;
            }
            prev_edge = next_edge;
            cur = g.edge_other_end(next_edge, cur);
        }
        return node_seq;
    };

    if (twos.empty()) {
        if (deg1.empty() && deg4.empty()) {
            // A single cycle.
            const auto& [u, v] = g.edges()[static_cast<std::size_t>(ones.front())];
            const auto seq = trace(u, ones.front());
            if (seq.size() != ones.size()) {
                return fail("cycle trace does not cover the support");
            }
            if (ones.size() % 2 == 0) {
                if (unbalanced_count() != 0) {
                    return fail("even cycle must balance everywhere");
                }
                return {CircuitFamily::even_cycle, ones, {}, {}};
            }
            if (unbalanced_count() != 1) {
                return fail("odd cycle must be unbalanced at exactly one node");
            }
            return {CircuitFamily::odd_cycle, ones, {}, {}};
        }
        if (deg1.size() == 2 && deg4.empty()) {
            for (Index v = 0; v < nn; ++v) {
                if (support_degree(v) == 2 && balance[static_cast<std::size_t>(v)] != 0) {
                    return fail("path interior must balance");
                }
            }
            return {CircuitFamily::path, {}, ones, {}};
        }
        if (deg4.size() == 1 && deg1.empty()) {
            // Two cycles sharing the degree-4 node.
            const Index hub = deg4.front();
            if (unbalanced_count() != 0) {
                return fail("shared-node cycle pair must balance everywhere");
            }
            const Index e0 = inc[static_cast<std::size_t>(hub)].front();
            const auto seq1 = trace(hub, e0);
            const auto edges1 = cycle_edges(g, seq1);
            if (seq1.size() % 2 == 0 || edges1.size() + 3 > ones.size()) {
                return fail("shared-node pair must consist of two odd cycles");
            }
            std::set<Index> used(edges1.begin(), edges1.end());
            std::vector<Index> edges2;
            for (Index e : ones) {
                if (!used.contains(e)) {
                    edges2.push_back(e);
                }
            }
            if (edges2.size() % 2 == 0) {
                return fail("shared-node pair must consist of two odd cycles");
            }
            return {CircuitFamily::cycle_path_cycle, edges1, {}, edges2};
        }
        return fail("unit-weight support is neither cycle, path, nor cycle pair");
    }

    // Weight-2 edges are the connecting / pendant path.
    std::vector<Index> path_deg(static_cast<std::size_t>(nn), 0);
    for (Index e : twos) {
        const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
        ++path_deg[static_cast<std::size_t>(u)];
        ++path_deg[static_cast<std::size_t>(v)];
    }
    std::vector<Index> path_ends;
    for (Index v = 0; v < nn; ++v) {
        if (path_deg[static_cast<std::size_t>(v)] == 1) {
            path_ends.push_back(v);
        } else if (path_deg[static_cast<std::size_t>(v)] > 2) {
            return fail("weight-2 edges do not form a path");
        }
    }
    if (path_ends.size() != 2 || ones.empty()) {
        return fail("weight-2 edges do not form a path");
    }

    const auto on_cycle_part = [&](Index v) {
        for (Index e : inc[static_cast<std::size_t>(v)]) {
            if (abs(circuit(e)) == 1) {
                return true;
            }
        }
        return false;
    };
    const bool end0_on_cycle = on_cycle_part(path_ends[0]);
    const bool end1_on_cycle = on_cycle_part(path_ends[1]);

    if (end0_on_cycle != end1_on_cycle) {
        // Odd cycle with a pendant path; the free end is the only unbalanced node.
        const Index tip = end0_on_cycle ? path_ends[1] : path_ends[0];
        if (unbalanced_count() != 1 || balance[static_cast<std::size_t>(tip)] == 0) {
            return fail("pendant shape must be unbalanced exactly at the tip");
        }
        if (ones.size() % 2 == 0) {
            return fail("pendant shape needs an odd cycle");
        }
        return {CircuitFamily::cycle_path, ones, twos, {}};
    }
    if (end0_on_cycle && end1_on_cycle) {
        if (unbalanced_count() != 0) {
            return fail("cycle-path-cycle must balance everywhere");
        }
        const auto seq1 = trace(path_ends[0], [&] {
            for (Index e : inc[static_cast<std::size_t>(path_ends[0])]) {
                if (abs(circuit(e)) == 1) {
                    return e;
                }
            }
            return Index(-1);
        }());
        const auto edges1 = cycle_edges(g, seq1);
        if (seq1.size() % 2 == 0 || edges1.size() >= ones.size()) {
            return fail("cycle-path-cycle needs two odd cycles");
        }
        std::set<Index> used(edges1.begin(), edges1.end());
        std::vector<Index> edges2;
        for (Index e : ones) {
            if (!used.contains(e)) {
                edges2.push_back(e);
            }
        }
        if (edges2.size() % 2 == 0) {
            return fail("cycle-path-cycle needs two odd cycles");
        }
        return {CircuitFamily::cycle_path_cycle, edges1, twos, edges2};
    }
    return fail("path part not attached to the cycle part");
}

Digraph::Digraph(std::vector<std::string> nodes,
                 std::vector<std::pair<std::string, std::string>> arcs, const std::string& source,
                 const std::string& sink) {
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
        throw PreconditionError("digraph: duplicate node name");
    }
    if (nodes.size() < 2) {
        throw PreconditionError("digraph: at least two nodes required");
    }
    names_ = std::move(nodes);
    auto lookup = [&](const std::string& name) {
        const auto it = std::lower_bound(names_.begin(), names_.end(), name);
        if (it == names_.end() || *it != name) {
            throw PreconditionError("digraph: unknown node " + name);
        }
        return static_cast<Index>(it - names_.begin());
    };
    source_ = lookup(source);
    sink_ = lookup(sink);
    if (source_ == sink_) {
        throw PreconditionError("digraph: source and sink must differ");
    }
    std::set<std::pair<Index, Index>> seen;
    for (const auto& [from, to] : arcs) {
        const Index u = lookup(from);
        const Index v = lookup(to);
        if (u == v) {
            throw PreconditionError("digraph: loop at node " + from);
        }
        if (!seen.insert({u, v}).second) {
            throw PreconditionError("digraph: duplicate arc " + from + "->" + to);
        }
    }
    arcs_.assign(seen.begin(), seen.end());
}

bool Digraph::has_arc(Index from, Index to) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(from, to));
}

bool hamiltonian_path_exists(const Digraph& d) {
    std::vector<Index> middle;
    for (Index v = 0; v < d.node_count(); ++v) {
        if (v != d.source() && v != d.sink()) {
            middle.push_back(v);
        }
    }
    do {
        Index cur = d.source();
        bool ok = true;
        for (Index v : middle) {
            if (!d.has_arc(cur, v)) {
                ok = false;
                break;
            }
            cur = v;
        }
        if (ok && d.has_arc(cur, d.sink())) {
            return true;
        }
    } while (std::next_permutation(middle.begin(), middle.end()));
    return false;
}

HardnessInstance build_hardness_instance(const Digraph& d, std::optional<Int> weight) {
    const Index n = d.node_count();
    const Index t = d.sink();
    auto copy_a = [&](Index v) { return d.node_name(v) + "_a"; };
    auto copy_b = [&](Index v) { return d.node_name(v) + "_b"; };
    const std::string sink_name = d.node_name(t);
    const std::string source_aux = d.node_name(d.source()) + "'";
    const std::string sink_aux = sink_name + "'";

    std::vector<std::string> hnodes;
    std::vector<std::pair<std::string, std::string>> hedges;
    for (Index v = 0; v < n; ++v) {
        if (v == t) {
            continue;
        }
        hnodes.push_back(copy_a(v));
        hnodes.push_back(copy_b(v));
        hedges.emplace_back(copy_a(v), copy_b(v));
    }
    hnodes.push_back(sink_name);
    hnodes.push_back(source_aux);
    hnodes.push_back(sink_aux);
    for (const auto& [u, v] : d.arcs()) {
        if (u == t) {
            continue;  // the sink has no outgoing copy
        }
        hedges.emplace_back(copy_b(u), v == t ? sink_name : copy_a(v));
    }
    hedges.emplace_back(source_aux, copy_a(d.source()));
    hedges.emplace_back(sink_name, sink_aux);

    {
        std::set<std::string> unique(hnodes.begin(), hnodes.end());
        if (unique.size() != hnodes.size()) {
            throw PreconditionError(
                "hardness: digraph node names collide under the _a/_b/' suffixes");
        }
    }

    HardnessInstance inst{Graph(std::move(hnodes), std::move(hedges)), RatVector(), {}, RatVector(),
                          Int(0), Int(0)};
    const Graph& h = inst.graph;

    inst.weight = weight.value_or(Int(h.edge_count() + n + 1));
    if (inst.weight <= h.edge_count()) {
        throw PreconditionError("hardness: weight must exceed the auxiliary edge count");
    }
    inst.threshold = 2 * inst.weight + (n - 1);

    const Index source_aux_idx = h.node_index(source_aux);
    const Index sink_idx = h.node_index(sink_name);
    const Index sink_aux_idx = h.node_index(sink_aux);
    inst.cost = RatVector::Zero(h.edge_count());
    inst.matching_point = RatVector::Zero(h.edge_count());
    for (Index e = 0; e < h.edge_count(); ++e) {
        const auto& [a, b] = h.edges()[static_cast<std::size_t>(e)];
        const std::string& na = h.node_name(a);
        const std::string& nb = h.node_name(b);
        const bool is_copy_pair = na.size() == nb.size() && na.size() >= 2 &&
                                  na.compare(0, na.size() - 2, nb, 0, nb.size() - 2) == 0 &&
                                  na.ends_with("_a") && nb.ends_with("_b");
        if ((a == source_aux_idx || b == source_aux_idx)) {
            inst.cost(e) = Rational(-inst.weight);
        } else if ((a == sink_idx && b == sink_aux_idx) || (a == sink_aux_idx && b == sink_idx)) {
            inst.cost(e) = Rational(inst.weight);
            inst.matching.push_back(e);
            inst.matching_point(e) = 1;
        } else if (is_copy_pair) {
            inst.cost(e) = 0;
            inst.matching.push_back(e);
            inst.matching_point(e) = 1;
        } else {
            inst.cost(e) = -1;
        }
    }

    if (!h.is_bipartite()) {
        throw InvariantViolation("hardness: auxiliary graph must be bipartite");
    }
    const Polyhedron p = build_fmat(h);
    if (!p.is_feasible(inst.matching_point)) {
        throw InvariantViolation("hardness: matching point must be feasible");
    }
    if (h.is_connected() && !p.is_vertex(inst.matching_point)) {
        throw InvariantViolation("hardness: matching point must be a vertex");
    }
    return inst;
}

std::vector<RatVector> matching_feasible_circuits(const Graph& g,
                                                  const std::vector<Index>& matching) {
    if (!g.is_bipartite()) {
        throw PreconditionError("matching_feasible_circuits: graph must be bipartite");
    }
    const Index n = g.edge_count();
    const Index nn = g.node_count();
    std::vector<bool> in_matching(static_cast<std::size_t>(n), false);
    std::vector<bool> covered(static_cast<std::size_t>(nn), false);
    for (Index e : matching) {
        if (e < 0 || e >= n) {
            throw PreconditionError("matching_feasible_circuits: edge index out of range");
        }
        in_matching[static_cast<std::size_t>(e)] = true;
        const auto& [u, v] = g.edges()[static_cast<std::size_t>(e)];
        if (covered[static_cast<std::size_t>(u)] || covered[static_cast<std::size_t>(v)]) {
            throw PreconditionError("matching_feasible_circuits: edges are not a matching");
        }
        covered[static_cast<std::size_t>(u)] = true;
        covered[static_cast<std::size_t>(v)] = true;
    }
    // A degree row is tight at the matching point exactly at covered nodes of
    // degree >= 2; a feasible direction must be nonpositive there.
    auto constrained = [&](Index v) {
        return covered[static_cast<std::size_t>(v)] && g.degree(v) >= 2;
    };

    std::vector<RatVector> out;
    std::vector<Index> seq;
    std::vector<long> signs;  // sign of edge i of the current walk
    std::vector<bool> used(static_cast<std::size_t>(nn), false);

    auto emit_walk = [&](bool closed) {
        RatVector vec = RatVector::Zero(n);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            vec(*g.edge_between(seq[i], seq[i + 1])) = signs[i];
        }
        if (closed) {
            vec(*g.edge_between(seq.back(), seq.front())) = signs.back();
        }
        out.push_back(std::move(vec));
    };

    // Alternating paths: negative edges must be matched, and a constrained
    // endpoint forces its incident walk edge negative.
    std::function<void(long)> extend_path = [&](long next_sign) {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            if (next_sign < 0 && !in_matching[static_cast<std::size_t>(e)]) {
                continue;
            }
            const Index next = g.edge_other_end(e, cur);
            if (used[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            signs.push_back(next_sign);
            used[static_cast<std::size_t>(next)] = true;
            if (seq.front() < next && !(next_sign > 0 && constrained(next))) {
                emit_walk(false);
            }
            extend_path(-next_sign);
            used[static_cast<std::size_t>(next)] = false;
            signs.pop_back();
            seq.pop_back();
        }
    };
    for (Index s = 0; s < nn; ++s) {
        for (long start_sign : {1L, -1L}) {
            if (start_sign > 0 && constrained(s)) {
                continue;
            }
            seq.assign(1, s);
            signs.clear();
            used.assign(static_cast<std::size_t>(nn), false);
            used[static_cast<std::size_t>(s)] = true;
            extend_path(start_sign);
        }
    }

    // Alternating even cycles (all cycles are even here); negative edges must
    // be matched, node balance is automatic.
    std::function<void(long)> extend_cycle = [&](long next_sign) {
        const Index cur = seq.back();
        for (Index e : g.incident_edges(cur)) {
            if (next_sign < 0 && !in_matching[static_cast<std::size_t>(e)]) {
                continue;
            }
            const Index next = g.edge_other_end(e, cur);
            if (next == seq.front()) {
                if (seq.size() >= 3 && seq.size() % 2 == 0 && seq[1] < cur) {
                    signs.push_back(next_sign);
                    emit_walk(true);
                    signs.pop_back();
                }
                continue;
            }
            if (next < seq.front() || used[static_cast<std::size_t>(next)]) {
                continue;
            }
            seq.push_back(next);
            signs.push_back(next_sign);
            used[static_cast<std::size_t>(next)] = true;
            extend_cycle(-next_sign);
            used[static_cast<std::size_t>(next)] = false;
            signs.pop_back();
            seq.pop_back();
        }
    };
    for (Index s = 0; s < nn; ++s) {
        for (long start_sign : {1L, -1L}) {
            seq.assign(1, s);
            signs.clear();
            used.assign(static_cast<std::size_t>(nn), false);
            used[static_cast<std::size_t>(s)] = true;
            extend_cycle(start_sign);
        }
    }
    return out;
}

HardnessScores score_hardness_instance(const HardnessInstance& instance) {
    const Polyhedron p = build_fmat(instance.graph);
    const auto circuits = matching_feasible_circuits(instance.graph, instance.matching);
    const Index mi = p.ineq_count();
    RatVector slack(mi);
    for (Index i = 0; i < mi; ++i) {
        slack(i) = p.ineq_rhs()(i) - p.ineq_lhs().row(i).dot(instance.matching_point);
    }
    HardnessScores scores;
    for (const RatVector& g : circuits) {
        const Rational rate = -instance.cost.dot(g);
        if (!scores.best_rate || rate > *scores.best_rate) {
            scores.best_rate = rate;
        }
        if (rate <= 0) {
            continue;
        }
        const RatVector image = p.ineq_lhs() * g;
        std::optional<Rational> step;
        for (Index i = 0; i < mi; ++i) {
            if (image(i) <= 0) {
                continue;
            }
            const Rational ratio = slack(i) / image(i);
            if (!step || ratio < *step) {
                step = ratio;
            }
        }
        if (!step) {
            throw InvariantViolation("score_hardness_instance: improving circuit with free ray");
        }
        const Rational improvement = rate * *step;
        if (!scores.best_improvement || improvement > *scores.best_improvement) {
            scores.best_improvement = improvement;
        }
    }
    return scores;
}

}  // namespace circa
