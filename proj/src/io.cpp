#include "circa/io.hpp"

#include <fstream>
#include <sstream>

#include "circa/errors.hpp"

namespace circa {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    throw ParseError("expected a rational string or integer, got: " + j.dump());
}

Json rational_to_json(const Rational& value) { return to_string(value); }

RatVector vector_from_json(const Json& j) {
    if (!j.is_array()) {
        throw ParseError("expected an array of rationals, got: " + j.dump());
    }
    RatVector v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& entry : j) {
        v(i++) = rational_from_json(entry);
    }
    return v;
}

Json vector_to_json(const RatVector& v) {
    Json j = Json::array();
    for (Index i = 0; i < v.size(); ++i) {
        j.push_back(rational_to_json(v(i)));
    }
    return j;
}

RatMatrix matrix_from_json(const Json& j, Index expected_cols) {
    if (!j.is_array()) {
        throw ParseError("expected an array of matrix rows, got: " + j.dump());
    }
    const Index rows = static_cast<Index>(j.size());
    RatMatrix m(rows, expected_cols);
    Index r = 0;
    for (const auto& row : j) {
        const RatVector v = vector_from_json(row);
        if (v.size() != expected_cols) {
            throw ParseError("matrix row has wrong length");
        }
        m.row(r++) = v.transpose();
    }
    return m;
}

Json matrix_to_json(const RatMatrix& m) {
    Json j = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        j.push_back(vector_to_json(m.row(i).transpose()));
    }
    return j;
}

namespace {

const Json& require_field(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

}  // namespace

Instance parse_instance(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("instance file must be a JSON object");
    }
    const RatVector cost = vector_from_json(require_field(j, "c"));
    const Index n = cost.size();
    RatMatrix a = matrix_from_json(require_field(j, "A"), n);
    RatVector b = vector_from_json(require_field(j, "b"));
    RatMatrix bb = matrix_from_json(require_field(j, "B"), n);
    RatVector d = vector_from_json(require_field(j, "d"));
    Instance instance{require_field(j, "name").get<std::string>(),
                      Polyhedron(std::move(a), std::move(b), std::move(bb), std::move(d)), cost,
                      std::nullopt};
    if (j.contains("x0") && !j["x0"].is_null()) {
        instance.start = vector_from_json(j["x0"]);
        if (instance.start->size() != n) {
            throw ParseError("x0 has wrong dimension");
        }
    }
    return instance;
}

Json instance_to_json(const Instance& instance) {
    Json j = Json::object();
    j["name"] = instance.name;
    j["A"] = matrix_to_json(instance.polyhedron.eq_lhs());
    j["b"] = vector_to_json(instance.polyhedron.eq_rhs());
    j["B"] = matrix_to_json(instance.polyhedron.ineq_lhs());
    j["d"] = vector_to_json(instance.polyhedron.ineq_rhs());
    j["c"] = vector_to_json(instance.cost);
    if (instance.start) {
        j["x0"] = vector_to_json(*instance.start);
    }
    return j;
}

Instance load_instance(const std::string& path) { return parse_instance(load_json(path)); }

namespace {

std::vector<std::pair<std::string, std::string>> name_pairs(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw ParseError(std::string(what) + " must be an array of node pairs");
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2) {
            throw ParseError(std::string(what) + " entries must be pairs");
        }
        out.emplace_back(entry[0].get<std::string>(), entry[1].get<std::string>());
    }
    return out;
}

std::vector<std::string> name_list(const Json& j) {
    if (!j.is_array()) {
        throw ParseError("\"nodes\" must be an array of names");
    }
    std::vector<std::string> out;
    for (const auto& entry : j) {
        out.push_back(entry.get<std::string>());
    }
    return out;
}

}  // namespace

Graph parse_graph(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("graph file must be a JSON object");
    }
    return Graph(name_list(require_field(j, "nodes")),
                 name_pairs(require_field(j, "edges"), "\"edges\""));
}

Graph load_graph(const std::string& path) { return parse_graph(load_json(path)); }

Digraph parse_digraph(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("digraph file must be a JSON object");
    }
    return Digraph(name_list(require_field(j, "nodes")),
                   name_pairs(require_field(j, "arcs"), "\"arcs\""),
                   require_field(j, "s").get<std::string>(),
                   require_field(j, "t").get<std::string>());
}

Digraph load_digraph(const std::string& path) { return parse_digraph(load_json(path)); }

RatVector parse_point(const std::string& text) {
    std::vector<Rational> entries;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        entries.push_back(parse_rational(token));
    }
    if (entries.empty()) {
        throw ParseError("empty point literal");
    }
    RatVector v(static_cast<Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        v(static_cast<Index>(i)) = entries[i];
    }
    return v;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open file: " + path);
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw FileError("cannot open file for writing: " + path);
    }
    out << text;
}

}  // namespace circa
