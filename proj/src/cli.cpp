#include "circa/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <sstream>

#include "circa/circuits.hpp"
#include "circa/errors.hpp"
#include "circa/io.hpp"
#include "circa/matching.hpp"
#include "circa/pivot_rules.hpp"
#include "circa/walks.hpp"

namespace circa {

const char* const kCliVersion = "0.1.0";

namespace {

Json new_report() {
    Json j = Json::object();
    j["version"] = kCliVersion;
    return j;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Json step_to_json(const WalkStep& step) {
    Json j = Json::object();
    j["k"] = step.index;
    j["x"] = vector_to_json(step.point);
    j["g"] = vector_to_json(step.direction);
    j["alpha"] = rational_to_json(step.step_length);
    j["f"] = rational_to_json(step.objective);
    j["rule"] = step.rule;
    return j;
}

Json bound_check_to_json(const BoundCheck& check) {
    Json j = Json::object();
    j["name"] = check.name;
    j["bound"] = rational_to_json(check.bound);
    j["observed"] = check.observed;
    j["pass"] = check.pass;
    return j;
}

Json walk_report_to_json(const std::string& name, WalkRule rule, const WalkReport& report) {
    Json j = new_report();
    j["name"] = name;
    j["rule"] = walk_rule_name(rule);
    j["outcome"] = walk_outcome_name(report.outcome);
    j["step_count"] = report.steps.size();
    j["final_objective"] = rational_to_json(report.final_objective);
    j["final_point"] = vector_to_json(report.final_point);
    Json checks = Json::array();
    for (const auto& check : report.bound_checks) {
        checks.push_back(bound_check_to_json(check));
    }
    j["bound_checks"] = checks;
    if (rule == WalkRule::steepest_edge_01) {
        j["edge_walk"] = report.edge_walk;
    }
    Json steps = Json::array();
    for (const auto& step : report.steps) {
        steps.push_back(step_to_json(step));
    }
    j["steps"] = steps;
    return j;
}

WalkRule parse_walk_rule(const std::string& name) {
    if (name == "great") {
        return WalkRule::greatest_improvement;
    }
    if (name == "dantzig") {
        return WalkRule::dantzig;
    }
    if (name == "steepest") {
        return WalkRule::steepest_descent;
    }
    if (name == "steepest-edge-01") {
        return WalkRule::steepest_edge_01;
    }
    throw PreconditionError("unknown rule: " + name);
}

RatVector start_point(const Instance& instance, const std::string& override_text) {
    if (!override_text.empty()) {
        return parse_point(override_text);
    }
    if (instance.start) {
        return *instance.start;
    }
    throw PreconditionError("no start point: instance has no x0 and no --x0 given");
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

struct SolveArgs {
    std::string path;
    std::string rule = "great";
    std::string x0;
    std::size_t max_steps = 10000;
    std::string trace_path;
};

void cmd_solve(const SolveArgs& args, std::ostream& out) {
    const Instance instance = load_instance(args.path);
    const WalkRule rule = parse_walk_rule(args.rule);
    const RatVector x0 = start_point(instance, args.x0);
    if (!instance.polyhedron.is_feasible(x0)) {
        throw PreconditionError("start point is not feasible");
    }
    const WalkReport report =
        run_walk(instance.polyhedron, x0, instance.cost, rule, WalkLimits{args.max_steps});
    if (!args.trace_path.empty()) {
        std::ostringstream trace;
        for (const auto& step : report.steps) {
            trace << step_to_json(step).dump() << "\n";
        }
        save_text(args.trace_path, trace.str());
    }
    print_json(out, walk_report_to_json(instance.name, rule, report));
}

struct PivotArgs {
    std::string path;
    std::string rule = "great";
    std::string at;
};

void cmd_pivot(const PivotArgs& args, std::ostream& out) {
    const Instance instance = load_instance(args.path);
    const RatVector x = start_point(instance, args.at);
    const Polyhedron& p = instance.polyhedron;
    PivotResult res;
    if (args.rule == "great") {
        res = greatest_improvement(p, x, instance.cost);
    } else if (args.rule == "dantzig") {
        res = dantzig(p, x, instance.cost);
    } else if (args.rule == "steepest") {
        res = steepest_descent_enum(p, x, instance.cost);
    } else if (args.rule == "steepest-lp") {
        res = steepest_descent_lp(p, x, instance.cost);
    } else {
        throw PreconditionError("unknown rule: " + args.rule);
    }
    Json j = new_report();
    j["name"] = instance.name;
    j["rule"] = args.rule;
    j["at"] = vector_to_json(x);
    switch (res.status) {
        case PivotStatus::improving:
            j["status"] = "improving";
            break;
        case PivotStatus::optimal:
            j["status"] = "optimal";
            break;
        case PivotStatus::unbounded_ray:
            j["status"] = "unbounded";
            break;
    }
    if (res.choice) {
        j["circuit"] = vector_to_json(res.choice->circuit);
        j["alpha"] = res.choice->step ? rational_to_json(*res.choice->step) : Json();
        j["score"] = rational_to_json(res.choice->score);
        Json ties = Json::array();
        for (const auto& g : res.choice->tie_class) {
            ties.push_back(vector_to_json(g));
        }
        j["tie_class"] = ties;
    }
    print_json(out, j);
}

void cmd_circuits(const std::string& path, std::ostream& out) {
    const Instance instance = load_instance(path);
    for (const RatVector& g : enumerate_circuits(instance.polyhedron)) {
        for (Index i = 0; i < g.size(); ++i) {
            if (i > 0) {
                out << " ";
            }
            out << to_string(g(i));
        }
        out << "\n";
    }
}

void cmd_decompose(const std::string& path, const std::string& vector_text, std::ostream& out) {
    const Instance instance = load_instance(path);
    const RatVector v = parse_point(vector_text);
    const Decomposition dec = sign_compatible_decompose(instance.polyhedron, v);
    Json j = new_report();
    j["name"] = instance.name;
    j["target"] = vector_to_json(dec.target);
    Json terms = Json::array();
    for (const auto& term : dec.terms) {
        Json tj = Json::object();
        tj["alpha"] = rational_to_json(term.coefficient);
        tj["circuit"] = vector_to_json(term.circuit);
        terms.push_back(tj);
    }
    j["terms"] = terms;
    print_json(out, j);
}

Json graph_instance_json(const std::string& name, const Graph& graph, const RatVector& cost,
                         const RatVector* x0) {
    Instance instance{name, build_fmat(graph), cost, std::nullopt};
    if (x0 != nullptr) {
        instance.start = *x0;
    }
    return instance_to_json(instance);
}

void cmd_fmat(const std::string& path, const std::string& out_path, std::ostream& out) {
    const Graph graph = load_graph(path);
    // Default objective: maximize the total fractional matching weight.
    const RatVector cost = RatVector::Constant(graph.edge_count(), Rational(-1));
    const Json j = graph_instance_json(file_stem(path), graph, cost, nullptr);
    if (out_path.empty()) {
        print_json(out, j);
    } else {
        save_text(out_path, j.dump(2) + "\n");
    }
}

void cmd_fmat_circuits(const std::string& path, std::ostream& out) {
    const Graph graph = load_graph(path);
    const auto tagged = generate_family_circuits(graph);
    Json j = new_report();
    j["name"] = file_stem(path);
    j["count"] = tagged.size();
    Json list = Json::array();
    for (const auto& tc : tagged) {
        Json entry = Json::object();
        entry["family"] = family_name(tc.tag.family);
        entry["circuit"] = vector_to_json(tc.circuit);
        list.push_back(entry);
    }
    j["circuits"] = list;
    print_json(out, j);
}

struct HardnessArgs {
    std::string path;
    std::string out_path;
    std::string sidecar_path;
    long weight = 0;  // 0 = default
};

void cmd_hardness_gen(const HardnessArgs& args, std::ostream& out) {
    const Digraph d = load_digraph(args.path);
    const HardnessInstance inst = build_hardness_instance(
        d, args.weight > 0 ? std::optional<Int>(Int(args.weight)) : std::nullopt);
    const Json instance_json =
        graph_instance_json(file_stem(args.path), inst.graph, inst.cost, &inst.matching_point);

    Json sidecar = new_report();
    sidecar["name"] = file_stem(args.path);
    sidecar["W"] = inst.weight.str();
    sidecar["threshold"] = inst.threshold.str();
    Json matching = Json::array();
    for (Index e : inst.matching) {
        const auto& [a, b] = inst.graph.edges()[static_cast<std::size_t>(e)];
        matching.push_back(Json::array({inst.graph.node_name(a), inst.graph.node_name(b)}));
    }
    sidecar["matching"] = matching;

    if (args.out_path.empty() && args.sidecar_path.empty()) {
        Json combined = Json::object();
        combined["instance"] = instance_json;
        combined["sidecar"] = sidecar;
        print_json(out, combined);
        return;
    }
    if (!args.out_path.empty()) {
        save_text(args.out_path, instance_json.dump(2) + "\n");
    }
    if (!args.sidecar_path.empty()) {
        save_text(args.sidecar_path, sidecar.dump(2) + "\n");
    }
}

struct DistanceArgs {
    std::string path;
    std::string from;
    std::string to;
    std::size_t max_depth = 8;
};

void cmd_distance(const DistanceArgs& args, std::ostream& out) {
    const Instance instance = load_instance(args.path);
    const RatVector from = parse_point(args.from);
    const RatVector to = parse_point(args.to);
    const CircuitDistance dist =
        circuit_distance(instance.polyhedron, from, to, args.max_depth);
    const std::size_t upper = circuit_distance_upper_bound(instance.polyhedron, from, to);
    Json j = new_report();
    j["name"] = instance.name;
    j["from"] = vector_to_json(from);
    j["to"] = vector_to_json(to);
    Json dj = Json::object();
    dj["kind"] = dist.exact ? "exact" : "at-least";
    dj["value"] = dist.value;
    j["distance"] = dj;
    j["upper_bound"] = upper;
    print_json(out, j);
}

void cmd_stats(const std::string& path, std::ostream& out) {
    const Instance instance = load_instance(path);
    const Polyhedron& p = instance.polyhedron;
    Json j = new_report();
    j["name"] = instance.name;
    j["n"] = p.dim();
    j["m_eq"] = p.eq_count();
    j["m_ineq"] = p.ineq_count();
    j["delta"] = rational_to_json(p.max_subdeterminant());
    j["delta_bar"] = rational_to_json(p.max_augmented_subdeterminant());
    if (p.is_bounded()) {
        const DistanceStats stats = p.distance_stats();
        j["m1"] = rational_to_json(stats.max_vertex_distance);
        j["omega1"] = rational_to_json(stats.min_vertex_facet_distance);
    } else {
        j["m1"] = Json();
        j["omega1"] = Json();
        j["reason"] = "polyhedron is unbounded";
    }
    j["vertex_count"] = p.enumerate_vertices().size();
    j["circuit_count"] = enumerate_circuits(p).size();
    print_json(out, j);
}

void cmd_compare(const std::string& path, std::ostream& out) {
    const Instance instance = load_instance(path);
    const Polyhedron& p = instance.polyhedron;
    if (!p.is_bounded()) {
        throw PreconditionError("compare: instance must be bounded");
    }
    const RatVector x0 = start_point(instance, "");
    if (!p.is_feasible(x0)) {
        throw PreconditionError("compare: start point is not feasible");
    }
    bool zero_one = true;
    for (const RatVector& v : p.enumerate_vertices()) {
        for (Index i = 0; i < v.size() && zero_one; ++i) {
            if (v(i) != 0 && v(i) != 1) {
                zero_one = false;
            }
        }
    }
    std::vector<WalkRule> rules{WalkRule::greatest_improvement, WalkRule::dantzig,
                                WalkRule::steepest_descent};
    if (zero_one) {
        rules.push_back(WalkRule::steepest_edge_01);
    }
    out << "rule,steps,final_objective,bound,pass,edge_walk\n";
    for (WalkRule rule : rules) {
        const WalkReport report = run_walk(p, x0, instance.cost, rule, WalkLimits{});
        out << walk_rule_name(rule) << "," << report.steps.size() << ","
            << to_string(report.final_objective) << ",";
        if (!report.bound_checks.empty()) {
            bool all_pass = true;
            for (const auto& check : report.bound_checks) {
                all_pass = all_pass && check.pass;
            }
            out << to_string(report.bound_checks.front().bound) << ","
                << (all_pass ? "true" : "false");
        } else {
            out << ",";
        }
        out << ",";
        if (rule == WalkRule::steepest_edge_01) {
            out << (report.edge_walk ? "true" : "false");
        }
        out << "\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact circuit-augmentation walks on rational polyhedra"};
    app.set_version_flag("--version", kCliVersion);
    app.require_subcommand(1);

    std::function<void()> action;

    auto solve_args = std::make_shared<SolveArgs>();
    auto* solve = app.add_subcommand("solve", "run an augmentation walk on an instance");
    solve->add_option("instance", solve_args->path, "instance JSON file")->required();
    solve->add_option("--rule", solve_args->rule,
                      "pivot rule: great|dantzig|steepest|steepest-edge-01");
    solve->add_option("--x0", solve_args->x0, "start point, e.g. \"0,1/2\"");
    solve->add_option("--max-steps", solve_args->max_steps, "step limit");
    solve->add_option("--trace", solve_args->trace_path, "write one JSON object per step here");
    solve->callback([&action, solve_args, &out] {
        action = [solve_args, &out] { cmd_solve(*solve_args, out); };
    });

    auto pivot_args = std::make_shared<PivotArgs>();
    auto* pivot = app.add_subcommand("pivot", "solve one pivot-rule problem at a point");
    pivot->add_option("instance", pivot_args->path, "instance JSON file")->required();
    pivot->add_option("--rule", pivot_args->rule,
                      "pivot rule: great|dantzig|steepest|steepest-lp");
    pivot->add_option("--at", pivot_args->at, "query point, e.g. \"0,1/2\"");
    pivot->callback([&action, pivot_args, &out] {
        action = [pivot_args, &out] { cmd_pivot(*pivot_args, out); };
    });

    auto circuits_path = std::make_shared<std::string>();
    auto* circuits = app.add_subcommand("circuits", "enumerate circuits, one per line");
    circuits->add_option("instance", *circuits_path, "instance JSON file")->required();
    circuits->callback([&action, circuits_path, &out] {
        action = [circuits_path, &out] { cmd_circuits(*circuits_path, out); };
    });

    auto decompose_path = std::make_shared<std::string>();
    auto decompose_vector = std::make_shared<std::string>();
    auto* decompose =
        app.add_subcommand("decompose", "sign-compatible circuit decomposition of a vector");
    decompose->add_option("instance", *decompose_path, "instance JSON file")->required();
    decompose->add_option("--vector", *decompose_vector, "kernel vector, e.g. \"1,1,-2\"")
        ->required();
    decompose->callback([&action, decompose_path, decompose_vector, &out] {
        action = [decompose_path, decompose_vector, &out] {
            cmd_decompose(*decompose_path, *decompose_vector, out);
        };
    });

    auto fmat_path = std::make_shared<std::string>();
    auto fmat_out = std::make_shared<std::string>();
    auto* fmat = app.add_subcommand("fmat", "fractional matching instance from a graph file");
    fmat->add_option("graph", *fmat_path, "graph JSON file")->required();
    fmat->add_option("-o,--out", *fmat_out, "write the instance here instead of stdout");
    fmat->callback([&action, fmat_path, fmat_out, &out] {
        action = [fmat_path, fmat_out, &out] { cmd_fmat(*fmat_path, *fmat_out, out); };
    });

    auto fc_path = std::make_shared<std::string>();
    auto* fc = app.add_subcommand("fmat-circuits", "structural circuit families of a graph");
    fc->add_option("graph", *fc_path, "graph JSON file")->required();
    fc->callback([&action, fc_path, &out] {
        action = [fc_path, &out] { cmd_fmat_circuits(*fc_path, out); };
    });

    auto hardness_args = std::make_shared<HardnessArgs>();
    auto* hardness =
        app.add_subcommand("hardness-gen", "pivot-rule hardness instance from a digraph");
    hardness->add_option("digraph", hardness_args->path, "digraph JSON file")->required();
    hardness->add_option("-o,--out", hardness_args->out_path, "write the instance here");
    hardness->add_option("--sidecar", hardness_args->sidecar_path,
                         "write matching/weight/threshold metadata here");
    hardness->add_option("--weight", hardness_args->weight,
                         "override W (must exceed the auxiliary edge count)");
    hardness->callback([&action, hardness_args, &out] {
        action = [hardness_args, &out] { cmd_hardness_gen(*hardness_args, out); };
    });

    auto distance_args = std::make_shared<DistanceArgs>();
    auto* distance = app.add_subcommand("distance", "circuit distance between two vertices");
    distance->add_option("instance", distance_args->path, "instance JSON file")->required();
    distance->add_option("--from", distance_args->from, "start vertex")->required();
    distance->add_option("--to", distance_args->to, "target vertex")->required();
    distance->add_option("--max-depth", distance_args->max_depth, "search depth limit");
    distance->callback([&action, distance_args, &out] {
        action = [distance_args, &out] { cmd_distance(*distance_args, out); };
    });

    auto stats_path = std::make_shared<std::string>();
    auto* stats = app.add_subcommand("stats", "exact polyhedron statistics");
    stats->add_option("instance", *stats_path, "instance JSON file")->required();
    stats->callback([&action, stats_path, &out] {
        action = [stats_path, &out] { cmd_stats(*stats_path, out); };
    });

    auto compare_path = std::make_shared<std::string>();
    auto* compare = app.add_subcommand("compare", "run all applicable rules, CSV summary");
    compare->add_option("instance", *compare_path, "instance JSON file")->required();
    compare->callback([&action, compare_path, &out] {
        action = [compare_path, &out] { cmd_compare(*compare_path, out); };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << kCliVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    auto domain_error = [&out](const char* type, const char* message) {
        Json j = new_report();
        Json detail = Json::object();
        detail["type"] = type;
        detail["message"] = message;
        j["error"] = detail;
        print_json(out, j);
        return 1;
    };
    try {
        if (action) {
            action();
        }
    } catch (const FileError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        return domain_error("precondition", e.what());
    } catch (const DimensionError& e) {
        return domain_error("dimension", e.what());
    } catch (const SingularMatrixError& e) {
        return domain_error("singular-matrix", e.what());
    } catch (const ParseError& e) {
        return domain_error("parse", e.what());
    } catch (const InvariantViolation& e) {
        return domain_error("invariant", e.what());
    } catch (const std::exception& e) {
        return domain_error("internal", e.what());
    }
    return 0;
}

}  // namespace circa
