#include "tpmc/builtin_examples.hpp"
#include "tpmc/cc_solver.hpp"
#include "tpmc/conflict_graph.hpp"
#include "tpmc/enumeration.hpp"
#include "tpmc/generate.hpp"
#include "tpmc/io.hpp"
#include "tpmc/matching.hpp"
#include "tpmc/polytope.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>

namespace {

using Json = nlohmann::ordered_json;
using namespace tpmc;

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitUsage = 2;

Json rat_json(const Rational& value) {
    const auto& num = boost::multiprecision::numerator(value);
    const auto& den = boost::multiprecision::denominator(value);
    if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
        return Json(static_cast<std::int64_t>(num));
    }
    return Json(to_string(value));
}

CardinalityBound parse_card(const std::string& text) {
    std::size_t offset = 0;
    CardinalitySense sense;
    if (text.rfind("<=", 0) == 0) {
        sense = CardinalitySense::AT_MOST;
        offset = 2;
    } else if (text.rfind(">=", 0) == 0) {
        sense = CardinalitySense::AT_LEAST;
        offset = 2;
    } else if (text.rfind("==", 0) == 0) {
        sense = CardinalitySense::EXACTLY;
        offset = 2;
    } else if (text.rfind("=", 0) == 0) {
        sense = CardinalitySense::EXACTLY;
        offset = 1;
    } else {
        throw ParseError("cardinality bound must start with <=, =, or >=");
    }
    return {sense, static_cast<Int>(std::stoll(text.substr(offset)))};
}

void emit(const std::string& output_path, const std::string& text) {
    if (output_path.empty()) {
        std::cout << text;
    } else {
        write_file(output_path, text);
    }
}

std::string dump(const Json& doc) {
    return doc.dump(2) + "\n";
}

Json solution_json(const TpmcInstance& inst, const Solution& sol) {
    return Json::parse(serialize_solution(inst, sol));
}

// ---------------------------------------------------------------- solve ----

struct SolveArgs {
    std::string instance_path;
    std::string method = "exhaustive";
    std::string card_text;
    std::vector<std::string> fixed_selection;
    bool has_fixed = false;
    std::string output;
    int jobs = 1;
    bool human = false;
};

int run_solve(const SolveArgs& args) {
    const auto inst = parse_instance(read_file(args.instance_path));
    Json doc;
    if (args.has_fixed) {
        const auto sel = Selection::of_ids(inst, args.fixed_selection);
        const auto flow = min_cost_transport(inst, sel);
        if (flow.status == FlowStatus::OPTIMAL) {
            doc["status"] = "OPTIMAL";
            doc["solution"] = solution_json(inst, solution_from_flow(inst, sel, flow));
            doc["transport_cost"] = rat_json(flow.cost);
        } else {
            doc["status"] = "INFEASIBLE";
        }
    } else {
        std::optional<CardinalityBound> card;
        if (!args.card_text.empty()) card = parse_card(args.card_text);
        std::optional<Solution> solution;
        std::optional<CcCertificate> certificate;
        if (args.method == "exhaustive") {
            solution = solve_exact(inst, card, args.jobs);
        } else if (args.method == "lagrangian") {
            if (!card) throw ParseError("--method lagrangian requires --card");
            auto result = solve_cc(inst, *card, args.jobs);
            if (result) {
                solution = std::move(result->solution);
                certificate = std::move(result->certificate);
            }
        } else {
            throw ParseError("unknown method '" + args.method + "'");
        }
        if (!solution) {
            doc["status"] = "INFEASIBLE";
        } else {
            doc["status"] = "OPTIMAL";
            doc["solution"] = solution_json(inst, *solution);
            if (certificate) {
                Json cert;
                cert["lambda"] = rat_json(certificate->lambda);
                cert["sigma"] = certificate->sigma;
                cert["penalized_value"] = rat_json(certificate->penalized_value);
                cert["support_cards"] = certificate->support_cards;
                cert["swap_trace"] = certificate->swap_trace;
                doc["certificate"] = cert;
            }
        }
    }
    if (args.human) {
        std::string text = "status: " + doc["status"].get<std::string>() + "\n";
        if (doc.contains("solution")) {
            text += "objective: " + doc["solution"]["objective"].dump() + "\n";
        }
        emit(args.output, text);
    } else {
        emit(args.output, dump(doc));
    }
    return kExitOk;
}

// ---------------------------------------------------------------- sweep ----

int run_sweep(const std::string& instance_path, int jobs, bool human,
              const std::string& output) {
    const auto inst = parse_instance(read_file(instance_path));
    const auto profile = sweep_cardinality(inst, jobs);
    Json rows = Json::array();
    std::string table;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        Json row;
        row["k"] = k;
        if (profile[k]) {
            row["status"] = "OPTIMAL";
            row["value"] = rat_json(*profile[k]);
            table += std::to_string(k) + "\t" + to_string(*profile[k]) + "\n";
        } else {
            row["status"] = "INFEASIBLE";
            table += std::to_string(k) + "\tINFEASIBLE\n";
        }
        rows.push_back(std::move(row));
    }
    Json doc;
    doc["rows"] = std::move(rows);
    emit(output, human ? "k\tvalue\n" + table : dump(doc));
    return kExitOk;
}

// ------------------------------------------------------------- matching ----

int run_matching(const std::string& graph_path, Int k, int jobs, bool human,
                 const std::string& output) {
    const auto graph = parse_graph(read_file(graph_path));
    const auto matching = max_weight_matching_card(graph, k, jobs);
    Json doc;
    doc["k"] = k;
    doc["edges"] = Json::array();
    for (int e : matching) {
        doc["edges"].push_back(
            {{"index", e}, {"u", graph.edges[e].u}, {"v", graph.edges[e].v}});
    }
    doc["size"] = matching.size();
    doc["weight"] = rat_json(matching_weight(graph, matching));
    if (human) {
        std::string text = "matched " + std::to_string(matching.size()) +
                           " edges, weight " + to_string(matching_weight(graph, matching)) +
                           "\n";
        for (int e : matching) {
            text += "  e" + std::to_string(e) + ": " + std::to_string(graph.edges[e].u) +
                    "-" + std::to_string(graph.edges[e].v) + "\n";
        }
        emit(output, text);
    } else {
        emit(output, dump(doc));
    }
    return kExitOk;
}

// ------------------------------------------------------- conflict graph ----

int run_conflict_graph(const std::string& instance_path, const std::string& sol_a_path,
                       const std::string& sol_b_path, bool with_swap,
                       const std::string& output) {
    const auto inst = parse_instance(read_file(instance_path));
    const auto sol_a = parse_solution(inst, read_file(sol_a_path));
    const auto sol_b = parse_solution(inst, read_file(sol_b_path));
    const auto graph = build_conflict_graph(inst, sol_a, sol_b);

    Json doc;
    doc["k1"] = graph.k1();
    doc["k2"] = graph.k2();
    doc["total_value"] = rat_json(total_value(graph));
    doc["nodes"] = Json::array();
    for (const auto& node : graph.nodes()) {
        Json entry;
        entry["id"] = node.id;
        entry["kind"] = to_string(node.kind);
        entry["market"] = inst.markets()[node.market].id;
        entry["copy"] = to_string(node.copy_tag);
        entry["value"] = rat_json(node_value(node.kind));
        entry["suppliers"] = Json::array();
        for (int i : node.suppliers) entry["suppliers"].push_back(inst.supplies()[i].id);
        doc["nodes"].push_back(std::move(entry));
    }
    doc["edges"] = Json::array();
    for (const auto& [a, b] : graph.graph_edges()) {
        doc["edges"].push_back({graph.nodes()[a].id, graph.nodes()[b].id});
    }
    doc["components"] = Json::array();
    for (const auto& comp : classify_components(graph)) {
        Json entry;
        entry["kind"] = comp.kind == ComponentKind::PATH ? "PATH" : "EVEN_CYCLE";
        entry["value"] = rat_json(comp.value);
        entry["nodes"] = Json::array();
        for (int v : comp.nodes) entry["nodes"].push_back(graph.nodes()[v].id);
        doc["components"].push_back(std::move(entry));
    }
    if (with_swap) {
        const auto node_set = find_swap_subgraph(graph);
        const auto check = verify_swap_subgraph(graph, node_set);
        const auto outcome = apply_swap(graph, node_set);
        Json swap;
        swap["selected_nodes"] = Json::array();
        for (int v : node_set) swap["selected_nodes"].push_back(graph.nodes()[v].id);
        swap["properties"] = {{"component_closed", check.component_closed},
                              {"copies_balanced", check.copies_balanced},
                              {"full_excess_one", check.full_excess_one}};
        swap["rho"] = rat_json(outcome.rho);
        swap["delta"] = rat_json(outcome.delta);
        swap["sol3"] = solution_json(inst, outcome.sol3);
        swap["sol4"] = solution_json(inst, outcome.sol4);
        doc["swap"] = std::move(swap);
    }
    emit(output, dump(doc));
    return kExitOk;
}

// ---------------------------------------------------------------- audit ----

Json audit_verdict_json(const AuditVerdict& verdict) {
    Json doc;
    doc["holds"] = verdict.holds;
    doc["objectives_checked"] = verdict.objectives_checked;
    if (verdict.counterexample) {
        const auto& cx = *verdict.counterexample;
        Json entry;
        entry["objective"] = Json::array();
        for (const auto& c : cx.objective) entry["objective"].push_back(rat_json(c));
        entry["point"] = Json::array();
        for (const auto& c : cx.point.coords) entry["point"].push_back(rat_json(c));
        entry["relaxed_value"] = rat_json(cx.relaxed_value);
        entry["integral_value"] = rat_json(cx.integral_value);
        doc["counterexample"] = std::move(entry);
    }
    return doc;
}

int run_audit_theorem1(const std::string& instance_path, Int k, int random_objectives,
                       std::uint64_t seed, int jobs, const std::string& output) {
    const auto inst = parse_instance(read_file(instance_path));
    AuditOptions options;
    options.random_objectives = random_objectives;
    options.seed = seed;
    options.jobs = jobs;
    const auto verdict = audit_theorem1(inst, k, options);
    Json doc = audit_verdict_json(verdict);
    doc["audit"] = "theorem1";
    doc["k"] = k;
    emit(output, dump(doc));
    return verdict.holds ? kExitOk : kExitVerdictFailure;
}

int run_audit_matching(const std::string& graph_path, Int k, int random_objectives,
                       std::uint64_t seed, int jobs, const std::string& output) {
    const auto graph = parse_graph(read_file(graph_path));
    AuditOptions options;
    options.random_objectives = random_objectives;
    options.seed = seed;
    options.jobs = jobs;
    const auto verdict = audit_matching_cardinality(graph, k, options);
    Json doc = audit_verdict_json(verdict);
    doc["audit"] = "matching-cardinality";
    doc["k"] = k;
    emit(output, dump(doc));
    return verdict.holds ? kExitOk : kExitVerdictFailure;
}

Json example1_report(bool& ok) {
    const auto ex = example1();
    const auto report = extreme_point_check(ex.point, ex.system);
    ok = report.extreme && report.tight_rank == 7;
    Json doc;
    doc["extreme"] = report.extreme;
    doc["tight_rows"] = report.tight_rows;
    doc["tight_rank"] = report.tight_rank;
    doc["dimension"] = report.dimension;
    return doc;
}

Json example2_report(bool& ok) {
    const auto ex = example2();
    const auto points = enumerate_integral_points(ex.instance);
    const bool bound_met = point_rejection_total(ex.instance, ex.point) <= ex.k;
    const auto inside = hull_membership(ex.point, points);
    std::vector<RationalPoint> bounded;
    for (const auto& p : points) {
        if (point_rejection_total(ex.instance, p) <= ex.k) bounded.push_back(p);
    }
    const auto outside = hull_membership(ex.point, bounded);
    ok = bound_met && inside.inside && !outside.inside;

    Json doc;
    doc["k"] = ex.k;
    doc["integral_points"] = points.size();
    doc["in_relaxation"] = bound_met && inside.inside;
    Json weights = Json::array();
    for (std::size_t g = 0; g < points.size(); ++g) {
        if (inside.inside && inside.weights[g] != 0) {
            Json entry;
            entry["weight"] = rat_json(inside.weights[g]);
            entry["generator"] = Json::array();
            for (const auto& c : points[g].coords) entry["generator"].push_back(rat_json(c));
            weights.push_back(std::move(entry));
        }
    }
    doc["convex_combination"] = std::move(weights);
    doc["in_restricted_hull"] = outside.inside;
    if (!outside.inside) {
        Json separator = Json::array();
        for (const auto& c : outside.separator) separator.push_back(rat_json(c));
        doc["separating_hyperplane"] = {{"a", std::move(separator)},
                                        {"b", rat_json(outside.separator_rhs)}};
    }
    return doc;
}

int run_audit_example(int which, const std::string& output) {
    bool ok = false;
    Json doc = which == 1 ? example1_report(ok) : example2_report(ok);
    doc["pass"] = ok;
    emit(output, dump(doc));
    return ok ? kExitOk : kExitVerdictFailure;
}

int run_replay_examples(const std::string& output) {
    bool ok1 = false, ok2 = false;
    Json doc;
    doc["example1"] = example1_report(ok1);
    doc["example2"] = example2_report(ok2);
    doc["example1"]["pass"] = ok1;
    doc["example2"]["pass"] = ok2;
    std::string text = dump(doc);
    text += std::string(ok1 && ok2 ? "PASS" : "FAIL") + "\n";
    emit(output, text);
    return ok1 && ok2 ? kExitOk : kExitVerdictFailure;
}

// ------------------------------------------------------------------ gen ----

struct GenArgs {
    std::uint64_t seed = 0;
    int suppliers = 0;
    int markets = 0;
    int demand_cap = 2;
    int supply_cap = 1;
    std::string density = "1/2";
    Int cost_min = 0, cost_max = 9;
    Int revenue_min = 0, revenue_max = 20;
    int denominator_cap = 1;
    std::string output;
};

int run_gen(const GenArgs& args) {
    RandomInstanceOptions options;
    options.seed = args.seed;
    options.suppliers = args.suppliers;
    options.markets = args.markets;
    options.demand_cap = args.demand_cap;
    options.supply_cap = args.supply_cap;
    options.density = parse_rational(args.density);
    options.cost_min = args.cost_min;
    options.cost_max = args.cost_max;
    options.revenue_min = args.revenue_min;
    options.revenue_max = args.revenue_max;
    options.denominator_cap = args.denominator_cap;
    emit(args.output, serialize_instance(random_instance(options)));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver and polyhedral verifier for the transportation "
                 "problem with market choice"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
    solve->add_option("--instance", solve_args.instance_path, "Instance document")->required();
    solve->add_option("--method", solve_args.method, "exhaustive|lagrangian");
    solve->add_option("--card", solve_args.card_text, "Cardinality bound, e.g. \"<=2\"");
    auto* fixed = solve->add_option("--fixed-selection", solve_args.fixed_selection,
                                    "Serve exactly these markets (min-cost transport only)");
    solve->add_option("--jobs", solve_args.jobs, "Worker threads");
    solve->add_option("--output", solve_args.output, "Write the result here");
    solve->add_flag("--human", solve_args.human, "Table output");

    std::string sweep_instance, sweep_output;
    int sweep_jobs = 1;
    bool sweep_human = false;
    auto* sweep = app.add_subcommand("sweep", "Optimal value per exact rejection count");
    sweep->add_option("--instance", sweep_instance, "Instance document")->required();
    sweep->add_option("--jobs", sweep_jobs, "Worker threads");
    sweep->add_option("--output", sweep_output, "Write the result here");
    sweep->add_flag("--human", sweep_human, "Table output");

    std::string matching_graph, matching_output;
    Int matching_k = 0;
    int matching_jobs = 1;
    bool matching_human = false;
    auto* matching = app.add_subcommand("matching", "Max-weight matching with at most k edges");
    matching->add_option("--graph", matching_graph, "Graph document")->required();
    matching->add_option("--k", matching_k, "Edge budget")->required();
    matching->add_option("--jobs", matching_jobs, "Worker threads");
    matching->add_option("--output", matching_output, "Write the result here");
    matching->add_flag("--human", matching_human, "Table output");

    std::string cg_instance, cg_sol_a, cg_sol_b, cg_output;
    bool cg_swap = false;
    auto* conflict =
        app.add_subcommand("conflict-graph", "Dump the conflict graph of two solutions");
    conflict->add_option("--instance", cg_instance, "Instance document")->required();
    conflict->add_option("--sol-a", cg_sol_a, "First solution document")->required();
    conflict->add_option("--sol-b", cg_sol_b, "Second solution document")->required();
    conflict->add_flag("--swap", cg_swap, "Also run the marking walk and the swap");
    conflict->add_option("--output", cg_output, "Write the result here");

    auto* audit = app.add_subcommand("audit", "Polyhedral audits");
    audit->require_subcommand(1);
    std::string audit_instance, audit_graph, audit_output;
    Int audit_k = 0;
    int audit_rand = 64, audit_jobs = 1;
    std::uint64_t audit_seed = 2024;
    auto* theorem1 = audit->add_subcommand(
        "theorem1", "Cardinality-restricted integer hull identity on an instance");
    theorem1->add_option("--instance", audit_instance, "Instance document")->required();
    theorem1->add_option("--k", audit_k, "Rejection bound")->required();
    theorem1->add_option("--rand", audit_rand, "Random objectives in the battery");
    theorem1->add_option("--seed", audit_seed, "Battery seed");
    theorem1->add_option("--jobs", audit_jobs, "Worker threads");
    theorem1->add_option("--output", audit_output, "Write the result here");
    auto* audit_match = audit->add_subcommand(
        "matching", "Matching polytope intersected with a cardinality bound");
    audit_match->add_option("--graph", audit_graph, "Graph document")->required();
    audit_match->add_option("--k", audit_k, "Matching size bound")->required();
    audit_match->add_option("--rand", audit_rand, "Random objectives in the battery");
    audit_match->add_option("--seed", audit_seed, "Battery seed");
    audit_match->add_option("--jobs", audit_jobs, "Worker threads");
    audit_match->add_option("--output", audit_output, "Write the result here");
    auto* audit_ex1 = audit->add_subcommand("example1", "Replay the bundled example 1");
    audit_ex1->add_option("--output", audit_output, "Write the result here");
    auto* audit_ex2 = audit->add_subcommand("example2", "Replay the bundled example 2");
    audit_ex2->add_option("--output", audit_output, "Write the result here");

    std::string replay_output;
    auto* replay = app.add_subcommand("replay-examples", "Re-run both bundled examples");
    replay->add_option("--output", replay_output, "Write the result here");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--supplies", gen_args.suppliers, "Supply node count")->required();
    gen->add_option("--markets", gen_args.markets, "Market count")->required();
    gen->add_option("--demand-cap", gen_args.demand_cap, "Demands in 1..cap");
    gen->add_option("--supply-cap", gen_args.supply_cap, "Capacities in 1..cap");
    gen->add_option("--density", gen_args.density, "Edge density, rational");
    gen->add_option("--cost-min", gen_args.cost_min, "Cost range lower bound");
    gen->add_option("--cost-max", gen_args.cost_max, "Cost range upper bound");
    gen->add_option("--revenue-min", gen_args.revenue_min, "Revenue range lower bound");
    gen->add_option("--revenue-max", gen_args.revenue_max, "Revenue range upper bound");
    gen->add_option("--den-cap", gen_args.denominator_cap, "Denominators in 1..cap");
    gen->add_option("--output", gen_args.output, "Write the instance here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) {
            solve_args.has_fixed = fixed->count() > 0;
            return run_solve(solve_args);
        }
        if (sweep->parsed()) return run_sweep(sweep_instance, sweep_jobs, sweep_human, sweep_output);
        if (matching->parsed()) {
            return run_matching(matching_graph, matching_k, matching_jobs, matching_human,
                                matching_output);
        }
        if (conflict->parsed()) {
            return run_conflict_graph(cg_instance, cg_sol_a, cg_sol_b, cg_swap, cg_output);
        }
        if (audit->parsed()) {
            if (theorem1->parsed()) {
                return run_audit_theorem1(audit_instance, audit_k, audit_rand, audit_seed,
                                          audit_jobs, audit_output);
            }
            if (audit_match->parsed()) {
                return run_audit_matching(audit_graph, audit_k, audit_rand, audit_seed,
                                          audit_jobs, audit_output);
            }
            if (audit_ex1->parsed()) return run_audit_example(1, audit_output);
            if (audit_ex2->parsed()) return run_audit_example(2, audit_output);
        }
        if (replay->parsed()) return run_replay_examples(replay_output);
        if (gen->parsed()) return run_gen(gen_args);
    } catch (const FalsificationError& err) {
        std::cerr << "falsification: " << err.what() << "\n";
        return kExitVerdictFailure;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
