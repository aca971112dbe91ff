#include "tcc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcc/decompose.hpp"
#include "tcc/dot.hpp"
#include "tcc/error.hpp"
#include "tcc/graph.hpp"
#include "tcc/policy.hpp"
#include "tcc/tracks.hpp"
#include "tcc/validate.hpp"

namespace tcc::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content, CommandResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    result.artifacts.push_back(path);
}

TransitionGraph load_graph(const std::string& path) { return parse_text(read_file(path)); }

std::string join(const TransitionGraph& g, const std::vector<Vertex>& vs, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += sep;
        out += g.id(vs[i]);
    }
    return out.empty() ? "-" : out;
}

std::string fixed(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

void header(const TransitionGraph& g, std::string& out) {
    if (g.name()) out += "graph " + *g.name() + "\n";
    out += "mode " + std::string(to_string(g.mode())) + "\n";
    out += "vertices " + std::to_string(g.size()) + ", arcs " + std::to_string(g.arc_count()) + "\n";
}

int cmd_validate(const std::string& path, double min_coverage, std::string& out) {
    const auto g = load_graph(path);
    const auto report = validate(g);
    header(g, out);
    const auto& c = report.coverage;
    out += "coverage " + fixed(c.value()) + " (" + std::to_string(c.covered) + "/" + std::to_string(c.total) + ")\n";
    out += "possible " + join(g, report.sets.possible) + "\n";
    out += "almost-sure " + join(g, report.sets.almost_sure) + "\n";
    out += "sure " + join(g, report.sets.sure) + "\n";
    out += "defects " + std::to_string(report.defects.size()) + "\n";
    bool trapped = false;
    for (const auto& d : report.defects) {
        out += "  " + std::string(to_string(d.kind)) + " " + join(g, d.vertices) + ": " + d.note + "\n";
        if (d.kind == DefectKind::OrientedCycleTrap || d.kind == DefectKind::LoopTrap) trapped = true;
    }
    // Compare as a rational so that e.g. 1/1 >= 1.0 is exact.
    const bool enough = static_cast<double>(c.covered) >= min_coverage * static_cast<double>(c.total) - 1e-12;
    const bool ok = enough && !trapped;
    out += std::string("result ") + (ok ? "PASS" : "FAIL") + " (min coverage " + fixed(min_coverage) + ")\n";
    out += "---\n";
    for (const auto& d : report.defects) {
        out += "DEFECT " + std::string(to_string(d.kind)) + " " + join(g, d.vertices) + "\n";
    }
    return ok ? kExitOk : kExitFailed;
}

int cmd_decompose(const std::string& path, const std::string& dot_path, std::string& out, CommandResult& result) {
    const auto g = load_graph(path);
    const auto d = decompose(g);
    header(g, out);

    out += "strong components " + std::to_string(d.scc.count()) + "\n";
    std::string order;
    for (auto c : d.condensation.order) order += " {" + join(g, d.scc.components[c]) + "}";
    out += "condensation order" + order + "\n";

    out += "target core " + join(g, d.core.members) + "\n";
    std::size_t depth = 0;
    for (Vertex v : d.core.members) depth = std::max(depth, *d.core.layer[v]);
    for (std::size_t k = 0; k <= depth && !d.core.members.empty(); ++k) {
        std::vector<Vertex> layer;
        for (Vertex v : d.core.members) {
            if (*d.core.layer[v] == k) layer.push_back(v);
        }
        out += "  layer " + std::to_string(k) + ": " + join(g, layer, " ") + "\n";
    }
    for (const auto& a : d.core.real_arcs) out += "  real " + g.id(a.source) + " -> " + g.id(a.destination) + "\n";
    for (const auto& va : d.core.virtual_arcs) {
        out += "  virtual " + g.id(va.arc.source) + " -> " + g.id(va.arc.destination);
        out += va.layer_delta ? " (layer delta " + std::to_string(*va.layer_delta) + ")\n" : " (leaves core)\n";
    }

    out += "isolated loops " + join(g, d.loops.isolated_loops) + "\n";
    out += "terminal loops " + join(g, d.loops.terminal_loops) + "\n";
    for (const auto& [root, members] : d.loops.trees) out += "  tree " + g.id(root) + ": " + join(g, members) + "\n";

    out += "residual " + join(g, d.residual.vertices) + "\n";
    for (const auto& c : d.residual.clusters) out += "  cluster " + join(g, c) + "\n";
    for (Vertex v : d.residual.singletons) out += "  singleton " + g.id(v) + "\n";
    std::string rorder;
    for (const auto& part : d.residual.order) {
        rorder += part.kind == ResidualPart::Kind::Cluster ? " {" + join(g, d.residual.clusters[part.index]) + "}"
                                                           : " " + g.id(d.residual.singletons[part.index]);
    }
    out += "  order" + (rorder.empty() ? std::string(" -") : rorder) + "\n";

    out += "components " + std::to_string(d.components.size()) + "\n";
    for (const auto& cls : d.components) {
        out += "  " + std::string(to_string(cls.kind)) + " " + join(g, cls.vertices);
        if (cls.kind == ComponentKind::Cactus) out += " cycle " + join(g, cls.cycle, ">");
        if (cls.kind == ComponentKind::LoopTree) out += " root " + g.id(*cls.root);
        out += "\n";
    }
    const auto branching = in_branching_check(g);
    out += std::string("in-branching ") + (branching.exists ? "yes" : "no");
    if (!branching.exists) out += " (terminal component " + join(g, branching.offending_component) + ")";
    out += "\n";

    if (!dot_path.empty()) write_file(dot_path, to_dot(g, &d), result);
    return kExitOk;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, std::string& out) {
    const auto a = load_graph(a_path);
    const auto b = load_graph(b_path);
    const auto r = compare(a, b);
    out += "winner " + std::string(to_string(r.winner)) + "\n";
    out += "coverage " + fixed(r.coverage.first.value()) + " vs " + fixed(r.coverage.second.value()) + "\n";
    out += "mean steps " + fixed(r.mean_steps.first, 6) + " vs " + fixed(r.mean_steps.second, 6) + "\n";
    out += "detail " + r.detail + "\n";
    out += "rule coverage first, then mean steps to target\n";
    return kExitOk;
}

int cmd_optimize(const std::string& path, const std::string& out_path, std::string& out, CommandResult& result) {
    const auto g = load_graph(path);
    const auto policy = optimize_policy(g);
    const auto text = format_policy(g, policy);
    out += text;
    out += "# covered " + std::to_string(g.size() - policy.uncovered.size()) + "/" + std::to_string(g.size()) + "\n";
    if (!out_path.empty()) write_file(out_path, text, result);
    return kExitOk;
}

OutcomeSpec parse_outcome(const std::string& kind, const TransitionGraph& g) {
    if (kind == "reached") return OutcomeSpec::reached();
    if (kind == "steps") return OutcomeSpec::steps();
    if (kind.starts_with("fraction:")) {
        auto v = g.find(kind.substr(9));
        if (!v) throw Error(ErrorKind::StartUnknown, "unknown outcome state '" + kind.substr(9) + "'");
        return OutcomeSpec::fraction_in(*v);
    }
    throw CLI::ValidationError("--outcome", "expected reached, steps or fraction:<state>");
}

int cmd_simulate(const std::string& path, const std::string& start, std::size_t tracks, std::size_t max_steps,
                 std::uint64_t seed, const std::string& outcome, const std::string& export_path, std::string& out,
                 CommandResult& result) {
    const auto g = load_graph(path);
    const auto spec = parse_outcome(outcome, g);
    const auto trellis = simulate_trellis(g, start, tracks, max_steps, seed);

    std::size_t reached = 0, capped = 0, dead = 0;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t finite = 0;
    for (const auto& t : trellis.tracks) {
        if (t.terminated == Termination::ReachedTarget) ++reached;
        if (t.terminated == Termination::MaxSteps) ++capped;
        if (t.terminated == Termination::DeadEnd) ++dead;
        double y = evaluate_outcome(t, spec, trellis.target);
        if (!std::isfinite(y)) continue;
        sum += y;
        sum_sq += y * y;
        ++finite;
    }
    out += "tracks " + std::to_string(tracks) + " seed " + std::to_string(seed) + " max-steps " +
           std::to_string(max_steps) + "\n";
    out += "reached " + std::to_string(reached) + ", max-steps " + std::to_string(capped) + ", dead-end " +
           std::to_string(dead) + "\n";
    out += "outcome " + outcome;
    if (finite == 0) {
        out += " mean - (no finite values)\n";
    } else {
        const double mean = sum / static_cast<double>(finite);
        const double var = finite > 1 ? (sum_sq - sum * mean) / static_cast<double>(finite - 1) : 0.0;
        out += " mean " + fixed(mean, 6) + " stderr " +
               fixed(std::sqrt(std::max(var, 0.0) / static_cast<double>(finite)), 6) + " over " +
               std::to_string(finite) + " tracks\n";
    }
    if (!export_path.empty()) write_file(export_path, export_trellis(trellis), result);
    return kExitOk;
}

int cmd_ingest(const std::string& path, const std::string& target, const std::string& out_path, std::string& out,
               CommandResult& result) {
    CountSummary summary;
    const auto counts = parse_counts(read_file(path), &summary);
    const auto est = estimate_graph(counts, target);
    for (const auto& [v, c] : summary.initial) out += "# initial " + v + " " + std::to_string(c) + "\n";
    for (const auto& [v, c] : summary.final) out += "# final " + v + " " + std::to_string(c) + "\n";
    for (const auto& v : est.empty_rows) out += "# empty row: " + v + " (dead end)\n";
    const auto text = serialize_text(est.graph);
    out += text;
    if (!out_path.empty()) write_file(out_path, text, result);
    return kExitOk;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    CommandResult result;
    CLI::App app{"Transition graph analysis for target class classification", "tcc"};
    app.require_subcommand(1);

    std::string graph_path, second_path, dot_path, out_path, start, outcome = "reached", export_path, target;
    double min_coverage = 1.0;
    std::size_t tracks = 0, max_steps = kDefaultMaxSteps;
    std::uint64_t seed = 0;

    auto* validate_cmd = app.add_subcommand("validate", "coverage, reachability sets and defects");
    validate_cmd->add_option("graph", graph_path)->required();
    validate_cmd->add_option("--min-coverage", min_coverage)->check(CLI::Range(0.0, 1.0));

    auto* decompose_cmd = app.add_subcommand("decompose", "structural decomposition");
    decompose_cmd->add_option("graph", graph_path)->required();
    decompose_cmd->add_option("--dot", dot_path, "write annotated Graphviz output");

    auto* compare_cmd = app.add_subcommand("compare", "which of two graphs classifies better");
    compare_cmd->add_option("first", graph_path)->required();
    compare_cmd->add_option("second", second_path)->required();

    auto* optimize_cmd = app.add_subcommand("optimize", "shortest-path composite policy");
    optimize_cmd->add_option("graph", graph_path)->required();
    optimize_cmd->add_option("--out", out_path, "write the policy file");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo tracks through a stochastic graph");
    simulate_cmd->add_option("graph", graph_path)->required();
    simulate_cmd->add_option("--start", start)->required();
    simulate_cmd->add_option("--tracks", tracks)->required();
    simulate_cmd->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--outcome", outcome, "reached | steps | fraction:<state>");
    simulate_cmd->add_option("--export", export_path, "write the trellis, one track per line");

    auto* ingest_cmd = app.add_subcommand("ingest", "estimate a stochastic graph from transition counts");
    ingest_cmd->add_option("counts", graph_path)->required();
    ingest_cmd->add_option("--target", target)->required();
    ingest_cmd->add_option("--out", out_path, "write the estimated graph");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        std::string& out = result.report_text;
        if (validate_cmd->parsed()) {
            result.exit_code = cmd_validate(graph_path, min_coverage, out);
        } else if (decompose_cmd->parsed()) {
            result.exit_code = cmd_decompose(graph_path, dot_path, out, result);
        } else if (compare_cmd->parsed()) {
            result.exit_code = cmd_compare(graph_path, second_path, out);
        } else if (optimize_cmd->parsed()) {
            result.exit_code = cmd_optimize(graph_path, out_path, out, result);
        } else if (simulate_cmd->parsed()) {
            result.exit_code =
                cmd_simulate(graph_path, start, tracks, max_steps, seed, outcome, export_path, out, result);
        } else if (ingest_cmd->parsed()) {
            result.exit_code = cmd_ingest(graph_path, target, out_path, out, result);
        }
    } catch (const CLI::CallForHelp&) {
        result.exit_code = kExitOk;
        result.report_text = app.help();
    } catch (const CLI::CallForAllHelp&) {
        result.exit_code = kExitOk;
        result.report_text = app.help("", CLI::AppFormatMode::All);
    } catch (const CLI::Error& e) {
        result.exit_code = kExitError;
        result.report_text = "usage error: " + std::string(e.what()) + "\n";
    } catch (const Error& e) {
        result.exit_code = kExitError;
        result.report_text = "error: " + std::string(e.what()) + "\n";
    }
    return result;
}

}  // namespace tcc::cli
