// Acceptance suite: one PASS/FAIL line per criterion, with its tolerance and
// runtime bound. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "tcc/cli.hpp"
#include "tcc/decompose.hpp"
#include "tcc/policy.hpp"
#include "tcc/tracks.hpp"

using namespace tcc;
using namespace tcc::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

struct Criterion {
    const char* name;
    const char* summary;
    double bound_seconds;  // 0 = no runtime bound
    std::function<Outcome()> body;
};

// ---- AC1 ----------------------------------------------------------------

Outcome deterministic_structure() {
    Outcome out;
    Rng rng(1001);
    std::size_t vertices = 0;
    for (int i = 0; i < 1000 && out.ok; ++i) {
        auto g = random_deterministic(rng, uniform(rng, 5, 50));
        vertices += g.size();
        std::size_t trees = 0;
        std::vector<int> seen(g.size(), 0);
        for (const auto& cls : classify_components(g)) {
            if (cls.kind == ComponentKind::TargetTree) ++trees;
            if (cls.kind == ComponentKind::General) out.fail("General component in graph " + std::to_string(i));
            for (Vertex v : cls.vertices) {
                ++seen[v];
                auto f = follow_path(g, v);
                bool agree = false;
                switch (cls.kind) {
                case ComponentKind::TargetTree: agree = f.end == PathEnd::Target; break;
                case ComponentKind::IsolatedLoop:
                case ComponentKind::LoopTree: agree = f.end == PathEnd::Loop && f.terminal == *cls.root; break;
                case ComponentKind::Cactus: {
                    auto sorted = cls.cycle;
                    std::sort(sorted.begin(), sorted.end());
                    agree = f.end == PathEnd::Cycle && f.cycle == sorted;
                    break;
                }
                case ComponentKind::General: break;
                }
                if (!agree) out.fail("graph " + std::to_string(i) + " vertex " + g.id(v) + " disagrees with oracle");
            }
        }
        if (trees != 1) out.fail("graph " + std::to_string(i) + " has " + std::to_string(trees) + " target trees");
        if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; })) {
            out.fail("graph " + std::to_string(i) + " components do not partition V");
        }
    }
    if (out.ok) out.detail = "1000 graphs, " + std::to_string(vertices) + " vertices, 100% agreement";
    return out;
}

// ---- AC2 ----------------------------------------------------------------

Outcome multi_partition() {
    Outcome out;
    Rng rng(1002);
    for (int i = 0; i < 1000 && out.ok; ++i) {
        auto g = random_multi(rng, uniform(rng, 5, 50), 4);
        const auto tag = "graph " + std::to_string(i);
        auto core = target_core(g);
        auto loops = loop_subgraph(g, core);
        auto res = residual_decomposition(g, core, loops);

        std::vector<int> hits(g.size(), 0);
        for (Vertex v : core.members) ++hits[v];
        for (Vertex v : loops.members()) ++hits[v];
        for (Vertex v : res.vertices) ++hits[v];
        if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) out.fail(tag + ": not a partition");

        // Part index of every residual vertex, then the part graph.
        std::vector<std::size_t> part(g.size(), SIZE_MAX);
        for (std::size_t k = 0; k < res.order.size(); ++k) {
            const auto& p = res.order[k];
            if (p.kind == ResidualPart::Kind::Cluster) {
                for (Vertex v : res.clusters[p.index]) part[v] = k;
            } else {
                part[res.singletons[p.index]] = k;
            }
        }
        std::vector<bool> in_res(g.size(), false);
        for (Vertex v : res.vertices) {
            in_res[v] = true;
            if (part[v] == SIZE_MAX) out.fail(tag + ": residual vertex " + g.id(v) + " missing from order");
        }
        if (!out.ok) break;
        std::vector<std::vector<std::size_t>> succ(res.order.size());
        for (const auto& a : g.arcs()) {
            if (!in_res[a.source] || !in_res[a.destination]) continue;
            if (part[a.source] != part[a.destination]) succ[part[a.source]].push_back(part[a.destination]);
        }
        if (has_cycle(succ)) out.fail(tag + ": residual condensation has a cycle");
        for (std::size_t k = 0; k < succ.size(); ++k)
            for (auto w : succ[k])
                if (w <= k) out.fail(tag + ": residual order violates an arc");

        // Plain DFS inside the residual from each vertex with a residual out-arc.
        std::vector<bool> in_cluster(g.size(), false);
        for (const auto& c : res.clusters)
            for (Vertex v : c) in_cluster[v] = true;
        for (Vertex v : res.vertices) {
            bool has_out = false;
            for (const auto& a : g.out_arcs(v)) has_out = has_out || in_res[a.destination];
            if (!has_out) continue;
            std::vector<bool> seen(g.size(), false);
            std::vector<Vertex> stack{v};
            bool found = false;
            while (!stack.empty() && !found) {
                Vertex u = stack.back();
                stack.pop_back();
                if (seen[u]) continue;
                seen[u] = true;
                if (in_cluster[u]) found = true;
                for (const auto& a : g.out_arcs(u))
                    if (in_res[a.destination]) stack.push_back(a.destination);
            }
            if (!found) out.fail(tag + ": residual vertex " + g.id(v) + " reaches no cluster");
        }
    }
    if (out.ok) out.detail = "1000 graphs: partition, acyclic residual order, every residual path ends in a cluster";
    return out;
}

// ---- AC3 ----------------------------------------------------------------

Outcome condensation_properties() {
    Outcome out;
    Rng rng(1003);
    std::size_t branching = 0;
    for (int i = 0; i < 1000 && out.ok; ++i) {
        // Alternate deterministic and multi graphs, dead ends allowed in the latter.
        auto g = i % 2 ? random_multi(rng, uniform(rng, 1, 30), 3, 0) : random_deterministic(rng, uniform(rng, 1, 30));
        const auto tag = "graph " + std::to_string(i);
        auto cond = condensation(g, strongly_connected_components(g));
        if (has_cycle(cond.successors)) out.fail(tag + ": condensation has a cycle");
        if (!respects_order(cond.successors, cond.order)) out.fail(tag + ": order violates an arc");
        std::vector<bool> has_in(cond.size(), false);
        for (const auto& s : cond.successors)
            for (auto w : s) has_in[w] = true;
        if (std::find(has_in.begin(), has_in.end(), false) == has_in.end()) out.fail(tag + ": no in-degree-zero node");
        if (std::none_of(cond.successors.begin(), cond.successors.end(), [](const auto& s) { return s.empty(); })) {
            out.fail(tag + ": no out-degree-zero node");
        }
        const bool exists = in_branching_check(g).exists;
        branching += exists;
        if (exists != single_terminal_component(g, transitive_closure(g))) {
            out.fail(tag + ": in_branching_check disagrees with the terminal-component criterion");
        }
    }
    if (out.ok) {
        out.detail = "1000 graphs, " + std::to_string(branching) + " with an in-branching, all agree with the oracle";
    }
    return out;
}

// ---- AC4 ----------------------------------------------------------------

Outcome optimization_oracle() {
    Outcome out;
    Rng rng(1004);
    std::size_t enumerated = 0;
    for (int i = 0; i < 500 && out.ok; ++i) {
        auto g = random_multi(rng, uniform(rng, 2, 8), 3);
        auto best = policy_value(g, optimize_policy(g).choice);
        for_each_policy(g, [&](const std::vector<std::optional<Arc>>& choice) {
            ++enumerated;
            auto pv = policy_value(g, choice);
            const bool better = pv.covered > best.covered ||
                                (pv.covered == best.covered && pv.mean_steps < best.mean_steps - 1e-12);
            if (better) out.fail("graph " + std::to_string(i) + ": enumerated policy beats optimize_policy");
        });
    }
    if (out.ok) out.detail = "500 graphs, " + std::to_string(enumerated) + " policies enumerated, none strictly better";
    return out;
}

// ---- AC5 ----------------------------------------------------------------

Outcome absorbing_exactness() {
    Outcome out;
    auto g7 = fixture("G7");
    const double t = hitting_analysis(g7).expected_steps[vid(g7, "u")];
    if (std::abs(t - 2.0) > 1e-9) out.fail("G7 expected steps " + std::to_string(t));
    Rng rng(1005);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto g = random_stochastic(rng, uniform(rng, 2, 60), 4, i % 2 == 0);
        worst = std::max(worst, hitting_analysis(g).steps_residual);
    }
    if (worst > 1e-9) out.fail("residual " + std::to_string(worst));
    char buf[128];
    std::snprintf(buf, sizeof buf, "G7 t(u) = %.15g, worst |t - (1 + Qt)| = %.3g over 200 graphs", t, worst);
    if (out.ok) out.detail = buf;
    return out;
}

// ---- AC6 ----------------------------------------------------------------

StartDistribution uniform_start(const TransitionGraph& g) {
    StartDistribution s;
    for (Vertex v = 0; v < g.size(); ++v)
        if (v != g.target()) s.weights.emplace_back(g.id(v), 1.0);
    return s;
}

Outcome simulation_agreement() {
    Outcome out;
    Rng rng(1006);
    double worst_z = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto g = random_stochastic(rng, uniform(rng, 3, 12), 3, true);
        auto h = hitting_analysis(g);
        double expected = 0.0;
        for (Vertex v = 0; v < g.size(); ++v)
            if (v != g.target()) expected += h.expected_steps[v];
        expected /= static_cast<double>(g.size() - 1);

        auto trellis = simulate_trellis(g, uniform_start(g), 100000, 1000000, 6000 + i);
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& t : trellis.tracks) {
            const double y = evaluate_outcome(t, OutcomeSpec::steps(), g.target());
            if (!std::isfinite(y)) {
                out.fail("graph " + std::to_string(i) + ": a track did not reach the target");
                break;
            }
            sum += y;
            sum_sq += y * y;
        }
        const double n = static_cast<double>(trellis.tracks.size());
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq - sum * mean) / (n - 1) / n);
        const double z = std::abs(mean - expected) / se;
        worst_z = std::max(worst_z, z);
        if (z > 3.0) out.fail("graph " + std::to_string(i) + ": |mean - t| = " + std::to_string(z) + " standard errors");
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "20 graphs x 100000 tracks, worst deviation %.2f standard errors", worst_z);
    if (out.ok) out.detail = buf;
    return out;
}

// ---- AC7 ----------------------------------------------------------------

double row_error(const TransitionGraph& truth, const TransitionGraph& est) {
    double worst = 0.0;
    for (const auto& a : truth.arcs()) {
        auto s = est.find(truth.id(a.source)), d = est.find(truth.id(a.destination));
        const Arc* e = s && d ? est.find_arc(*s, *d) : nullptr;
        worst = std::max(worst, std::abs(*a.weight - (e ? *e->weight : 0.0)));
    }
    for (const auto& e : est.arcs()) {
        auto s = truth.find(est.id(e.source)), d = truth.find(est.id(e.destination));
        if (!s || !d || !truth.find_arc(*s, *d)) worst = std::max(worst, *e.weight);
    }
    return worst;
}

Outcome estimation_round_trip() {
    Outcome out;
    Rng rng(1007);
    std::vector<TransitionGraph> graphs{fixture("G7")};
    for (int i = 0; i < 10; ++i) graphs.push_back(random_stochastic(rng, uniform(rng, 4, 8), 3, true));
    double worst = 0.0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& g = graphs[i];
        auto trellis = simulate_trellis(g, uniform_start(g), 200000, kDefaultMaxSteps, 7000 + i);
        auto est = estimate_graph(aggregate_counts(trellis), g.id(g.target()));
        const double err = row_error(g, est.graph);
        worst = std::max(worst, err);
        if (err > 0.01) out.fail("graph " + std::to_string(i) + ": row entry off by " + std::to_string(err));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "G7 + 10 graphs at n = 200000, worst entry error %.4f", worst);
    if (out.ok) out.detail = buf;
    return out;
}

// ---- AC8 ----------------------------------------------------------------

Outcome format_round_trip() {
    Outcome out;
    const std::pair<const char*, int> exits[] = {{"G1", 0}, {"G2", 0}, {"G3", 1}, {"G4", 1},
                                                 {"G5", 0}, {"G6", 1}, {"G7", 0}, {"G8", 0}};
    for (auto [name, code] : exits) {
        auto g = fixture(name);
        if (!(parse_text(serialize_text(g)) == g)) out.fail(std::string(name) + " does not round trip");
        const int got = cli::run({"validate", fixture_path(std::string(name) + ".tg")}).exit_code;
        if (got != code) {
            out.fail(std::string("validate ") + name + " exited " + std::to_string(got) + ", want " +
                     std::to_string(code));
        }
    }
    Rng rng(1008);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = uniform(rng, 1, 30);
        auto g = i % 3 == 0 ? random_deterministic(rng, n)
                 : i % 3 == 1 ? random_multi(rng, n, 4, 0)
                              : random_stochastic(rng, n, 4, i % 2 == 0);
        if (!(parse_text(serialize_text(g)) == g)) out.fail("random graph " + std::to_string(i) + " does not round trip");
    }
    if (out.ok) out.detail = "8 fixtures + 500 random graphs round trip; validate exit codes 0,0,1,1,0,1,0,0";
    return out;
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"AC1", "deterministic component classes", 5.0, deterministic_structure},
        {"AC2", "multi graph partition", 10.0, multi_partition},
        {"AC3", "condensation and in-branching", 5.0, condensation_properties},
        {"AC4", "policy optimization vs enumeration", 60.0, optimization_oracle},
        {"AC5", "absorbing chain exactness (tol 1e-9)", 10.0, absorbing_exactness},
        {"AC6", "simulation vs analytics (3 s.e.)", 60.0, simulation_agreement},
        {"AC7", "estimation round trip (tol 0.01)", 30.0, estimation_round_trip},
        {"AC8", "format round trip and CLI exit codes", 0.0, format_round_trip},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing;
        char buf[64];
        if (c.bound_seconds > 0) {
            std::snprintf(buf, sizeof buf, "%.2f s < %.0f s", secs, c.bound_seconds);
            if (secs >= c.bound_seconds) o.fail("runtime bound exceeded; " + o.detail);
        } else {
            std::snprintf(buf, sizeof buf, "%.2f s", secs);
        }
        timing = buf;
        std::printf("%s %s  %s [%s] %s\n", c.name, o.ok ? "PASS" : "FAIL", c.summary, timing.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        failures += !o.ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
