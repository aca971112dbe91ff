#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "tcc/decompose.hpp"
#include "tcc/error.hpp"

using namespace tcc;
using namespace tcc::testing;

namespace {

std::vector<std::pair<Vertex, Vertex>> pairs(const std::vector<Arc>& arcs) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& a : arcs) out.emplace_back(a.source, a.destination);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("strongly connected components match the closure oracle") {
    auto g3 = fixture("G3");
    auto scc3 = strongly_connected_components(g3);
    CHECK(scc3.components == closure_sccs(g3, transitive_closure(g3)));
    CHECK(scc3.components ==
          std::vector<std::vector<Vertex>>{vids(g3, {"c1", "c2", "c3"}), vids(g3, {"d"}), vids(g3, {"v0"})});

    auto g1 = fixture("G1");
    CHECK(strongly_connected_components(g1).components == std::vector<std::vector<Vertex>>{{0}});

    auto g5 = fixture("G5");
    CHECK(strongly_connected_components(g5).components ==
          std::vector<std::vector<Vertex>>{vids(g5, {"a", "b"}), vids(g5, {"v0"})});

    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        auto g = random_multi(rng, uniform(rng, 1, 25), 3, 0);
        CHECK(strongly_connected_components(g).components == closure_sccs(g, transitive_closure(g)));
    }
}

TEST_CASE("condensation") {
    auto g3 = fixture("G3");
    auto scc = strongly_connected_components(g3);
    auto c = condensation(g3, scc);
    const auto cyc = scc.index[vid(g3, "c1")], d = scc.index[vid(g3, "d")];
    CHECK(c.successors[d] == std::vector<std::size_t>{cyc});
    CHECK(respects_order(c.successors, c.order));

    auto g1 = fixture("G1");
    auto c1 = condensation(g1, strongly_connected_components(g1));
    CHECK(c1.order == std::vector<std::size_t>{0});

    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        auto g = random_multi(rng, uniform(rng, 1, 50), 4, 0);
        auto cond = condensation(g, strongly_connected_components(g));
        CHECK_FALSE(has_cycle(cond.successors));
        CHECK(respects_order(cond.successors, cond.order));
        std::vector<bool> has_in(cond.size(), false);
        for (const auto& s : cond.successors)
            for (auto w : s) has_in[w] = true;
        CHECK(std::find(has_in.begin(), has_in.end(), false) != has_in.end());
        CHECK(std::any_of(cond.successors.begin(), cond.successors.end(), [](const auto& s) { return s.empty(); }));
    }
}

TEST_CASE("target_core") {
    auto g5 = fixture("G5");
    auto core = target_core(g5);
    CHECK(core.members == vids(g5, {"a", "b", "v0"}));
    CHECK(core.layer[vid(g5, "a")] == 1u);
    CHECK(core.layer[vid(g5, "b")] == 1u);
    CHECK(pairs(core.real_arcs) == std::vector<std::pair<Vertex, Vertex>>{{vid(g5, "a"), vid(g5, "v0")},
                                                                          {vid(g5, "b"), vid(g5, "v0")}});
    REQUIRE(core.virtual_arcs.size() == 2);
    for (const auto& va : core.virtual_arcs) CHECK(va.layer_delta == 0);

    auto g3 = fixture("G3");
    auto core3 = target_core(g3);
    CHECK(core3.members == vids(g3, {"v0"}));
    CHECK(core3.real_arcs.empty());
    CHECK(core3.virtual_arcs.empty());

    auto g6 = fixture("G6");
    auto core6 = target_core(g6);
    CHECK(core6.members == vids(g6, {"a", "v0"}));
    REQUIRE(core6.virtual_arcs.size() == 1);
    CHECK(core6.virtual_arcs[0].arc.destination == vid(g6, "x"));
    CHECK_FALSE(core6.virtual_arcs[0].layer_delta.has_value());

    // Tie-break: among shortest-path parents the smallest destination wins.
    auto tie = build_graph({"m", "p", "q"}, "v0",
                           {{"m", "q", {}, {}}, {"m", "p", {}, {}}, {"p", "v0", {}, {}}, {"q", "v0", {}, {}}});
    auto tcore = target_core(tie);
    CHECK(std::any_of(tcore.real_arcs.begin(), tcore.real_arcs.end(), [&](const Arc& a) {
        return a.source == vid(tie, "m") && a.destination == vid(tie, "p");
    }));
}

TEST_CASE("target_core layers agree with relaxation distances") {
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        auto g = random_multi(rng, uniform(rng, 1, 30), 3, 0);
        auto core = target_core(g);
        auto dist = relaxed_distances(g);
        for (Vertex v = 0; v < g.size(); ++v) {
            CHECK(core.layer[v] == dist[v]);
            CHECK(core.is_member[v] == dist[v].has_value());
        }
        // Real arcs descend exactly one layer and form an in-branching.
        std::vector<int> out_real(g.size(), 0);
        for (const auto& a : core.real_arcs) {
            CHECK(*core.layer[a.source] == *core.layer[a.destination] + 1);
            ++out_real[a.source];
        }
        for (Vertex v : core.members) CHECK(out_real[v] == (v == g.target() ? 0 : 1));
        CHECK(core.real_arcs.size() + core.virtual_arcs.size() ==
              std::count_if(g.arcs().begin(), g.arcs().end(), [&](const Arc& a) { return core.is_member[a.source]; }));
        // No arc enters the target from outside the core.
        for (const auto& a : g.arcs())
            if (a.destination == g.target()) CHECK(core.is_member[a.source]);
    }
}

TEST_CASE("loop_subgraph") {
    auto g4 = fixture("G4");
    auto loops = loop_subgraph(g4, target_core(g4));
    CHECK(loops.terminal_loops == vids(g4, {"u"}));
    CHECK(loops.isolated_loops.empty());
    CHECK(loops.trees.at(vid(g4, "u")) == vids(g4, {"u", "w"}));

    auto lone = parse_text("target v0\nz z\n");
    auto lone_loops = loop_subgraph(lone, target_core(lone));
    CHECK(lone_loops.isolated_loops == vids(lone, {"z"}));
    CHECK(lone_loops.trees.empty());

    auto g3 = fixture("G3");
    auto l3 = loop_subgraph(g3, target_core(g3));
    CHECK(l3.isolated_loops.empty());
    CHECK(l3.terminal_loops.empty());
    CHECK(l3.members().empty());

    // A loop vertex with a regular arc behaves like any other vertex.
    auto mixed = parse_text("target v0\nr r\nr s\ns r\n");
    auto lm = loop_subgraph(mixed, target_core(mixed));
    CHECK(lm.members().empty());

    // Every path from m drains into some terminal loop, so m joins G_l.
    auto split = parse_text("target v0\nu1 u1\nu2 u2\nm u1\nm u2\n");
    auto ls = loop_subgraph(split, target_core(split));
    CHECK(ls.members() == vids(split, {"m", "u1", "u2"}));
    CHECK(ls.trees.at(vid(split, "u1")) == vids(split, {"m", "u1"}));
}

TEST_CASE("residual_decomposition") {
    auto g6 = fixture("G6");
    auto core6 = target_core(g6);
    auto r6 = residual_decomposition(g6, core6, loop_subgraph(g6, core6));
    CHECK(r6.vertices == vids(g6, {"x", "y"}));
    CHECK(r6.clusters == std::vector<std::vector<Vertex>>{vids(g6, {"x", "y"})});
    CHECK(r6.singletons.empty());

    auto g2 = fixture("G2");
    auto core2 = target_core(g2);
    CHECK(residual_decomposition(g2, core2, loop_subgraph(g2, core2)).vertices.empty());

    auto g3 = fixture("G3");
    auto core3 = target_core(g3);
    auto r3 = residual_decomposition(g3, core3, loop_subgraph(g3, core3));
    CHECK(r3.vertices == vids(g3, {"c1", "c2", "c3", "d"}));
    CHECK(r3.clusters == std::vector<std::vector<Vertex>>{vids(g3, {"c1", "c2", "c3"})});
    CHECK(r3.singletons == vids(g3, {"d"}));
    REQUIRE(r3.order.size() == 2);
    CHECK(r3.order[0] == ResidualPart{ResidualPart::Kind::Singleton, 0});
    CHECK(r3.order[1] == ResidualPart{ResidualPart::Kind::Cluster, 0});
    CHECK(pairs(r3.branch_arcs) == std::vector<std::pair<Vertex, Vertex>>{{vid(g3, "d"), vid(g3, "c1")}});

    // Dead ends stay as singletons.
    auto dead = parse_text("target v0\na d\n");
    auto cd = target_core(dead);
    auto rd = residual_decomposition(dead, cd, loop_subgraph(dead, cd));
    CHECK(rd.singletons == vids(dead, {"a", "d"}));
    CHECK(rd.clusters.empty());
}

TEST_CASE("partition law and residual totality on random multi graphs") {
    Rng rng(14);
    for (int i = 0; i < 300; ++i) {
        auto g = random_multi(rng, uniform(rng, 2, 40), 4);
        auto core = target_core(g);
        auto loops = loop_subgraph(g, core);
        auto res = residual_decomposition(g, core, loops);
        std::vector<int> hits(g.size(), 0);
        for (Vertex v : core.members) ++hits[v];
        for (Vertex v : loops.members()) ++hits[v];
        for (Vertex v : res.vertices) ++hits[v];
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

        auto r = transitive_closure(g);
        for (Vertex v : res.vertices) {
            bool reaches_cluster = false;
            for (const auto& c : res.clusters)
                for (Vertex w : c) reaches_cluster = reaches_cluster || r[v][w];
            CHECK(reaches_cluster);
        }
        // Every nondegenerate cycle inside the residual lies in one cluster.
        std::vector<int> cluster_of(g.size(), -1);
        for (std::size_t c = 0; c < res.clusters.size(); ++c)
            for (Vertex v : res.clusters[c]) cluster_of[v] = static_cast<int>(c);
        for (Vertex u : res.vertices)
            for (Vertex w : res.vertices)
                if (u != w && r[u][w] && r[w][u]) {
                    CHECK(cluster_of[u] >= 0);
                    CHECK(cluster_of[u] == cluster_of[w]);
                }
    }
}

TEST_CASE("classify_components") {
    auto g2 = fixture("G2");
    auto c2 = classify_components(g2);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].kind == ComponentKind::TargetTree);
    CHECK(c2[0].vertices == vids(g2, {"a", "b", "v0"}));

    auto g3 = fixture("G3");
    auto c3 = classify_components(g3);
    REQUIRE(c3.size() == 2);
    CHECK(c3[0].kind == ComponentKind::Cactus);
    CHECK(c3[0].vertices == vids(g3, {"c1", "c2", "c3", "d"}));
    CHECK(c3[0].cycle == std::vector<Vertex>{vid(g3, "c1"), vid(g3, "c2"), vid(g3, "c3")});
    CHECK(c3[1].kind == ComponentKind::TargetTree);
    CHECK(c3[1].vertices == vids(g3, {"v0"}));

    auto g4 = fixture("G4");
    auto c4 = classify_components(g4);
    REQUIRE(c4.size() == 2);
    CHECK(c4[0].kind == ComponentKind::LoopTree);
    CHECK(c4[0].vertices == vids(g4, {"u", "w"}));
    CHECK(c4[0].root == vid(g4, "u"));
    CHECK(c4[1].kind == ComponentKind::TargetTree);

    auto lone = parse_text("target v0\nz z\n");
    CHECK(classify_components(lone)[1].kind == ComponentKind::IsolatedLoop);

    CHECK_THROWS_AS(classify_components(fixture("G5")), Error);
    CHECK_THROWS_AS(classify_components(fixture("G7")), Error);
}

TEST_CASE("classify_components agrees with path following; cactus arc count") {
    Rng rng(15);
    for (int i = 0; i < 1000; ++i) {
        auto g = random_deterministic(rng, uniform(rng, 1, 30));
        auto classes = classify_components(g);
        std::vector<int> covered(g.size(), 0);
        std::size_t trees = 0;
        for (const auto& cls : classes) {
            if (cls.kind == ComponentKind::TargetTree) ++trees;
            std::size_t arcs = 0;
            for (Vertex v : cls.vertices) {
                ++covered[v];
                arcs += g.out_degree(v);
                auto f = follow_path(g, v);
                switch (cls.kind) {
                case ComponentKind::TargetTree: CHECK(f.end == PathEnd::Target); break;
                case ComponentKind::IsolatedLoop:
                case ComponentKind::LoopTree:
                    CHECK(f.end == PathEnd::Loop);
                    CHECK(f.terminal == *cls.root);
                    break;
                case ComponentKind::Cactus: {
                    CHECK(f.end == PathEnd::Cycle);
                    auto sorted = cls.cycle;
                    std::sort(sorted.begin(), sorted.end());
                    CHECK(f.cycle == sorted);
                    break;
                }
                case ComponentKind::General: FAIL("General in a deterministic graph");
                }
            }
            if (cls.kind == ComponentKind::Cactus) CHECK(arcs == cls.vertices.size());
        }
        CHECK(trees == 1);
        CHECK(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }));
    }
}

TEST_CASE("in_branching_check") {
    auto g2 = fixture("G2");
    auto b2 = in_branching_check(g2);
    CHECK(b2.exists);
    CHECK(pairs(b2.branching) == std::vector<std::pair<Vertex, Vertex>>{{vid(g2, "a"), vid(g2, "b")},
                                                                        {vid(g2, "b"), vid(g2, "v0")}});
    CHECK(in_branching_check(fixture("G5")).exists);

    auto g6 = fixture("G6");
    auto b6 = in_branching_check(g6);
    CHECK_FALSE(b6.exists);
    CHECK(b6.offending_component == vids(g6, {"x", "y"}));

    Rng rng(16);
    for (int i = 0; i < 300; ++i) {
        auto g = random_multi(rng, uniform(rng, 1, 20), 3, 0);
        CHECK(in_branching_check(g).exists == single_terminal_component(g, transitive_closure(g)));
    }
}

TEST_CASE("decompose assembles General components for multi graphs") {
    auto g6 = fixture("G6");
    auto d = decompose(g6);
    REQUIRE(d.components.size() == 2);
    CHECK(d.components[0].kind == ComponentKind::TargetTree);
    CHECK(d.components[1].kind == ComponentKind::General);
    CHECK(d.components[1].vertices == vids(g6, {"x", "y"}));
}
