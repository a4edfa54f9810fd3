#include <doctest.h>

#include <random>

#include "seqig/diagram.hpp"
#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/fixtures.hpp"

using namespace seqig;

namespace {

// All DAGs on n labelled nodes, as edge masks over the n*(n-1) ordered pairs.
// Caller receives the parent masks per node.
template <typename F>
void for_each_dag(int n, F&& visit) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) pairs.push_back({a, b});
    const std::size_t m = pairs.size();
    for (std::size_t code = 0; code < (std::size_t(1) << m); ++code) {
        std::vector<uint32_t> parents(n, 0), children(n, 0);
        for (std::size_t e = 0; e < m; ++e)
            if ((code >> e) & 1) {
                parents[pairs[e].second] |= uint32_t(1) << pairs[e].first;
                children[pairs[e].first] |= uint32_t(1) << pairs[e].second;
            }
        // acyclicity: strip sources repeatedly
        std::vector<int> indeg(n);
        for (int v = 0; v < n; ++v) indeg[v] = __builtin_popcount(parents[v]);
        uint32_t removed = 0;
        bool progress = true;
        int count = 0;
        while (progress) {
            progress = false;
            for (int v = 0; v < n; ++v) {
                if ((removed >> v) & 1) continue;
                if (indeg[v] == 0) {
                    removed |= uint32_t(1) << v;
                    ++count;
                    progress = true;
                    for (int c = 0; c < n; ++c)
                        if ((children[v] >> c) & 1) --indeg[c];
                }
            }
        }
        if (count != n) continue;
        std::vector<std::pair<std::string, std::string>> edges;
        for (std::size_t e = 0; e < m; ++e)
            if ((code >> e) & 1)
                edges.push_back({"n" + std::to_string(pairs[e].first),
                                 "n" + std::to_string(pairs[e].second)});
        std::vector<InfluenceDiagram::Node> nodes;
        for (int v = 0; v < n; ++v) nodes.push_back({"n" + std::to_string(v), false});
        visit(InfluenceDiagram::build(nodes, edges));
    }
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("the counterexample diagram: active trail through the collider") {
    InfluenceDiagram dag = parse_diagram(fixture("fig5").source);
    SeparationResult r = d_separated(dag, {"Y"}, {"sigma"}, {"A"});
    CHECK_FALSE(r.separated);
    REQUIRE(r.active_path.size() >= 3);
    CHECK(r.active_path.front() == "Y");
    CHECK(r.active_path.back() == "sigma");

    // Unconditionally, sigma reaches Y through A.
    CHECK_FALSE(d_separated(dag, {"Y"}, {"sigma"}, {}).separated);
    // U is marginally independent of the regime.
    CHECK(d_separated(dag, {"U"}, {"sigma"}, {}).separated);
}

TEST_CASE("chains block through observed middles") {
    InfluenceDiagram dag = parse_diagram("A -> B\nB -> C\n");
    CHECK(d_separated(dag, {"A"}, {"C"}, {"B"}).separated);
    CHECK_FALSE(d_separated(dag, {"A"}, {"C"}, {}).separated);
}

TEST_CASE("the stability diagram keeps sigma away from the first observable") {
    InfluenceDiagram dag = parse_diagram(fixture("fig1").source);
    CHECK(d_separated(dag, {"L1"}, {"sigma"}, {}).separated);
    CHECK(d_separated(dag, {"L2"}, {"sigma"}, {"L1", "A1"}).separated);
    CHECK(d_separated(dag, {"Y"}, {"sigma"}, {"L1", "A1", "L2", "A2"}).separated);
}

TEST_CASE("queries validate their node sets") {
    InfluenceDiagram dag = parse_diagram(fixture("fig5").source);
    CHECK_THROWS_AS(d_separated(dag, {"nope"}, {"A"}, {}), InputError);
    CHECK_THROWS_AS(d_separated(dag, {"A"}, {"A"}, {}), InputError);
    CHECK_THROWS_AS(moral_separated(dag, {"A"}, {"Y"}, {"A"}), InputError);
}

TEST_CASE("moralization agrees with d-separation on the named examples") {
    InfluenceDiagram fig5 = parse_diagram(fixture("fig5").source);
    CHECK(moral_separated(fig5, {"Y"}, {"sigma"}, {"A"}) == false);
    CHECK(moral_separated(fig5, {"U"}, {"sigma"}, {}) == true);
    InfluenceDiagram chain = parse_diagram("A -> B\nB -> C\n");
    CHECK(moral_separated(chain, {"A"}, {"C"}, {"B"}) == true);
}

TEST_CASE("empty and complete graphs behave as expected") {
    InfluenceDiagram empty = parse_diagram("node A\nnode B\n");
    CHECK(d_separated(empty, {"A"}, {"B"}, {}).separated);
    CHECK(moral_separated(empty, {"A"}, {"B"}, {}));

    InfluenceDiagram complete = parse_diagram("A -> B\nA -> C\nB -> C\n");
    CHECK_FALSE(d_separated(complete, {"A"}, {"B"}, {}).separated);
    CHECK_FALSE(d_separated(complete, {"A"}, {"C"}, {"B"}).separated);
    CHECK_FALSE(moral_separated(complete, {"B"}, {"C"}, {"A"}));
}

TEST_CASE("d-separation and moralization agree on every DAG up to 4 nodes") {
    for (int n = 1; n <= 4; ++n) {
        for_each_dag(n, [&](const InfluenceDiagram& dag) {
            const std::size_t grid = [&] {
                std::size_t g = 1;
                for (int i = 0; i < n; ++i) g *= 4;
                return g;
            }();
            for (std::size_t code = 0; code < grid; ++code) {
                std::size_t c = code;
                uint32_t x = 0, y = 0, z = 0;
                for (int v = 0; v < n; ++v, c /= 4) {
                    switch (c % 4) {
                        case 1: x |= uint32_t(1) << v; break;
                        case 2: y |= uint32_t(1) << v; break;
                        case 3: z |= uint32_t(1) << v; break;
                    }
                }
                if (!x || !y) continue;
                REQUIRE(d_separated_masks(dag, x, y, z) == moral_separated_masks(dag, x, y, z));
            }
        });
    }
}

TEST_CASE("implied_ci: counterexample diagram membership") {
    InfluenceDiagram dag = parse_diagram(fixture("fig5").source);
    auto implied = implied_ci(dag);
    auto contains = [&](const char* text) {
        CIStatement s = parse_ci(text);
        for (const auto& t : implied)
            if (t == s) return true;
        return false;
    };
    CHECK(contains("U _||_ sigma"));
    CHECK_FALSE(contains("Y _||_ sigma | A"));
    CHECK_FALSE(contains("Y _||_ U | A"));
}

TEST_CASE("implied_ci: edgeless pair and the node cap") {
    InfluenceDiagram pair = parse_diagram("node A\nnode B\n");
    auto implied = implied_ci(pair);
    bool found = false;
    for (const auto& s : implied) found = found || s == parse_ci("A _||_ B");
    CHECK(found);

    std::string big;
    for (int i = 0; i + 1 < 12; ++i)
        big += "m" + std::to_string(i) + " -> m" + std::to_string(i + 1) + "\n";
    InfluenceDiagram chain = parse_diagram(big);
    CHECK_THROWS_WITH_AS(implied_ci(chain), doctest::Contains("cap"), InputError);
}

TEST_CASE("monotonicity: deleting an edge never shrinks the implied set") {
    std::mt19937_64 rng(1401);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 12; ++trial) {
        // random DAG on 5 nodes in topological order
        std::vector<std::pair<std::string, std::string>> edges;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                if (coin(rng))
                    edges.push_back({"n" + std::to_string(a), "n" + std::to_string(b)});
        if (edges.empty()) continue;
        std::vector<InfluenceDiagram::Node> nodes;
        for (int v = 0; v < 5; ++v) nodes.push_back({"n" + std::to_string(v), false});
        InfluenceDiagram full = InfluenceDiagram::build(nodes, edges);

        auto less_edges = edges;
        less_edges.erase(less_edges.begin() +
                         std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng));
        InfluenceDiagram pruned = InfluenceDiagram::build(nodes, less_edges);

        auto full_set = implied_ci(full);
        auto pruned_set = implied_ci(pruned);
        for (const auto& s : full_set) {
            bool found = false;
            for (const auto& t : pruned_set) found = found || t == s;
            CHECK(found);
        }
    }
}

TEST_CASE("represents: extended stability statements against the figures") {
    InfluenceDiagram fig2 = parse_diagram(fixture("fig2").source);
    std::vector<CIStatement> eq12{
        parse_ci("L1,U1 _||_ sigma"),
        parse_ci("L2,U2 _||_ sigma | L1,U1,A1"),
        parse_ci("Y _||_ sigma | L1,U1,A1,L2,U2,A2"),
    };
    RepresentsReport rep = represents(fig2, eq12);
    CHECK(rep.all_implied);
    for (const auto& row : rep.rows) CHECK(row.implied);

    InfluenceDiagram fig4 = parse_diagram(fixture("fig4").source);
    CHECK(implies(fig4, parse_ci("L2 _||_ sigma | L1,A1")));

    RepresentsReport none = represents(fig2, {});
    CHECK(none.all_implied);

    CHECK_THROWS_AS(implies(fig2, parse_ci("Q _||_ sigma")), InputError);
}

}  // TEST_SUITE
