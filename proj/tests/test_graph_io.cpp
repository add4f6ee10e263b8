#include <catch2/catch_amalgamated.hpp>

#include "sgmc/io.hpp"
#include "sgmc/oracle.hpp"
#include "testutil.hpp"

using namespace sgmc;
using sgtest::make_graph;

TEST_CASE("minimal file parses to one negative edge") {
    auto g = load_graph("p sgraph 2 1\ne 0 1 -\n");
    REQUIRE(g.n() == 2);
    REQUIRE(g.m() == 1);
    REQUIRE(g.has_edge(0, 1, Sign::negative));
}

TEST_CASE("all-negative K5 file") {
    std::string text = "p sgraph 5 10\n";
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            text += "e " + std::to_string(u) + " " + std::to_string(v) + " -\n";
    auto g = load_graph(text);
    REQUIRE(g.m() == 10);
    REQUIRE(graph_to_string(g) == graph_to_string(gen_negative_clique(5)));
}

TEST_CASE("parse errors carry line numbers") {
    try {
        load_graph("p sgraph 2 1\ne 0 0 +\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.line == 2);
        REQUIRE(std::string(e.what()).find("loop") != std::string::npos);
    }
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 2\ne 0 1 -\ne 0 1 -\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 1\ne 1 0 -\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 1\ne 0 1 *\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 2\ne 0 1 -\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("e 0 1 -\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 1\nq 0 1 -\n"), ParseError);
    REQUIRE_THROWS_AS(load_graph("p sgraph 2 1\ne 0 7 -\n"), ParseError);
}

TEST_CASE("comments and empty graph") {
    auto g = load_graph("c hello\np sgraph 0 0\nc bye\n");
    REQUIRE(g.n() == 0);
    REQUIRE(g.m() == 0);
}

TEST_CASE("opposite-sign parallel pair is representable and counts as two edges") {
    auto g = load_graph("p sgraph 2 2\ne 0 1 -\ne 0 1 +\n");
    REQUIRE(g.m() == 2);
    REQUIRE(g.has_parallel_pair());
    REQUIRE(g.degree(0) == 2);
    REQUIRE(g.neighbors(0) == std::vector<int>{1});
    // serializer orders '-' before '+'
    REQUIRE(graph_to_string(g) == "p sgraph 2 2\ne 0 1 -\ne 0 1 +\n");
}

TEST_CASE("parse-serialize round trip is byte identical") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        auto g = random_signed_graph(2 + rng.below(9), 0.4, 0.5, rng.u64());
        auto text = graph_to_string(g);
        REQUIRE(graph_to_string(load_graph(text)) == text);
    }
}

TEST_CASE("switch basics") {
    auto g = make_graph(2, {{0, 1, '-'}});
    REQUIRE(graph_to_string(g.switched({})) == graph_to_string(g));
    auto flipped = g.switched({0});
    REQUIRE(flipped.has_edge(0, 1, Sign::positive));
}

TEST_CASE("switch is a beta-invariant involution") {
    Rng rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        int n = 2 + rng.below(5);  // n <= 6
        auto g = random_signed_graph(n, 0.6, 0.5, rng.u64());
        long long beta = sgtest::naive_beta(g);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<int> u;
            for (int v = 0; v < n; ++v)
                if ((mask >> v) & 1) u.push_back(v);
            auto sw = g.switched(u);
            REQUIRE(graph_to_string(sw.switched(u)) == graph_to_string(g));
            REQUIRE(sgtest::naive_beta(sw) == beta);
        }
    }
}

TEST_CASE("vertex deletion renumbers order-preservingly") {
    auto g = make_graph(5, {{0, 1, '-'}, {1, 2, '+'}, {2, 3, '-'}, {3, 4, '-'}});
    auto [h, remap] = g.without_vertices({1, 3});
    REQUIRE(h.n() == 3);
    REQUIRE(remap == std::vector<int>{0, -1, 1, -1, 2});
    REQUIRE(h.m() == 0);
    auto g2 = h.with_added_vertex({{0, Sign::positive}, {2, Sign::negative}});
    REQUIRE(g2.n() == 4);
    REQUIRE(g2.has_edge(0, 3, Sign::positive));
    REQUIRE(g2.has_edge(2, 3, Sign::negative));
}

TEST_CASE("graph constructor rejects invalid edges") {
    REQUIRE_THROWS_AS(SignedGraph(2, {Edge{0, 0, Sign::negative}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SignedGraph(2, {Edge{0, 1, Sign::negative}, Edge{0, 1, Sign::negative}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(SignedGraph(2, {Edge{0, 5, Sign::negative}}), std::invalid_argument);
}
