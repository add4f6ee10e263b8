#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "sgmc/io.hpp"
#include "sgmc/oracle.hpp"
#include "testutil.hpp"

using namespace sgmc;
using sgtest::make_graph;

using sgtest::cycle_is_valid_negative_witness;

TEST_CASE("consistent edge count") {
    auto tri = sgtest::clique_graph(3);
    Assignment a = Assignment::all_one(3);
    a.side = {1, 2, 2};
    REQUIRE(consistent_edge_count(tri, a) == 2);

    auto pos = sgtest::clique_graph(4, Sign::positive);
    REQUIRE(consistent_edge_count(pos, Assignment::all_one(4)) == pos.m());

    auto k5 = gen_negative_clique(5);
    Assignment split = Assignment::all_one(5);
    split.side = {1, 1, 1, 2, 2};
    REQUIRE(consistent_edge_count(k5, split) == 6);  // (n^2-1)/4 at n=5
}

TEST_CASE("pt in quarter units") {
    REQUIRE(pt(gen_negative_clique(5)).q == 24);
    REQUIRE(pt(SignedGraph(1, {})).q == 0);
    auto two_edges = make_graph(4, {{0, 1, '-'}, {2, 3, '-'}});
    REQUIRE(pt(two_edges).q == 6);
    REQUIRE(pt(two_edges).to_string() == "6/4");
}

TEST_CASE("beta_exact fixtures") {
    REQUIRE(beta_exact(gen_negative_clique(5)).beta == 6);
    REQUIRE(beta_exact(make_graph(2, {{0, 1, '+'}})).beta == 1);
    REQUIRE(beta_exact(sgtest::cycle_graph(5)).beta == 4);
    REQUIRE(beta_exact(SignedGraph()).beta == 0);
}

TEST_CASE("beta_exact agrees with the naive enumeration and is lex-minimal") {
    Rng rng(3);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + rng.below(7);
        auto g = random_signed_graph(n, 0.5, 0.4, rng.u64());
        auto res = beta_exact(g);
        REQUIRE(res.beta == sgtest::naive_beta(g));
        REQUIRE(consistent_edge_count(g, res.assignment) == res.beta);
        // lexicographically smallest optimum with side(0) = 1
        std::vector<std::uint8_t> best;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n > 0 ? n - 1 : 0)); ++mask) {
            Assignment a = Assignment::all_one(n);
            for (int v = 1; v < n; ++v)
                if ((mask >> (v - 1)) & 1) a.side[v] = 2;
            if (consistent_edge_count(g, a) == res.beta) {
                if (best.empty() || a.side < best) best = a.side;
            }
        }
        REQUIRE(res.assignment.side == best);
    }
}

TEST_CASE("beta cap refuses large graphs") {
    auto g = random_signed_graph(30, 0.2, 0.5, 1);
    REQUIRE_THROWS_AS(beta_exact(g), OracleCapError);
    REQUIRE_THROWS_AS(beta_exact(sgtest::path_graph(10), 8), OracleCapError);
}

TEST_CASE("beta_scan chunks merge deterministically") {
    auto g = random_signed_graph(9, 0.5, 0.5, 99);
    auto full = detail::beta_scan(g, 0, 1ull << 8);
    auto a = detail::beta_scan(g, 0, 100);
    auto b = detail::beta_scan(g, 100, 1ull << 8);
    auto merged = a;
    if (b.first > merged.first || (b.first == merged.first && b.second < merged.second))
        merged = b;
    REQUIRE(merged == full);
}

TEST_CASE("answer_exact") {
    REQUIRE_FALSE(answer_exact(gen_negative_clique(5), 1));
    REQUIRE(answer_exact(make_graph(2, {{0, 1, '-'}}), 1));
    auto balanced_tri = make_graph(3, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '+'}});
    REQUIRE(answer_exact(balanced_tri, 4));
    REQUIRE_FALSE(answer_exact(balanced_tri, 5));
    REQUIRE_THROWS_AS(answer_exact(make_graph(4, {{0, 1, '-'}, {2, 3, '-'}}), 1),
                      std::invalid_argument);
}

TEST_CASE("balance detection with certificates") {
    auto pos = sgtest::clique_graph(4, Sign::positive);
    auto r = is_balanced(pos);
    REQUIRE(r.balanced);
    REQUIRE(r.assignment.side == std::vector<std::uint8_t>{1, 1, 1, 1});

    auto tri = sgtest::clique_graph(3);
    auto rt = is_balanced(tri);
    REQUIRE_FALSE(rt.balanced);
    REQUIRE(rt.cycle.size() == 3);
    REQUIRE(cycle_is_valid_negative_witness(tri, rt.cycle));

    REQUIRE(is_balanced(sgtest::cycle_graph(4)).balanced);

    auto pair = load_graph("p sgraph 2 2\ne 0 1 -\ne 0 1 +\n");
    auto rp = is_balanced(pair);
    REQUIRE_FALSE(rp.balanced);
    REQUIRE(rp.cycle.size() == 2);
    REQUIRE(cycle_is_valid_negative_witness(pair, rp.cycle));
}

TEST_CASE("balanced iff beta equals m") {
    Rng rng(17);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + rng.below(7);
        auto g = random_signed_graph(n, 0.5, 0.5, rng.u64());
        auto r = is_balanced(g);
        bool all = sgtest::naive_beta(g) == g.m();
        REQUIRE(r.balanced == all);
        if (r.balanced)
            REQUIRE(consistent_edge_count(g, r.assignment) == g.m());
        else
            REQUIRE(cycle_is_valid_negative_witness(g, r.cycle));
    }
}

TEST_CASE("poljak-turzik bound holds exhaustively at small n") {
    Rng rng(23);
    for (int iter = 0; iter < 150; ++iter) {
        int n = 1 + rng.below(6);
        auto g = random_signed_graph(n, 0.6, 0.5, rng.u64());
        REQUIRE(4 * sgtest::naive_beta(g) >= pt(g).q);
    }
}

TEST_CASE("odd negative cliques are tight") {
    for (int t = 1; t <= 4; ++t) {
        int n = 2 * t + 1;
        auto g = gen_negative_clique(n);
        long long beta = beta_exact(g).beta;
        REQUIRE(beta == (static_cast<long long>(n) * n - 1) / 4);
        REQUIRE(4 * beta == pt(g).q);
    }
}

TEST_CASE("decomposition inequality report") {
    auto p3 = sgtest::path_graph(3);
    auto r = verify_lemma_beta(p3, {1});
    REQUIRE(r.beta_g4 == 8);
    REQUIRE(r.beta_u4 == 0);
    REQUIRE(r.beta_w4 == 0);
    REQUIRE(r.cross_edges == 2);
    REQUIRE(r.cut_form_holds);
    REQUIRE(r.pt_form_holds);

    auto k5 = gen_negative_clique(5);
    auto r2 = verify_lemma_beta(k5, {0, 1});
    REQUIRE(r2.cut_form_holds);
    REQUIRE(r2.pt_form_holds);

    REQUIRE_THROWS_AS(verify_lemma_beta(p3, {}), std::invalid_argument);
    REQUIRE_THROWS_AS(verify_lemma_beta(p3, {0, 1, 2}), std::invalid_argument);

    Rng rng(29);
    for (int iter = 0; iter < 120; ++iter) {
        int n = 2 + rng.below(7);
        auto g = random_signed_graph(n, 0.5, 0.4, rng.u64());
        std::vector<int> u;
        for (int v = 0; v < n; ++v)
            if (rng.chance(0.5)) u.push_back(v);
        if (u.empty() || static_cast<int>(u.size()) == n) continue;
        auto rep = verify_lemma_beta(g, u);
        REQUIRE(rep.cut_form_holds);
        REQUIRE(rep.pt_form_holds);
    }
}
