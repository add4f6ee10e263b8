#include <catch2/catch_amalgamated.hpp>

#include "sgmc/decompose.hpp"
#include "sgmc/io.hpp"
#include "testutil.hpp"

using namespace sgmc;
using sgtest::make_graph;

TEST_CASE("star rule on a cycle vertex") {
    auto c5 = sgtest::cycle_graph(5);
    auto ap = apply_rule6plus(Instance{c5, 3}, 0, {1, 4});
    REQUIRE(ap.inst.graph.n() == 2);
    REQUIRE(ap.inst.graph.m() == 1);  // remainder P2
    REQUIRE(ap.inst.k == 2);
    REQUIRE(ap.step.delta_k == 1);
    REQUIRE(*ap.step.piece_beta4 == 8);
    REQUIRE(*ap.step.piece_pt4 == 6);
}

TEST_CASE("star rule with three leaves") {
    // center 0 with leaves 1,2,3 and one extra vertex 4 adjacent to 0
    auto g = make_graph(5, {{0, 1, '-'}, {0, 2, '+'}, {0, 3, '-'}, {0, 4, '-'}});
    auto ap = apply_rule6plus(Instance{g, 5}, 0, {1, 2, 3});
    REQUIRE(ap.inst.graph.n() == 1);
    REQUIRE(ap.inst.k == 3);  // k - c + 1 with c = 3
}

TEST_CASE("star rule preconditions") {
    auto tri = sgtest::clique_graph(3);
    REQUIRE_THROWS_AS(apply_rule6plus(Instance{tri, 1}, 0, {1, 2}), RuleNotApplicable);  // adjacent
    auto c5 = sgtest::cycle_graph(5);
    REQUIRE_THROWS_AS(apply_rule6plus(Instance{c5, 1}, 0, {1}), RuleNotApplicable);  // c < 2
    auto star = sgtest::star_graph(3);
    REQUIRE_THROWS_AS(apply_rule6plus(Instance{star, 1}, 0, {1, 2, 3}),
                      RuleNotApplicable);  // empty remainder
    auto pair = load_graph("p sgraph 3 4\ne 0 1 -\ne 0 1 +\ne 0 2 -\ne 0 2 +\n");
    REQUIRE_THROWS_AS(apply_rule6plus(Instance{pair, 1}, 0, {1, 2}), RuleNotApplicable);
}

TEST_CASE("pendant rule") {
    auto g = make_graph(4, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'}, {2, 3, '-'}});
    auto ap = apply_ruleA(Instance{g, 1}, 3);
    REQUIRE(ap.inst.graph.n() == 3);
    REQUIRE(ap.inst.k == 0);
    REQUIRE(answer_exact(g, 1));

    auto p2 = make_graph(2, {{0, 1, '-'}});
    auto ap2 = apply_ruleA(Instance{p2, 1}, 1);
    REQUIRE(ap2.inst.graph.n() == 1);
    REQUIRE(ap2.inst.k == 0);

    REQUIRE_THROWS_AS(apply_ruleA(Instance{sgtest::cycle_graph(4), 1}, 0), RuleNotApplicable);
}

TEST_CASE("pendant rule is two-way on random pendant-bearing instances") {
    Rng rng(53);
    int done = 0;
    while (done < 60) {
        int n = 3 + rng.below(8);
        auto g = random_signed_graph(n, 0.35, 0.4, rng.u64());
        int pendant = -1;
        for (int v = 0; v < n && pendant == -1; ++v)
            if (g.degree(v) == 1) pendant = v;
        if (pendant == -1) continue;
        long long k = 1 + rng.below(4);
        auto ap = apply_ruleA(Instance{g, k}, pendant);
        bool before = answer_exact(g, k);
        bool after = ap.inst.k <= 0 || answer_exact(ap.inst.graph, ap.inst.k);
        REQUIRE(before == after);
        ++done;
    }
}

TEST_CASE("credit of small sets") {
    auto p3 = sgtest::path_graph(5);
    REQUIRE(credit_of_set(p3, {0, 1, 2}).value() == 1);

    // deleting a negative triangle gains nothing
    auto g = make_graph(5, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'}, {2, 3, '-'}, {3, 4, '-'}});
    REQUIRE_FALSE(credit_of_set(g, {0, 1, 2}).has_value());

    // a balanced triangle is worth 3
    auto h = make_graph(5, {{0, 1, '+'}, {0, 2, '-'}, {1, 2, '-'}, {2, 3, '-'}, {3, 4, '-'}});
    REQUIRE(credit_of_set(h, {0, 1, 2}).value() == 3);

    REQUIRE_THROWS_AS(credit_of_set(p3, {0, 2, 4}), RuleNotApplicable);  // G[X] disconnected
    REQUIRE_THROWS_AS(credit_of_set(sgtest::path_graph(3), {0, 1, 2}), RuleNotApplicable);
}

TEST_CASE("decompose terminal cases") {
    auto k5 = gen_negative_clique(5);
    auto out = decompose(Instance{k5, 2});
    REQUIRE_FALSE(out.yes);
    REQUIRE(out.s_set.empty());
    REQUIRE(is_negative_clique_forest(out.residual));

    auto c5 = sgtest::cycle_graph(5);
    auto yes = decompose(Instance{c5, 1});
    REQUIRE(yes.yes);
    REQUIRE(yes.total_credit >= 1);
    REQUIRE(yes.trace.size() == 1);
    REQUIRE(yes.trace[0].rule == RuleId::CreditedTriple);

    auto s3 = decompose(Instance{c5, 3});
    REQUIRE_FALSE(s3.yes);
    REQUIRE(s3.s_set.size() == 3);
    REQUIRE(s3.residual.n() == 2);
    REQUIRE(s3.residual.m() == 1);
    auto rest = c5.without_vertices(s3.s_set).first;
    REQUIRE(is_negative_clique_forest(rest));
}

TEST_CASE("decompose rescues stalled small residuals") {
    // positive triangle: not switching-equivalent to all-negative and no
    // credited deletion exists, so S comes from the bounded search
    auto pos_tri = sgtest::clique_graph(3, Sign::positive);
    auto out = decompose(Instance{pos_tri, 1});
    if (!out.yes) {
        REQUIRE(static_cast<long long>(out.s_set.size()) <= 3);
        REQUIRE(out.switch_set.empty());
        REQUIRE(is_negative_clique_forest(pos_tri.without_vertices(out.s_set).first));
    }
}

TEST_CASE("decompose normalizes switching-disguised instances") {
    // a triangle with one negative edge is switching-equivalent to the
    // all-negative triangle, which is already a clique-forest
    auto unbal = make_graph(3, {{0, 1, '+'}, {0, 2, '+'}, {1, 2, '-'}});
    auto out = decompose(Instance{unbal, 1});
    REQUIRE_FALSE(out.yes);
    REQUIRE(out.s_set.empty());
    REQUIRE_FALSE(out.switch_set.empty());
    REQUIRE(is_negative_clique_forest(
        unbal.switched(out.switch_set).without_vertices(out.s_set).first));

    // a switching-disguised all-negative K4: every triangle is unbalanced
    auto sw = sgtest::clique_graph(4).switched({0});
    auto out3 = decompose(Instance{sw, 1});
    if (!out3.yes) {
        REQUIRE(out3.s_set.empty());
        REQUIRE(is_negative_clique_forest(
            sw.switched(out3.switch_set).without_vertices(out3.s_set).first));
    }

    // disguised large forest whose positive edges admit no small cover
    Rng rng(101);
    auto forest = sgtest::random_negative_clique_forest(rng, 10);
    std::vector<int> u{0, 2, 4, 6};
    auto disguised = forest.switched(u);
    auto out4 = decompose(Instance{disguised, 1});
    REQUIRE_FALSE(out4.yes);
    REQUIRE(out4.s_set.empty());
    REQUIRE(is_negative_clique_forest(disguised.switched(out4.switch_set)));
}

TEST_CASE("decompose is safe and each step implies forward") {
    Rng rng(59);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 3 + rng.below(7);
        auto g = random_signed_graph(n, 0.5, 0.35, rng.u64());
        long long k = 1 + rng.below(4);
        auto out = decompose(Instance{g, k});
        bool truth = answer_exact(g, k);
        if (out.yes) REQUIRE(truth);

        // forward implication per individual step
        Instance cur{g, k};
        for (const auto& step : out.trace) {
            Instance next = replay_step(cur, step);
            bool next_yes = next.k <= 0 || answer_exact(next.graph, next.k);
            bool cur_yes = answer_exact(cur.graph, cur.k);
            if (next_yes) REQUIRE(cur_yes);
            cur = next;
        }
    }
}

TEST_CASE("s-set outcome respects the 3k bound on the corpus") {
    for (const auto& [name, g] : sgtest::small_corpus()) {
        for (long long k : {1, 2}) {
            INFO(name << " k=" << k);
            auto out = decompose(Instance{g, k});
            if (!out.yes) {
                REQUIRE(static_cast<long long>(out.s_set.size()) <= 3 * k);
                REQUIRE(is_negative_clique_forest(
                    g.switched(out.switch_set).without_vertices(out.s_set).first));
            }
        }
    }
}
