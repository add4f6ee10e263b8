#include <catch2/catch_amalgamated.hpp>

#include "sgmc/io.hpp"
#include "sgmc/kernel_rules.hpp"
#include "testutil.hpp"

using namespace sgmc;
using sgtest::make_graph;

namespace {

// answer of an instance, with k <= 0 meaning Yes
bool verdict(const Instance& inst) {
    return inst.k <= 0 || answer_exact(inst.graph, inst.k);
}

RuleContext ctx_of(SignedGraph g, long long k, std::vector<int> s) {
    return RuleContext::make(Instance{std::move(g), k}, std::move(s));
}

}  // namespace

TEST_CASE("rule 8 deletes two twins of a majority class") {
    // K4 all-negative, s positively adjacent to exactly 0,1,2
    auto g = make_graph(5, {{0, 1, '-'}, {0, 2, '-'}, {0, 3, '-'}, {1, 2, '-'}, {1, 3, '-'},
                            {2, 3, '-'}, {0, 4, '+'}, {1, 4, '+'}, {2, 4, '+'}});
    for (long long k = 1; k <= 3; ++k) {
        auto ctx = ctx_of(g, k, {4});
        auto found = find_applicable(ctx);
        REQUIRE(found);
        REQUIRE(found->rule == RuleId::R8);
        REQUIRE(found->x == std::vector<int>{0, 1, 2});
        auto ap = apply(ctx, *found);
        REQUIRE(ap.step.removed == std::vector<int>{0, 1});
        REQUIRE(ap.ctx.inst.k == k);
        REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
    }
}

TEST_CASE("rule 8 over an S-free triangle reduces K3 to K1") {
    auto ctx = ctx_of(sgtest::clique_graph(3), 1, {});
    auto ap = apply_rule8(ctx, 0, {0, 1, 2});
    REQUIRE(ap.ctx.inst.graph.n() == 1);
    REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
}

TEST_CASE("rule 8 rejects undersized X and whole-graph deletion") {
    auto ctx = ctx_of(sgtest::clique_graph(4), 1, {});
    REQUIRE_THROWS_AS(apply_rule8(ctx, 0, {0, 1}), RuleNotApplicable);
    // S-free K2: literal numeric test would pass but the deletion would
    // empty the instance
    auto p2 = ctx_of(sgtest::path_graph(2), 1, {});
    REQUIRE_THROWS_AS(apply_rule8(p2, 0, {0, 1}), RuleNotApplicable);
    auto found = find_applicable(p2);
    REQUIRE(found);
    REQUIRE(found->rule == RuleId::R9);
}

TEST_CASE("rule 9 on a pendant leaf block") {
    // 0-1 negative edge, s=2 attached to 1; interior 0 is S-free
    auto g = make_graph(3, {{0, 1, '-'}, {1, 2, '-'}});
    auto ctx = ctx_of(g, 1, {2});
    auto found = find_applicable(ctx);
    REQUIRE(found);
    REQUIRE(found->rule == RuleId::R9);
    REQUIRE(found->x == std::vector<int>{0});
    auto ap = apply(ctx, *found);
    REQUIRE(ap.ctx.inst.k == 0);
    REQUIRE(ap.step.removed == std::vector<int>{0});
    REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
}

TEST_CASE("rule 9 on an even clique") {
    // K4 negative; s adjacent to 2,3; X = {0,1}
    auto g = make_graph(5, {{0, 1, '-'}, {0, 2, '-'}, {0, 3, '-'}, {1, 2, '-'}, {1, 3, '-'},
                            {2, 3, '-'}, {2, 4, '-'}, {3, 4, '+'}});
    for (long long k = 1; k <= 3; ++k) {
        auto ctx = ctx_of(g, k, {4});
        auto ap = apply_rule9(ctx, 0, {0, 1});
        REQUIRE(ap.ctx.inst.k == k - 1);
        REQUIRE(ap.step.removed == std::vector<int>{0});
        REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
    }
}

TEST_CASE("rule 9 preconditions") {
    auto ctx = ctx_of(sgtest::clique_graph(3), 1, {});
    REQUIRE_THROWS_AS(apply_rule9(ctx, 0, {0}), RuleNotApplicable);  // odd block
    auto g = make_graph(3, {{0, 1, '-'}, {1, 2, '-'}});
    auto c2 = ctx_of(g, 1, {2});
    REQUIRE_THROWS_AS(apply_rule9(c2, 0, {1}), RuleNotApplicable);  // 1 has an S-neighbor
}

TEST_CASE("rule 10 bridge branch collapses the triangle into a fresh vertex") {
    // triangle {0,1,2} with interior u=2; tail 0-3-4; s1=5 on vertex 1
    // (breaks the twin class), s2=6 on the tail end (blocks the pendant
    // reduction). {0,1} is a bridge in G - u.
    auto g = make_graph(7, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'}, {0, 3, '-'}, {3, 4, '-'},
                            {1, 5, '+'}, {4, 6, '-'}});
    for (long long k = 1; k <= 3; ++k) {
        auto ctx = ctx_of(g, k, {5, 6});
        auto found = find_applicable(ctx);
        REQUIRE(found);
        REQUIRE(found->rule == RuleId::R10a);
        auto ap = apply(ctx, *found);
        REQUIRE(ap.ctx.inst.k == k);
        REQUIRE(ap.ctx.inst.graph.n() == 5);  // three removed, z added
        REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
    }
}

TEST_CASE("rule 10 non-bridge branch deletes u and the edge") {
    // triangle {0,1,2}, u=2; s=3 adjacent to both 0 and 1
    auto g = make_graph(4, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'}, {0, 3, '+'}, {1, 3, '+'}});
    for (long long k = 1; k <= 3; ++k) {
        auto ctx = ctx_of(g, k, {3});
        auto found = find_applicable(ctx);
        REQUIRE(found);
        REQUIRE(found->rule == RuleId::R10b);
        auto ap = apply(ctx, *found);
        REQUIRE(ap.ctx.inst.k == k - 1);
        REQUIRE(ap.ctx.inst.graph.n() == 3);
        REQUIRE_FALSE(ap.ctx.inst.graph.adjacent(0, 1));
        REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
    }
}

TEST_CASE("rule 10 needs a degree-2 triangle vertex") {
    // every triangle vertex carries a pendant, so no u qualifies
    auto g = make_graph(6, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'},
                            {0, 3, '-'}, {1, 4, '-'}, {2, 5, '-'}});
    auto ctx = ctx_of(g, 1, {});
    REQUIRE_THROWS_AS(apply_rule10(ctx, 0, 2), RuleNotApplicable);
}

TEST_CASE("rule 10a passes parallel opposite-sign pairs through to z") {
    // x=0 already carries a +/- pair toward s=3; z inherits both edges
    auto g = load_graph(
        "p sgraph 4 5\ne 0 1 -\ne 0 2 -\ne 0 3 -\ne 0 3 +\ne 1 2 -\n");
    auto ctx = ctx_of(g, 1, {3});
    auto ap = apply_rule10(ctx, 0, 2);
    REQUIRE(ap.step.rule == RuleId::R10a);
    const auto& gz = ap.ctx.inst.graph;
    REQUIRE(gz.n() == 2);
    int z = 1;  // s kept id 0 after renumbering
    REQUIRE(gz.has_edge(0, z, Sign::positive));
    REQUIRE(gz.has_edge(0, z, Sign::negative));
    REQUIRE(gz.has_parallel_pair());
    // the recorded step replays to the same graph
    auto replayed = replay_step(Instance{g, 1}, ap.step);
    REQUIRE(graph_to_string(replayed.graph) == graph_to_string(gz));
}

TEST_CASE("rule application steps replay mechanically") {
    // R10b including an edge deletion
    auto g = make_graph(4, {{0, 1, '-'}, {0, 2, '-'}, {1, 2, '-'}, {0, 3, '+'}, {1, 3, '+'}});
    auto ctx = ctx_of(g, 2, {3});
    auto ap = apply_rule10(ctx, 0, 2);
    REQUIRE(ap.step.rule == RuleId::R10b);
    REQUIRE(ap.step.removed_edges.size() == 1);
    auto replayed = replay_step(Instance{g, 2}, ap.step);
    REQUIRE(graph_to_string(replayed.graph) == graph_to_string(ap.ctx.inst.graph));
    REQUIRE(replayed.k == ap.ctx.inst.k);
}

TEST_CASE("rule 11 on single-vertex and edge components") {
    // T = {1}, s=0, positive edge
    auto pos = make_graph(2, {{0, 1, '+'}});
    auto ctx = ctx_of(pos, 2, {0});
    auto found = find_applicable(ctx);
    REQUIRE(found);
    REQUIRE(found->rule == RuleId::R11);
    auto ap = apply(ctx, *found);
    REQUIRE(ap.step.delta_k == 1);
    REQUIRE(ap.ctx.inst.graph.n() == 1);

    auto neg = make_graph(2, {{0, 1, '-'}});
    auto ap2 = apply_rule11(ctx_of(neg, 2, {0}), 1, 0);
    REQUIRE(ap2.step.delta_k == 1);

    // T = negative edge {1,2}, s positively adjacent to 1 only
    auto g3 = make_graph(3, {{1, 2, '-'}, {0, 1, '+'}});
    auto ap3 = apply_rule11(ctx_of(g3, 3, {0}), 1, 0);
    REQUIRE(ap3.step.delta_k == 2);
    REQUIRE(ap3.ctx.inst.k == 1);
}

TEST_CASE("rule 11 requires exactly one attachment") {
    auto g = make_graph(4, {{2, 3, '-'}, {0, 2, '+'}, {1, 3, '-'}, {0, 1, '-'}});
    auto ctx = ctx_of(g, 1, {0, 1});
    REQUIRE_THROWS_AS(apply_rule11(ctx, 2, 0), RuleNotApplicable);
    REQUIRE_FALSE(find_applicable(ctx).has_value());
}

TEST_CASE("rule 11 slack equals the exact oracle slack") {
    Rng rng(61);
    for (int iter = 0; iter < 50; ++iter) {
        auto s = sgtest::sample_applicable(rng, RuleId::R11, 1 + rng.below(4));
        if (!s) break;
        auto& [ctx, found] = *s;
        // p from the DP vs 4(beta - pt) on G[T + s] by brute force
        auto comps = connected_components(ctx.inst.graph, ctx.s);
        std::vector<int> keep;
        for (const auto& c : comps)
            if (std::binary_search(c.begin(), c.end(), found.comp_rep)) keep = c;
        keep.push_back(found.s_vertex);
        std::sort(keep.begin(), keep.end());
        auto [sub, remap] = ctx.inst.graph.induced(keep);
        long long slack = 4 * sgtest::naive_beta(sub) - pt(sub).q;
        auto ap = apply(ctx, found);
        REQUIRE(ap.step.delta_k == slack);
    }
}

TEST_CASE("find_applicable on K5 returns the whole interior class") {
    auto ctx = ctx_of(gen_negative_clique(5), 1, {});
    auto found = find_applicable(ctx);
    REQUIRE(found);
    REQUIRE(found->rule == RuleId::R8);
    REQUIRE(found->x.size() == 5);
    auto ap = apply(ctx, *found);
    REQUIRE(ap.step.removed == std::vector<int>{0, 1});

    auto reduced = ctx_of(SignedGraph(1, {}), 1, {});
    REQUIRE_FALSE(find_applicable(reduced).has_value());
}

TEST_CASE("context invariant is enforced") {
    REQUIRE_THROWS_AS(ctx_of(sgtest::cycle_graph(5), 1, {}), std::logic_error);
    REQUIRE_THROWS_AS(ctx_of(sgtest::clique_graph(3, Sign::positive), 1, {}), std::logic_error);
}

TEST_CASE("randomized two-way validity per rule") {
    Rng rng(67);
    for (RuleId rule : {RuleId::R8, RuleId::R9, RuleId::R10a, RuleId::R10b, RuleId::R11}) {
        int done = 0;
        for (int iter = 0; iter < 120 && done < 60; ++iter) {
            long long k = 1 + rng.below(4);
            auto s = sgtest::sample_applicable(rng, rule, k);
            if (!s) continue;
            auto& [ctx, found] = *s;
            if (ctx.inst.graph.n() > 10) continue;
            auto ap = apply(ctx, found);
            INFO(rule_name(rule));
            REQUIRE(verdict(ap.ctx.inst) == verdict(ctx.inst));
            // progress and parameter monotonicity
            REQUIRE(ap.step.delta_k >= 0);
            if (ap.step.rule != RuleId::R10a)
                REQUIRE(ap.ctx.inst.graph.n() < ctx.inst.graph.n());
            else
                REQUIRE(ap.ctx.inst.graph.n() == ctx.inst.graph.n() - 2);
            ++done;
        }
        INFO(rule_name(rule));
        REQUIRE(done >= 30);
    }
}
