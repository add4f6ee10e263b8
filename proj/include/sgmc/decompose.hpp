#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgmc/blocks.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/oracle.hpp"
#include "sgmc/trace.hpp"

namespace sgmc {

struct RuleNotApplicable : std::runtime_error {
    std::string clause;
    explicit RuleNotApplicable(std::string c)
        : std::runtime_error("rule not applicable: " + c), clause(std::move(c)) {}
};

struct Applied {
    Instance inst;
    TraceStep step;
};

namespace detail {

inline bool connected_nonempty_without(const SignedGraph& g, const std::vector<int>& del) {
    if (g.n() - static_cast<int>(del.size()) < 1) return false;
    return connected_components(g, del).size() == 1;
}

}  // namespace detail

/// Deletes a star {v, u_1..u_c} of c >= 2 pairwise non-adjacent neighbors of
/// v and sets k' = k - c + 1. One-way: a Yes answer for the result implies a
/// Yes answer for the input. Each v-u_i connection must be a single signed
/// edge, otherwise the star's balanced value would not be c.
inline Applied apply_rule6plus(const Instance& inst, int v, const std::vector<int>& leaves) {
    const SignedGraph& g = inst.graph;
    if (leaves.size() < 2) throw RuleNotApplicable("rule 6+: fewer than 2 leaves");
    std::set<int> uniq(leaves.begin(), leaves.end());
    if (uniq.size() != leaves.size() || uniq.count(v))
        throw RuleNotApplicable("rule 6+: leaves not distinct from each other and v");
    for (int u : leaves) {
        if (!g.adjacent(u, v)) throw RuleNotApplicable("rule 6+: leaf not adjacent to center");
        if (g.has_edge(u, v, Sign::positive) && g.has_edge(u, v, Sign::negative))
            throw RuleNotApplicable("rule 6+: parallel pair between center and leaf");
    }
    for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = i + 1; j < leaves.size(); ++j)
            if (g.adjacent(leaves[i], leaves[j]))
                throw RuleNotApplicable("rule 6+: leaves adjacent");
    std::vector<int> del = leaves;
    del.push_back(v);
    std::sort(del.begin(), del.end());
    if (!detail::connected_nonempty_without(g, del))
        throw RuleNotApplicable("rule 6+: remainder not connected and non-empty");
    long long c = static_cast<long long>(leaves.size());
    TraceStep step;
    step.rule = RuleId::Rule6Plus;
    step.removed = del;
    step.delta_k = c - 1;
    step.piece_beta4 = 4 * c;
    step.piece_pt4 = 3 * c;
    return Applied{Instance{g.without_vertices(del).first, inst.k - step.delta_k},
                   std::move(step)};
}

/// Deletes a vertex of degree 1 and sets k' = k - 1. Two-way.
inline Applied apply_ruleA(const Instance& inst, int v) {
    const SignedGraph& g = inst.graph;
    if (g.n() < 2) throw RuleNotApplicable("rule A: graph too small");
    if (g.degree(v) != 1) throw RuleNotApplicable("rule A: vertex degree is not 1");
    TraceStep step;
    step.rule = RuleId::RuleA;
    step.removed = {v};
    step.delta_k = 1;
    return Applied{Instance{g.without_vertices({v}).first, inst.k - 1}, std::move(step)};
}

/// The guaranteed k-gain of deleting a connected set X from a connected
/// graph with connected non-empty remainder: 4 beta(G[X]) - 4 pt(G[X]) - 1.
/// Not-applicable (nullopt) when the gain is <= 0.
inline std::optional<long long> credit_of_set(const SignedGraph& g, const std::vector<int>& x,
                                              int cap = default_oracle_cap()) {
    if (!is_connected(g)) throw RuleNotApplicable("credit: graph not connected");
    auto [gx, remap] = g.induced(x);
    if (!is_connected(gx) || gx.n() == 0)
        throw RuleNotApplicable("credit: G[X] not connected");
    if (!detail::connected_nonempty_without(g, x))
        throw RuleNotApplicable("credit: remainder not connected and non-empty");
    long long credit = 4 * beta_exact(gx, cap).beta - pt(gx).q - 1;
    if (credit <= 0) return std::nullopt;
    return credit;
}

struct DecompositionStuck : std::runtime_error {
    SignedGraph residual;
    explicit DecompositionStuck(SignedGraph g)
        : std::runtime_error("decomposition-stuck: no applicable one-way step and the residual "
                             "is not a negative clique-forest"),
          residual(std::move(g)) {}
};

/// Outcome of the one-way phase: either a certificate trace whose total
/// credit reaches k, or a set S (ids of the input graph) with |S| <= 3k such
/// that switch(G, switch_set) - S is a negative clique-forest. switch_set is
/// empty unless the input was switching-equivalent to an all-negative graph;
/// switching preserves the answer exactly.
struct DecompositionOutcome {
    bool yes = false;
    RuleTrace trace;
    long long total_credit = 0;
    std::vector<int> switch_set;
    std::vector<int> s_set;
    SignedGraph residual;
};

namespace detail {

struct TripleCandidate {
    std::vector<int> x;
};

// Candidate 3-sets in deterministic order: triples inside single blocks
// first (leaf blocks by descending depth, then remaining blocks, each by
// ascending smallest vertex; ascending ids within a block), then triples
// spanning blocks enumerated by ascending (center, pair). Every connected
// 3-set with two edges has a center adjacent to the other two, so the
// enumeration walks centers and neighbor pairs.
inline std::vector<TripleCandidate> triple_candidates(const SignedGraph& g) {
    auto d = block_decomposition(g);
    std::vector<std::size_t> order;
    for (std::size_t b = 0; b < d.blocks.size(); ++b) order.push_back(b);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        bool la = d.leaf_block[a], lb = d.leaf_block[b];
        if (la != lb) return la > lb;
        if (la && d.depth[a] != d.depth[b]) return d.depth[a] > d.depth[b];
        return d.blocks[a] < d.blocks[b];
    });

    std::vector<TripleCandidate> out;
    std::set<std::vector<int>> seen;
    for (std::size_t b : order) {
        const auto& blk = d.blocks[b];
        std::vector<std::vector<int>> local;
        for (int v : blk) {
            std::vector<int> nb;
            for (int w : g.neighbors(v))
                if (std::binary_search(blk.begin(), blk.end(), w)) nb.push_back(w);
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j) {
                    std::vector<int> x{v, nb[i], nb[j]};
                    std::sort(x.begin(), x.end());
                    local.push_back(std::move(x));
                }
        }
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        for (auto& x : local)
            if (seen.insert(x).second) out.push_back({std::move(x)});
    }
    for (int v = 0; v < g.n(); ++v) {
        const auto& nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                std::vector<int> x{v, nb[i], nb[j]};
                std::sort(x.begin(), x.end());
                if (seen.insert(x).second) out.push_back({std::move(x)});
            }
    }
    return out;
}

// Greedy independent subset of v's neighbors (ascending), all attached to v
// by single edges.
inline std::vector<int> independent_leaves(const SignedGraph& g, int v) {
    std::vector<int> leaves;
    for (int u : g.neighbors(v)) {
        if (g.has_edge(u, v, Sign::positive) && g.has_edge(u, v, Sign::negative)) continue;
        bool ok = true;
        for (int w : leaves)
            if (g.adjacent(u, w)) ok = false;
        if (ok) leaves.push_back(u);
    }
    return leaves;
}

}  // namespace detail

/// One-way reduction engine. Greedily deletes credited sets (3-sets
/// justified by the decomposition bound, stars via the star rule, pendants
/// via the degree-1 rule) until the accumulated credit reaches k or the
/// residual is a negative clique-forest. When the greedy search stalls on a
/// small residual, a bounded exhaustive search may complete S directly; the
/// vertices deleted so far plus that completion still satisfy |S| <= 3k.
inline DecompositionOutcome decompose(const Instance& inst, int cap = default_oracle_cap()) {
    if (!is_connected(inst.graph)) throw std::invalid_argument("decompose: graph not connected");
    // A +/- pair always has exactly one inconsistent edge, so m/2 + (n-t)/4
    // is not a lower bound on beta for such graphs and the credit accounting
    // would be unsound. Problem instances are simple signed graphs; pairs
    // only arise inside the pipeline, where the rules keep them sound.
    if (inst.graph.has_parallel_pair())
        throw std::invalid_argument(
            "decompose: parallel opposite-sign pairs are not valid problem instances");

    SignedGraph cur = inst.graph;
    std::vector<int> cur_to_orig(cur.n());
    for (int v = 0; v < cur.n(); ++v) cur_to_orig[v] = v;
    std::vector<int> deleted_orig;
    RuleTrace trace;
    long long credit = 0;

    // Normalization: a graph whose sign-flip is balanced is switching-
    // equivalent to an all-negative graph; switch it up front. This turns
    // disguised negative clique-forests back into plain ones.
    std::vector<int> switch_set;
    bool has_positive = false;
    for (const auto& e : cur.edges()) has_positive = has_positive || e.sign == Sign::positive;
    if (has_positive) {
        auto bal = is_balanced(cur.flipped());
        if (bal.balanced) {
            for (int v = 0; v < cur.n(); ++v)
                if (bal.assignment.side[v] == 2) switch_set.push_back(v);
            if (!switch_set.empty()) {
                cur = cur.switched(switch_set);
                TraceStep step;
                step.rule = RuleId::Switch;
                step.switched = switch_set;
                step.delta_k = 0;
                trace.push_back(std::move(step));
            }
        }
    }

    auto apply_deletion = [&](Applied&& ap) {
        for (int v : ap.step.removed) deleted_orig.push_back(cur_to_orig[v]);
        std::vector<int> next_map;
        for (int v = 0; v < cur.n(); ++v) {
            bool dead = std::binary_search(ap.step.removed.begin(), ap.step.removed.end(), v);
            if (!dead) next_map.push_back(cur_to_orig[v]);
        }
        cur_to_orig = std::move(next_map);
        credit += ap.step.delta_k;
        trace.push_back(std::move(ap.step));
        cur = std::move(ap.inst.graph);
    };

    while (true) {
        if (credit >= inst.k) {
            DecompositionOutcome out;
            out.yes = true;
            out.trace = std::move(trace);
            out.total_credit = credit;
            out.switch_set = std::move(switch_set);
            return out;
        }
        if (is_negative_clique_forest(cur)) {
            DecompositionOutcome out;
            out.trace = std::move(trace);
            out.total_credit = credit;
            out.switch_set = std::move(switch_set);
            std::sort(deleted_orig.begin(), deleted_orig.end());
            out.s_set = std::move(deleted_orig);
            out.residual = std::move(cur);
            return out;
        }

        bool applied = false;
        for (const auto& cand : detail::triple_candidates(cur)) {
            if (!detail::connected_nonempty_without(cur, cand.x)) continue;
            auto [gx, remap] = cur.induced(cand.x);
            if (!is_connected(gx)) continue;
            long long beta4 = 4 * beta_exact(gx, cap).beta;
            long long credit_x = beta4 - pt(gx).q - 1;
            if (credit_x <= 0) continue;
            TraceStep step;
            step.rule = RuleId::CreditedTriple;
            step.removed = cand.x;
            step.delta_k = credit_x;
            step.piece_beta4 = beta4;
            step.piece_pt4 = pt(gx).q;
            Instance next{cur.without_vertices(cand.x).first, 0};
            apply_deletion(Applied{std::move(next), std::move(step)});
            applied = true;
            break;
        }
        if (applied) continue;

        for (int v = 0; v < cur.n() && !applied; ++v) {
            auto leaves = detail::independent_leaves(cur, v);
            while (leaves.size() >= 2) {
                std::vector<int> del = leaves;
                del.push_back(v);
                std::sort(del.begin(), del.end());
                if (detail::connected_nonempty_without(cur, del)) {
                    apply_deletion(apply_rule6plus(Instance{cur, 0}, v, leaves));
                    applied = true;
                    break;
                }
                leaves.pop_back();
            }
        }
        if (applied) continue;

        for (int v = 0; v < cur.n() && !applied; ++v) {
            if (cur.n() >= 2 && cur.degree(v) == 1) {
                apply_deletion(apply_ruleA(Instance{cur, 0}, v));
                applied = true;
            }
        }
        if (applied) continue;

        // Greedy search exhausted. Complete S by bounded exhaustive search on
        // the residual; only completions respecting |S| <= 3k are accepted.
        long long budget = 3 * inst.k - static_cast<long long>(deleted_orig.size());
        int max_extra = static_cast<int>(std::min<long long>(budget, cur.n()));
        if (cur.n() > 24) max_extra = std::min(max_extra, 2);
        std::vector<int> chosen;
        std::optional<std::vector<int>> found;
        std::function<void(int, int)> search = [&](int start, int remaining) {
            if (found) return;
            if (remaining == 0) {
                if (is_negative_clique_forest(cur.without_vertices(chosen).first)) found = chosen;
                return;
            }
            for (int v = start; v < cur.n(); ++v) {
                chosen.push_back(v);
                search(v + 1, remaining - 1);
                chosen.pop_back();
                if (found) return;
            }
        };
        for (int size = 1; size <= max_extra && !found; ++size) search(0, size);
        if (found) {
            DecompositionOutcome out;
            out.trace = std::move(trace);
            out.total_credit = credit;
            out.switch_set = std::move(switch_set);
            for (int v : *found) deleted_orig.push_back(cur_to_orig[v]);
            std::sort(deleted_orig.begin(), deleted_orig.end());
            out.s_set = std::move(deleted_orig);
            out.residual = cur.without_vertices(*found).first;
            return out;
        }
        throw DecompositionStuck(cur);
    }
}

}  // namespace sgmc
