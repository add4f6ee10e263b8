#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sgmc/blocks.hpp"
#include "sgmc/decompose.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/mcwv.hpp"
#include "sgmc/trace.hpp"

namespace sgmc {

/// Rewriting state for the two-way rules: the current instance, the fixed
/// set S (current ids), and the block structure of G - S. G - S is a
/// negative clique-forest at all times; every application re-checks it.
struct RuleContext {
    Instance inst;
    std::vector<int> s;
    BlockDecomposition blocks;

    static RuleContext make(Instance inst, std::vector<int> s_set) {
        std::sort(s_set.begin(), s_set.end());
        RuleContext ctx{std::move(inst), std::move(s_set), {}};
        ctx.refresh();
        return ctx;
    }

    void refresh() {
        std::vector<int> keep;
        std::vector<char> in_s(inst.graph.n(), 0);
        for (int v : s) in_s[v] = 1;
        for (int v = 0; v < inst.graph.n(); ++v)
            if (!in_s[v]) keep.push_back(v);
        if (!is_negative_clique_forest(inst.graph.induced(keep).first))
            throw std::logic_error("rule context: G - S is not a negative clique-forest");
        blocks = block_decomposition(inst.graph, s);
    }
};

struct AppliedContext {
    RuleContext ctx;
    TraceStep step;
};

namespace detail {

inline std::vector<int> s_neighbors(const SignedGraph& g, const std::vector<char>& in_s, int v,
                                    Sign sign) {
    std::vector<int> out;
    for (auto [w, sg] : g.adjacency(v))
        if (sg == sign && in_s[w] && (out.empty() || out.back() != w)) out.push_back(w);
    return out;
}

struct SignatureClass {
    std::vector<int> pos, neg;  // S-neighborhoods shared by all members
    std::vector<int> members;   // ascending

    std::size_t attachment_count() const {
        std::vector<int> u = pos;
        u.insert(u.end(), neg.begin(), neg.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        return u.size();
    }
};

/// Interior vertices of a block grouped by their exact (N+ in S, N- in S)
/// pair, ordered by smallest member.
inline std::vector<SignatureClass> signature_classes(const RuleContext& ctx, std::size_t b) {
    std::vector<char> in_s(ctx.inst.graph.n(), 0);
    for (int v : ctx.s) in_s[v] = 1;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> groups;
    for (int v : ctx.blocks.interior(b)) {
        auto key = std::make_pair(s_neighbors(ctx.inst.graph, in_s, v, Sign::positive),
                                  s_neighbors(ctx.inst.graph, in_s, v, Sign::negative));
        groups[key].push_back(v);
    }
    std::vector<SignatureClass> out;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(SignatureClass{key.first, key.second, std::move(members)});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b2) { return a.members.front() < b2.members.front(); });
    return out;
}

// Fresh vertices (the collapse rule's z) always join G - S.
inline RuleContext rebuild(const RuleContext& ctx, const SignedGraph& g_new, long long k_new,
                           const std::vector<int>& remap) {
    std::vector<int> s_new;
    for (int v : ctx.s)
        if (remap[v] != -1) s_new.push_back(remap[v]);
    return RuleContext::make(Instance{g_new, k_new}, std::move(s_new));
}

inline bool edge_is_bridge(const SignedGraph& g, int x, int y) {
    // Bridge test ignoring the multiplicity of signs between x and y is not
    // needed here: inside G - S the pair carries a single negative edge.
    SignedGraph g2 = g.without_edges({make_edge(x, y, Sign::negative)});
    for (const auto& comp : connected_components(g2)) {
        bool has_x = std::binary_search(comp.begin(), comp.end(), x);
        bool has_y = std::binary_search(comp.begin(), comp.end(), y);
        if (has_x || has_y) return !(has_x && has_y);
    }
    return true;
}

}  // namespace detail

/// Rule 8: in a block C, a set X of interior vertices with identical signed
/// S-neighborhoods and |X| > (|V(C)| + |N_G(X) cap S|)/2 >= 1 allows the
/// deletion of two vertices of X with k unchanged. The deletion must leave
/// the instance connected and non-empty.
inline AppliedContext apply_rule8(const RuleContext& ctx, std::size_t b,
                                  const std::vector<int>& x) {
    const SignedGraph& g = ctx.inst.graph;
    if (b >= ctx.blocks.blocks.size()) throw RuleNotApplicable("rule 8: no such block");
    if (x.size() < 2) throw RuleNotApplicable("rule 8: need at least two vertices to delete");
    auto interior = ctx.blocks.interior(b);
    for (int v : x)
        if (!std::binary_search(interior.begin(), interior.end(), v))
            throw RuleNotApplicable("rule 8: X not contained in the block interior");
    auto classes = detail::signature_classes(ctx, b);
    const detail::SignatureClass* cls = nullptr;
    for (const auto& c : classes)
        if (std::binary_search(c.members.begin(), c.members.end(), x.front())) cls = &c;
    for (int v : x)
        if (!cls || !std::binary_search(cls->members.begin(), cls->members.end(), v))
            throw RuleNotApplicable("rule 8: X vertices do not share one S-signature");
    long long q = static_cast<long long>(ctx.blocks.blocks[b].size());
    long long h = static_cast<long long>(cls->attachment_count());
    if (!(2 * static_cast<long long>(x.size()) > q + h))
        throw RuleNotApplicable("rule 8: |X| not above (|V(C)|+|N(X) cap S|)/2");
    if (q + h < 2) throw RuleNotApplicable("rule 8: (|V(C)|+|N(X) cap S|)/2 below 1");
    std::vector<int> del{x[0], x[1]};
    std::sort(del.begin(), del.end());
    if (!detail::connected_nonempty_without(g, del))
        throw RuleNotApplicable("rule 8: resulting instance would be empty or disconnected");
    auto [g_new, remap] = g.without_vertices(del);
    TraceStep step;
    step.rule = RuleId::R8;
    step.removed = del;
    step.delta_k = 0;
    return AppliedContext{detail::rebuild(ctx, g_new, ctx.inst.k, remap), std::move(step)};
}

/// Rule 9: in a block C of even size, a set X of interior vertices with no
/// S-neighbors and |X| = |V(C)|/2 allows the deletion of one vertex of X
/// with k' = k - 1.
inline AppliedContext apply_rule9(const RuleContext& ctx, std::size_t b,
                                  const std::vector<int>& x) {
    const SignedGraph& g = ctx.inst.graph;
    if (b >= ctx.blocks.blocks.size()) throw RuleNotApplicable("rule 9: no such block");
    long long q = static_cast<long long>(ctx.blocks.blocks[b].size());
    if (q % 2 != 0) throw RuleNotApplicable("rule 9: block size not even");
    if (static_cast<long long>(x.size()) != q / 2)
        throw RuleNotApplicable("rule 9: |X| is not |V(C)|/2");
    auto interior = ctx.blocks.interior(b);
    std::vector<char> in_s(g.n(), 0);
    for (int v : ctx.s) in_s[v] = 1;
    for (int v : x) {
        if (!std::binary_search(interior.begin(), interior.end(), v))
            throw RuleNotApplicable("rule 9: X not contained in the block interior");
        for (int w : g.neighbors(v))
            if (in_s[w]) throw RuleNotApplicable("rule 9: X has a neighbor in S");
    }
    int victim = *std::min_element(x.begin(), x.end());
    auto [g_new, remap] = g.without_vertices({victim});
    TraceStep step;
    step.rule = RuleId::R9;
    step.removed = {victim};
    step.delta_k = 1;
    return AppliedContext{detail::rebuild(ctx, g_new, ctx.inst.k - 1, remap), std::move(step)};
}

/// Rule 10, both branches, on a triangle block {x,y,u} whose vertex u has
/// N_G(u) = {x,y}. If {x,y} is a bridge in G - u the triangle collapses to a
/// fresh vertex z inheriting the outside neighborhoods of x and y (k
/// unchanged); otherwise u and the edge {x,y} are deleted with k' = k - 1.
inline AppliedContext apply_rule10(const RuleContext& ctx, std::size_t b, int u) {
    const SignedGraph& g = ctx.inst.graph;
    if (b >= ctx.blocks.blocks.size()) throw RuleNotApplicable("rule 10: no such block");
    const auto& blk = ctx.blocks.blocks[b];
    if (blk.size() != 3) throw RuleNotApplicable("rule 10: block does not have 3 vertices");
    if (!std::binary_search(blk.begin(), blk.end(), u))
        throw RuleNotApplicable("rule 10: u not in the block");
    std::vector<int> xy;
    for (int v : blk)
        if (v != u) xy.push_back(v);
    int x = xy[0], y = xy[1];
    if (g.neighbors(u) != xy) throw RuleNotApplicable("rule 10: N_G(u) is not {x,y}");

    auto [g_no_u, remap_u] = g.without_vertices({u});
    if (detail::edge_is_bridge(g_no_u, remap_u[x], remap_u[y])) {
        std::vector<int> del{x, y, u};
        std::sort(del.begin(), del.end());
        auto [g_new, remap] = g.without_vertices(del);
        std::vector<std::pair<int, Sign>> attach;
        for (Sign s : {Sign::negative, Sign::positive}) {
            std::vector<int> targets;
            for (int src : {x, y})
                for (auto [w, sg] : g.adjacency(src))
                    if (sg == s && w != u && w != x && w != y) targets.push_back(remap[w]);
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            for (int w : targets) attach.emplace_back(w, s);
        }
        SignedGraph g_z = g_new.with_added_vertex(attach);
        TraceStep step;
        step.rule = RuleId::R10a;
        step.removed = del;
        step.added = attach;
        step.delta_k = 0;
        return AppliedContext{detail::rebuild(ctx, g_z, ctx.inst.k, remap), std::move(step)};
    }
    Edge cut_edge = make_edge(x, y, Sign::negative);
    SignedGraph g_mid = g.without_edges({cut_edge});
    auto [g_new, remap] = g_mid.without_vertices({u});
    TraceStep step;
    step.rule = RuleId::R10b;
    step.removed_edges = {cut_edge};
    step.removed = {u};
    step.delta_k = 1;
    return AppliedContext{detail::rebuild(ctx, g_new, ctx.inst.k - 1, remap), std::move(step)};
}

/// Rule 11: a component T of G - S adjacent to exactly one vertex s of S is
/// deleted whole; the parameter drops by p where beta(G[T+s]) = pt + p/4,
/// computed through the weighted max-cut encoding solved on the clique
/// forest.
inline AppliedContext apply_rule11(const RuleContext& ctx, int comp_rep, int s_vertex) {
    const SignedGraph& g = ctx.inst.graph;
    auto comps = connected_components(g, ctx.s);
    const std::vector<int>* t_set = nullptr;
    for (const auto& c : comps)
        if (std::binary_search(c.begin(), c.end(), comp_rep)) t_set = &c;
    if (!t_set) throw RuleNotApplicable("rule 11: no component contains the representative");
    std::vector<char> in_t(g.n(), 0);
    for (int v : *t_set) in_t[v] = 1;
    std::vector<int> s_adj;
    for (int s : ctx.s) {
        for (int w : g.neighbors(s))
            if (in_t[w]) {
                s_adj.push_back(s);
                break;
            }
    }
    if (s_adj.size() != 1 || s_adj.front() != s_vertex)
        throw RuleNotApplicable("rule 11: component is not adjacent to exactly {s}");

    auto [t_graph, remap] = g.induced(*t_set);
    std::vector<long long> w1(t_graph.n(), 0), w2(t_graph.n(), 0);
    long long s_edges = 0;
    for (auto [w, sg] : g.adjacency(s_vertex))
        if (in_t[w]) {
            ++s_edges;
            (sg == Sign::positive ? w1 : w2)[remap[w]] = 1;
        }
    long long value = mcwv_clique_forest(t_graph, w1, w2);
    long long m_sub = t_graph.m() + s_edges;
    long long n_sub = t_graph.n() + 1;
    long long p = 4 * value - (2 * m_sub + n_sub - 1);
    if (p < 0) throw std::logic_error("rule 11: negative slack, oracle disagreement");
    auto [g_new, remap_g] = g.without_vertices(*t_set);
    TraceStep step;
    step.rule = RuleId::R11;
    step.removed = *t_set;
    step.delta_k = p;
    return AppliedContext{detail::rebuild(ctx, g_new, ctx.inst.k - p, remap_g), std::move(step)};
}

/// A concrete applicable rule instance found by the deterministic scan.
struct Applicability {
    RuleId rule = RuleId::R8;
    std::size_t block = 0;
    std::vector<int> x;   // R8/R9
    int u = -1;           // R10
    int comp_rep = -1;    // R11
    int s_vertex = -1;    // R11
};

/// Deterministically finds the first applicable rule instance in the order
/// R8 -> R9 -> R10 -> R11, scanning blocks and components by ascending
/// smallest vertex id. Candidate X sets for R8 are whole S-signature
/// classes; for R9, the smallest |V(C)|/2 ids of the S-free class.
inline std::optional<Applicability> find_applicable(const RuleContext& ctx) {
    const SignedGraph& g = ctx.inst.graph;
    for (std::size_t b = 0; b < ctx.blocks.blocks.size(); ++b) {
        long long q = static_cast<long long>(ctx.blocks.blocks[b].size());
        for (const auto& cls : detail::signature_classes(ctx, b)) {
            long long h = static_cast<long long>(cls.attachment_count());
            if (2 * static_cast<long long>(cls.members.size()) > q + h && q + h >= 2) {
                std::vector<int> del{cls.members[0], cls.members[1]};
                if (detail::connected_nonempty_without(g, del))
                    return Applicability{RuleId::R8, b, cls.members, -1, -1, -1};
            }
        }
    }
    for (std::size_t b = 0; b < ctx.blocks.blocks.size(); ++b) {
        long long q = static_cast<long long>(ctx.blocks.blocks[b].size());
        if (q % 2 != 0) continue;
        for (const auto& cls : detail::signature_classes(ctx, b)) {
            if (!cls.pos.empty() || !cls.neg.empty()) continue;
            if (static_cast<long long>(cls.members.size()) >= q / 2) {
                std::vector<int> x(cls.members.begin(), cls.members.begin() + q / 2);
                return Applicability{RuleId::R9, b, std::move(x), -1, -1, -1};
            }
        }
    }
    for (std::size_t b = 0; b < ctx.blocks.blocks.size(); ++b) {
        const auto& blk = ctx.blocks.blocks[b];
        if (blk.size() != 3) continue;
        for (int u : blk) {
            std::vector<int> xy;
            for (int v : blk)
                if (v != u) xy.push_back(v);
            if (g.neighbors(u) == xy) {
                auto [g_no_u, remap_u] = g.without_vertices({u});
                RuleId branch = detail::edge_is_bridge(g_no_u, remap_u[xy[0]], remap_u[xy[1]])
                                    ? RuleId::R10a
                                    : RuleId::R10b;
                return Applicability{branch, b, {}, u, -1, -1};
            }
        }
    }
    if (!ctx.s.empty()) {
        std::vector<char> in_s(g.n(), 0);
        for (int v : ctx.s) in_s[v] = 1;
        for (const auto& comp : connected_components(g, ctx.s)) {
            std::vector<int> s_adj;
            for (int s : ctx.s) {
                for (int w : g.neighbors(s))
                    if (std::binary_search(comp.begin(), comp.end(), w)) {
                        s_adj.push_back(s);
                        break;
                    }
            }
            if (s_adj.size() == 1)
                return Applicability{RuleId::R11, 0, {}, -1, comp.front(), s_adj.front()};
        }
    }
    return std::nullopt;
}

inline AppliedContext apply(const RuleContext& ctx, const Applicability& a) {
    switch (a.rule) {
        case RuleId::R8: return apply_rule8(ctx, a.block, a.x);
        case RuleId::R9: return apply_rule9(ctx, a.block, a.x);
        case RuleId::R10a:
        case RuleId::R10b: return apply_rule10(ctx, a.block, a.u);
        case RuleId::R11: return apply_rule11(ctx, a.comp_rep, a.s_vertex);
        default: throw std::logic_error("apply: not a two-way rule");
    }
}

}  // namespace sgmc
