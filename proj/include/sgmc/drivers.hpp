#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgmc/decompose.hpp"
#include "sgmc/io.hpp"
#include "sgmc/kernel_rules.hpp"
#include "sgmc/partition.hpp"

namespace sgmc {

struct BoundCheck {
    std::string name;
    long long threshold = 0;
    long long observed = 0;
    bool triggered = false;
};

/// Yes-threshold from the interior attachment sum over blocks of G - S:
/// sum >= |S|(2|S| - 3 + 2k) + 1 certifies a Yes-instance. Degenerate
/// evaluation with empty S is guarded off.
inline BoundCheck check_interior_attachment_threshold(long long s_size, long long k,
                                                      long long attachment_sum) {
    long long threshold = s_size * (2 * s_size - 3 + 2 * k) + 1;
    return BoundCheck{"interior-attachment", threshold, attachment_sum,
                      s_size >= 1 && attachment_sum >= threshold};
}

/// Yes-threshold per block: |V(C)| >= 2|C_ext| + |N_G(C_int) cap S|(2|S|+2k+1).
/// Requires a non-empty S and a positive attachment, matching the lemma's
/// structural premises; blocks without S-attachment are reduced by the rules
/// instead.
inline BoundCheck check_block_size_threshold(long long block_size, long long ext_size,
                                             long long attachment, long long s_size, long long k) {
    long long threshold = 2 * ext_size + attachment * (2 * s_size + 2 * k + 1);
    return BoundCheck{"block-size", threshold, block_size,
                      s_size >= 1 && attachment >= 1 && block_size >= threshold};
}

/// Yes-threshold from path vertices: with p the number of path vertices in
/// components of G[P] having at least 3 vertices, p/3 - 192k^2 + 1 >= k
/// certifies a Yes-instance, i.e. p >= 576k^2 + 3k - 3.
inline BoundCheck check_path_vertex_budget(long long p_scoped, long long k) {
    long long threshold = 576 * k * k + 3 * k - 3;
    return BoundCheck{"path-budget", threshold, p_scoped, p_scoped >= threshold && threshold >= 1};
}

struct KernelCounters {
    long long non_path_blocks = 0;
    long long path_vertices = 0;
    long long path_vertices_scoped = 0;  // in components of G[P] with >= 3 vertices
    long long exterior_union = 0;        // distinct exterior vertices of non-path blocks
    long long attachment_sum = 0;        // sum over blocks of |N_G(C_int) cap S|
    long long s_free_components = 0;
    long long free_vertex_deletions = 0;
    bool parallel_pairs = false;
};

struct ClassSpec {
    enum class Family { general, split, rl, dsplit };
    Family family = Family::general;
    long long r = 0, l = 0;  // rl
    long long d = 0;         // dsplit
    std::optional<Partition> planted;

    static ClassSpec general() { return {}; }
    static ClassSpec split(std::optional<Partition> planted = std::nullopt) {
        return ClassSpec{Family::split, 1, 1, 0, std::move(planted)};
    }
    static ClassSpec rl(long long r, long long l, std::optional<Partition> planted = std::nullopt) {
        return ClassSpec{Family::rl, r, l, 0, std::move(planted)};
    }
    static ClassSpec dsplit(long long d, std::optional<Partition> planted = std::nullopt) {
        return ClassSpec{Family::dsplit, 0, 0, d, std::move(planted)};
    }
};

struct KernelReport {
    enum class Outcome { yes, kernel };
    Outcome outcome = Outcome::kernel;
    std::string yes_reason;  // "decompose-credit", "k<=0", or a threshold name
    std::optional<Instance> kernel;
    RuleTrace trace;  // decompose certificate on decompose-YES, else the rule trace
    std::vector<int> s_set;
    long long s_size = 0;
    KernelCounters counters;
    std::vector<BoundCheck> bound_checks;
};

namespace detail {

inline long long block_attachment(const RuleContext& ctx, std::size_t b) {
    std::vector<char> in_s(ctx.inst.graph.n(), 0);
    for (int v : ctx.s) in_s[v] = 1;
    std::vector<int> att;
    for (int v : ctx.blocks.interior(b))
        for (int w : ctx.inst.graph.neighbors(v))
            if (in_s[w]) att.push_back(w);
    std::sort(att.begin(), att.end());
    att.erase(std::unique(att.begin(), att.end()), att.end());
    return static_cast<long long>(att.size());
}

inline KernelCounters compute_counters(const RuleContext& ctx) {
    KernelCounters c;
    const auto& d = ctx.blocks;
    std::vector<int> ext_union;
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        if (!d.path_block[b]) {
            ++c.non_path_blocks;
            for (int v : d.blocks[b])
                if (d.is_cut[v]) ext_union.push_back(v);
        }
        c.attachment_sum += block_attachment(ctx, b);
    }
    std::sort(ext_union.begin(), ext_union.end());
    ext_union.erase(std::unique(ext_union.begin(), ext_union.end()), ext_union.end());
    c.exterior_union = static_cast<long long>(ext_union.size());
    c.path_vertices = static_cast<long long>(d.path_vertices.size());
    if (!d.path_vertices.empty()) {
        auto [gp, remap] = ctx.inst.graph.induced(d.path_vertices);
        for (const auto& comp : connected_components(gp))
            if (comp.size() >= 3) c.path_vertices_scoped += static_cast<long long>(comp.size());
    }
    if (!ctx.s.empty()) {
        std::vector<char> in_s(ctx.inst.graph.n(), 0);
        for (int v : ctx.s) in_s[v] = 1;
        for (const auto& comp : connected_components(ctx.inst.graph, ctx.s)) {
            bool attached = false;
            for (int v : comp)
                for (int w : ctx.inst.graph.neighbors(v))
                    if (in_s[w]) attached = true;
            if (!attached) ++c.s_free_components;
        }
    }
    c.parallel_pairs = ctx.inst.graph.has_parallel_pair();
    return c;
}

}  // namespace detail

/// Asserts the class-specific kernel size bound; returns the bound check.
/// Violations indicate an implementation bug or a mis-planted class and are
/// raised as logic errors.
inline BoundCheck assert_kernel_size(const KernelReport& report, const ClassSpec& spec,
                                     long long k) {
    if (report.outcome != KernelReport::Outcome::kernel)
        throw std::invalid_argument("assert_kernel_size: report has no kernel");
    long long n = report.kernel->graph.n();
    long long bound = 0;
    std::string name;
    switch (spec.family) {
        case ClassSpec::Family::split:
            bound = 168 * k * k - 48 * k;
            name = "kernel-size-split";
            break;
        case ClassSpec::Family::rl:
            bound = 3 * k + (2 * spec.r + 9 * spec.l) * 3 * k * (8 * k + 1) +
                    18 * k * (8 * k - 3) + (576 * k * k + 3 * k - 3);
            name = "kernel-size-rl";
            break;
        case ClassSpec::Family::dsplit:
            bound = 4 * (spec.d + 1) * k - 1;
            name = "kernel-size-dsplit";
            break;
        case ClassSpec::Family::general:
            throw std::invalid_argument("assert_kernel_size: no bound for the general class");
    }
    BoundCheck check{name, bound, n, n > bound};
    if (check.triggered)
        throw std::logic_error("kernel size bound violated: " + name + " observed " +
                               std::to_string(n) + " > " + std::to_string(bound));
    return check;
}

/// Full kernelization pipeline: the one-way decomposition phase either
/// certifies Yes or yields S; the two-way rules then rewrite the original
/// instance relative to S until exhaustion, interleaved with the
/// Yes-threshold checks. k <= 0 at any point is a Yes.
inline KernelReport kernelize(const Instance& inst, const ClassSpec& spec = ClassSpec::general(),
                              int cap = default_oracle_cap()) {
    if (!is_connected(inst.graph)) throw std::invalid_argument("kernelize: graph not connected");
    if (inst.k < 1) throw std::invalid_argument("kernelize: k must be at least 1");
    if (inst.graph.has_parallel_pair())
        throw std::invalid_argument(
            "kernelize: parallel opposite-sign pairs are not valid problem instances");
    if (spec.planted) {
        if (spec.family == ClassSpec::Family::dsplit)
            verify_dsplit_partition(inst.graph, spec.planted->cliques.at(0),
                                    spec.planted->independent_sets.at(0), spec.d);
        else
            verify_partition(inst.graph, *spec.planted);
    }

    KernelReport report;
    auto outcome = decompose(inst, cap);
    if (outcome.yes) {
        report.outcome = KernelReport::Outcome::yes;
        report.yes_reason = "decompose-credit";
        report.trace = std::move(outcome.trace);
        return report;
    }

    // The two-way rules rewrite the original instance relative to S, after
    // the answer-preserving sign normalization chosen by the decomposition.
    Instance work = inst;
    RuleTrace trace;
    if (!outcome.switch_set.empty()) {
        work.graph = work.graph.switched(outcome.switch_set);
        TraceStep step;
        step.rule = RuleId::Switch;
        step.switched = outcome.switch_set;
        step.delta_k = 0;
        trace.push_back(std::move(step));
    }
    RuleContext ctx = RuleContext::make(work, outcome.s_set);
    report.s_set = outcome.s_set;
    report.s_size = static_cast<long long>(outcome.s_set.size());

    // Pre-pass: S-free isolated vertices of G - S contribute nothing and are
    // deleted with k unchanged. On connected inputs this never fires.
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& comp : connected_components(ctx.inst.graph, ctx.s)) {
                if (comp.size() != 1 || ctx.inst.graph.n() < 2) continue;
                int v = comp.front();
                if (ctx.inst.graph.degree(v) != 0) continue;
                TraceStep step;
                step.rule = RuleId::FreeVertex;
                step.removed = {v};
                step.delta_k = 0;
                auto [g_new, remap] = ctx.inst.graph.without_vertices({v});
                std::vector<int> s_new;
                for (int s : ctx.s)
                    if (remap[s] != -1) s_new.push_back(remap[s]);
                ctx = RuleContext::make(Instance{g_new, ctx.inst.k}, s_new);
                trace.push_back(std::move(step));
                ++report.counters.free_vertex_deletions;
                changed = true;
                break;
            }
        }
    }

    auto finish_yes = [&](const std::string& reason, std::vector<BoundCheck> checks) {
        report.outcome = KernelReport::Outcome::yes;
        report.yes_reason = reason;
        report.trace = std::move(trace);
        report.bound_checks = std::move(checks);
        return report;
    };

    long long free_deletions = report.counters.free_vertex_deletions;
    bool saw_parallel = inst.graph.has_parallel_pair();
    while (true) {
        saw_parallel = saw_parallel || ctx.inst.graph.has_parallel_pair();
        if (ctx.inst.k <= 0) return finish_yes("k<=0", {});
        auto applicable = find_applicable(ctx);
        if (!applicable) break;
        auto applied = apply(ctx, *applicable);
        ctx = std::move(applied.ctx);
        trace.push_back(std::move(applied.step));
    }

    // Yes-thresholds hold for instances reduced under all two-way rules, so
    // they are evaluated only once no rule applies.
    {
        KernelCounters counters = detail::compute_counters(ctx);
        auto a_check =
            check_interior_attachment_threshold(static_cast<long long>(ctx.s.size()),
                                                ctx.inst.k, counters.attachment_sum);
        if (a_check.triggered) return finish_yes("interior-attachment", {a_check});
        for (std::size_t b = 0; b < ctx.blocks.blocks.size(); ++b) {
            auto b_check = check_block_size_threshold(
                static_cast<long long>(ctx.blocks.blocks[b].size()),
                static_cast<long long>(ctx.blocks.exterior(b).size()),
                detail::block_attachment(ctx, b), static_cast<long long>(ctx.s.size()),
                ctx.inst.k);
            if (b_check.triggered) return finish_yes("block-size", {b_check});
        }
        auto p_check = check_path_vertex_budget(counters.path_vertices_scoped, ctx.inst.k);
        if (p_check.triggered) return finish_yes("path-budget", {p_check});
    }

    report.outcome = KernelReport::Outcome::kernel;
    report.kernel = ctx.inst;
    report.trace = std::move(trace);
    report.counters = detail::compute_counters(ctx);
    report.counters.free_vertex_deletions = free_deletions;
    report.counters.parallel_pairs = saw_parallel;

    long long k = ctx.inst.k;
    long long s_size = static_cast<long long>(ctx.s.size());
    report.bound_checks.push_back(
        check_interior_attachment_threshold(s_size, k, report.counters.attachment_sum));
    report.bound_checks.push_back(check_path_vertex_budget(report.counters.path_vertices_scoped, k));
    report.bound_checks.push_back(BoundCheck{"attachment-sum-bound", 3 * k * (8 * k - 3),
                                             report.counters.attachment_sum,
                                             report.counters.attachment_sum > 3 * k * (8 * k - 3)});
    report.bound_checks.push_back(BoundCheck{"non-path-blocks-bound", 6 * k * (8 * k - 3),
                                             report.counters.non_path_blocks,
                                             report.counters.non_path_blocks > 6 * k * (8 * k - 3)});
    report.bound_checks.push_back(BoundCheck{"exterior-union-bound", 12 * k * (8 * k - 3),
                                             report.counters.exterior_union,
                                             report.counters.exterior_union > 12 * k * (8 * k - 3)});
    report.bound_checks.push_back(
        BoundCheck{"path-vertices-bound", 24 * k * k * (8 * k - 3), report.counters.path_vertices,
                   report.counters.path_vertices > 24 * k * k * (8 * k - 3)});
    if (spec.family == ClassSpec::Family::split || spec.family == ClassSpec::Family::rl) {
        if (spec.planted) report.bound_checks.push_back(assert_kernel_size(report, spec, inst.k));
    }
    return report;
}

/// The d*-split linear kernel: if n >= 4(d+1)k the instance is a
/// Yes-instance, otherwise the input itself is the kernel.
inline KernelReport linear_kernel_dsplit(const Instance& inst, long long d,
                                         const std::optional<Partition>& planted = std::nullopt) {
    if (!is_connected(inst.graph))
        throw std::invalid_argument("linear_kernel_dsplit: graph not connected");
    if (inst.graph.has_parallel_pair())
        throw std::invalid_argument(
            "linear_kernel_dsplit: parallel opposite-sign pairs are not valid problem instances");
    if (planted)
        verify_dsplit_partition(inst.graph, planted->cliques.at(0),
                                planted->independent_sets.at(0), d);
    KernelReport report;
    long long threshold = 4 * (d + 1) * inst.k;
    BoundCheck check{"dsplit-threshold", threshold, inst.graph.n(), inst.graph.n() >= threshold};
    report.bound_checks.push_back(check);
    if (check.triggered) {
        report.outcome = KernelReport::Outcome::yes;
        report.yes_reason = "dsplit-threshold";
        return report;
    }
    report.outcome = KernelReport::Outcome::kernel;
    report.kernel = inst;
    return report;
}

struct CertificateFailure : std::runtime_error {
    std::string state_dump;
    CertificateFailure(const std::string& what, std::string dump)
        : std::runtime_error("certificate procedure failed: " + what),
          state_dump(std::move(dump)) {}
};

namespace detail {

struct TrackedSplit {
    Instance inst;
    std::vector<char> in_k, in_i;  // by current vertex id

    void remap(const std::vector<int>& map, const SignedGraph& g_new) {
        std::vector<char> nk(g_new.n(), 0), ni(g_new.n(), 0);
        for (std::size_t v = 0; v < map.size(); ++v)
            if (map[v] != -1) {
                nk[map[v]] = in_k[v];
                ni[map[v]] = in_i[v];
            }
        in_k = std::move(nk);
        in_i = std::move(ni);
    }

    std::vector<int> i_neighbors(int v) const {
        std::vector<int> out;
        for (int w : inst.graph.neighbors(v))
            if (in_i[w]) out.push_back(w);
        return out;
    }
};

}  // namespace detail

/// Yes-certificate for d*-split instances with |K| >= (d+1)k: a trace of
/// star-rule and pendant-rule applications reaching k' <= 0. Follows the
/// four-step procedure: collapse clique vertices with >= 2 independent-set
/// neighbors, delete pendants exhaustively, then collapse {v, u, w} triples
/// where u is v's only independent-set neighbor and w is a clique vertex
/// non-adjacent to u.
inline RuleTrace certificate_clique_side(const Instance& inst, const std::vector<int>& k_side,
                                         const std::vector<int>& i_side, long long d) {
    verify_dsplit_partition(inst.graph, k_side, i_side, d);
    if (static_cast<long long>(k_side.size()) < (d + 1) * inst.k)
        throw RuleNotApplicable("clique-side certificate: |K| below (d+1)k");

    detail::TrackedSplit cur;
    cur.inst = inst;
    cur.in_k.assign(inst.graph.n(), 0);
    cur.in_i.assign(inst.graph.n(), 0);
    for (int v : k_side) cur.in_k[v] = 1;
    for (int v : i_side) cur.in_i[v] = 1;

    RuleTrace trace;
    auto run = [&](Applied ap) {
        auto map = cur.inst.graph.without_vertices(ap.step.removed).second;
        cur.remap(map, ap.inst.graph);
        cur.inst = std::move(ap.inst);
        trace.push_back(std::move(ap.step));
    };

    while (cur.inst.k > 0) {
        bool progressed = false;
        // Step 1: a clique vertex with c >= 2 independent-set neighbors.
        for (int v = 0; v < cur.inst.graph.n() && !progressed; ++v) {
            if (!cur.in_k[v]) continue;
            auto leaves = cur.i_neighbors(v);
            while (leaves.size() >= 2) {
                std::vector<int> del = leaves;
                del.push_back(v);
                std::sort(del.begin(), del.end());
                if (detail::connected_nonempty_without(cur.inst.graph, del)) {
                    run(apply_rule6plus(cur.inst, v, leaves));
                    progressed = true;
                    break;
                }
                leaves.pop_back();
            }
        }
        if (progressed) continue;
        // Step 2: pendants.
        for (int v = 0; v < cur.inst.graph.n() && !progressed; ++v) {
            if (cur.inst.graph.n() >= 2 && cur.inst.graph.degree(v) == 1) {
                run(apply_ruleA(cur.inst, v));
                progressed = true;
            }
        }
        if (progressed) continue;
        // Step 3: a clique vertex with exactly one independent-set neighbor.
        for (int v = 0; v < cur.inst.graph.n() && !progressed; ++v) {
            if (!cur.in_k[v]) continue;
            auto ni = cur.i_neighbors(v);
            if (ni.size() != 1) continue;
            int u = ni.front();
            for (int w = 0; w < cur.inst.graph.n(); ++w) {
                if (w == v || !cur.in_k[w] || cur.inst.graph.adjacent(u, w)) continue;
                std::vector<int> del{v, u, w};
                std::sort(del.begin(), del.end());
                if (!detail::connected_nonempty_without(cur.inst.graph, del)) continue;
                run(apply_rule6plus(cur.inst, v, {u, w}));
                progressed = true;
                break;
            }
        }
        if (!progressed)
            throw CertificateFailure("clique-side procedure stalled with k' > 0",
                                     graph_to_string(cur.inst.graph));
    }
    return trace;
}

/// Yes-certificate for d*-split instances with |I_h| >= 2dk, where I_h is
/// the independent-set neighborhood of the clique vertices having >= 2
/// independent-set neighbors. Iterates the star rule with the bookkeeping
/// sets D_K, D_I and checks the per-step bounds |D_K| <= (d-1)c and
/// |I_h| - |I_h'| <= dc.
inline RuleTrace certificate_independent_side(const Instance& inst, const std::vector<int>& k_side,
                                              const std::vector<int>& i_side, long long d) {
    verify_dsplit_partition(inst.graph, k_side, i_side, d);
    std::vector<char> in_i(inst.graph.n(), 0);
    for (int v : i_side) in_i[v] = 1;

    std::vector<char> kh(inst.graph.n(), 0), ih(inst.graph.n(), 0);
    long long ih_size = 0;
    for (int v : k_side) {
        int cnt = 0;
        for (int w : inst.graph.neighbors(v)) cnt += in_i[w];
        if (cnt >= 2) kh[v] = 1;
    }
    for (int v = 0; v < inst.graph.n(); ++v)
        if (kh[v])
            for (int w : inst.graph.neighbors(v))
                if (in_i[w] && !ih[w]) {
                    ih[w] = 1;
                    ++ih_size;
                }
    if (ih_size < 2 * d * inst.k)
        throw RuleNotApplicable("independent-side certificate: |I_h| below 2dk");

    Instance cur = inst;
    std::vector<char> cur_kh = kh, cur_ih = ih;
    RuleTrace trace;
    long long credit = 0;

    while (credit < inst.k) {
        long long cur_ih_size = 0;
        for (int v = 0; v < cur.graph.n(); ++v) cur_ih_size += cur_ih[v];
        if (cur_ih_size == 0) break;
        int vi = -1;
        for (int v = 0; v < cur.graph.n() && vi == -1; ++v)
            if (cur_kh[v]) vi = v;
        if (vi == -1)
            throw CertificateFailure("independent-side: tracked I_h non-empty but K_h empty",
                                     graph_to_string(cur.graph));
        std::vector<int> big_n;
        for (int w : cur.graph.neighbors(vi))
            if (cur_ih[w]) big_n.push_back(w);
        long long c = static_cast<long long>(big_n.size());
        if (c < 2)
            throw CertificateFailure("independent-side: chosen vertex has fewer than 2 tracked "
                                     "neighbors",
                                     graph_to_string(cur.graph));

        std::vector<char> in_n(cur.graph.n(), 0);
        for (int w : big_n) in_n[w] = 1;
        std::vector<int> dk;
        for (int v = 0; v < cur.graph.n(); ++v) {
            if (!cur_kh[v] || v == vi) continue;
            int cnt = 0;
            for (int w : cur.graph.neighbors(v))
                if (cur_ih[w] && !in_n[w]) ++cnt;
            if (cnt <= 1) dk.push_back(v);
        }
        if (static_cast<long long>(dk.size()) > (d - 1) * c)
            throw CertificateFailure("independent-side: |D_K| exceeds (d-1)c",
                                     graph_to_string(cur.graph));
        std::vector<char> in_dk(cur.graph.n(), 0);
        for (int v : dk) in_dk[v] = 1;
        std::vector<int> di;
        for (int v : dk)
            for (int w : cur.graph.neighbors(v))
                if (cur_ih[w] && !in_n[w]) di.push_back(w);
        std::sort(di.begin(), di.end());
        di.erase(std::unique(di.begin(), di.end()), di.end());
        if (di.size() > dk.size())
            throw CertificateFailure("independent-side: |D_I| exceeds |D_K|",
                                     graph_to_string(cur.graph));

        std::vector<char> next_kh = cur_kh, next_ih = cur_ih;
        next_kh[vi] = 0;
        for (int v : dk) next_kh[v] = 0;
        for (int w : di)
            for (int v : cur.graph.neighbors(w))
                if (cur_kh[v]) next_kh[v] = 0;
        for (int w : big_n) next_ih[w] = 0;
        for (int w : di) next_ih[w] = 0;
        long long next_ih_size = 0;
        for (int v = 0; v < cur.graph.n(); ++v) next_ih_size += next_ih[v];
        if (cur_ih_size - next_ih_size > d * c)
            throw CertificateFailure("independent-side: I_h shrank by more than dc",
                                     graph_to_string(cur.graph));

        Applied ap = apply_rule6plus(cur, vi, big_n);
        auto map = cur.graph.without_vertices(ap.step.removed).second;
        std::vector<char> rk(ap.inst.graph.n(), 0), ri(ap.inst.graph.n(), 0);
        for (int v = 0; v < cur.graph.n(); ++v)
            if (map[v] != -1) {
                rk[map[v]] = next_kh[v];
                ri[map[v]] = next_ih[v];
            }
        cur_kh = std::move(rk);
        cur_ih = std::move(ri);
        credit += ap.step.delta_k;
        cur = std::move(ap.inst);
        trace.push_back(std::move(ap.step));
    }
    if (credit < inst.k)
        throw CertificateFailure("independent-side: total credit below k",
                                 graph_to_string(cur.graph));
    return trace;
}

}  // namespace sgmc
