#pragma once

#include <bit>
#include <cstdlib>
#include <optional>
#include <vector>

#include "sgmc/blocks.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/quarter.hpp"

namespace sgmc {

struct OracleCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration cap (vertices). Override with SGMC_ORACLE_CAP.
inline int default_oracle_cap() {
    static const int cap = [] {
        if (const char* e = std::getenv("SGMC_ORACLE_CAP")) {
            int v = std::atoi(e);
            if (v > 0) return std::min(v, 62);
        }
        return 24;
    }();
    return cap;
}

/// A total bipartition assignment; side values are 1 and 2.
struct Assignment {
    std::vector<std::uint8_t> side;

    static Assignment all_one(int n) { return Assignment{std::vector<std::uint8_t>(n, 1)}; }
};

/// Number of edges consistent with the assignment: positive edges with both
/// endpoints on one side plus negative edges crossing sides.
inline long long consistent_edge_count(const SignedGraph& g, const Assignment& a) {
    long long c = 0;
    for (const auto& e : g.edges()) {
        bool same = a.side[e.u] == a.side[e.v];
        if ((e.sign == Sign::positive) == same) ++c;
    }
    return c;
}

/// The Poljak-Turzik lower bound m/2 + (n - t)/4 in quarter units.
inline QuarterValue pt(const SignedGraph& g) {
    long long t = static_cast<long long>(connected_components(g).size());
    return QuarterValue{2 * g.m() + g.n() - t};
}

struct BetaResult {
    long long beta = 0;
    Assignment assignment;
};

namespace detail {

// Scans assignment indices [begin, end) of the 2^(n-1) enumeration (vertex 0
// pinned to side 1) in gray-code order and returns the best result in that
// range. Enumeration bit b encodes vertex n-1-b, so numerically smaller gray
// values are lexicographically smaller assignments; ties keep the smaller.
inline std::pair<long long, std::uint64_t> beta_scan(const SignedGraph& g, std::uint64_t begin,
                                                     std::uint64_t end) {
    const int n = g.n();
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto side2_of = [&](std::uint64_t gray) {
        std::uint64_t s2 = 0;
        for (int v = 1; v < n; ++v)
            if ((gray >> (n - 1 - v)) & 1) s2 |= std::uint64_t{1} << v;
        return s2;
    };
    auto count_of = [&](std::uint64_t s2) {
        long long c = 0;
        for (const auto& e : g.edges()) {
            bool same = ((s2 >> e.u) & 1) == ((s2 >> e.v) & 1);
            if ((e.sign == Sign::positive) == same) ++c;
        }
        return c;
    };
    std::uint64_t gray = begin ^ (begin >> 1);
    std::uint64_t s2 = side2_of(gray);
    long long count = count_of(s2);
    long long best = count;
    std::uint64_t best_gray = gray;
    for (std::uint64_t i = begin + 1; i < end; ++i) {
        int bit = std::countr_zero(i);
        int v = n - 1 - bit;
        std::uint64_t vb = std::uint64_t{1} << v;
        std::uint64_t same = (s2 & vb) ? s2 : (full & ~s2);
        long long before = std::popcount(g.pos_mask(v) & same) +
                           std::popcount(g.neg_mask(v) & full & ~same);
        s2 ^= vb;
        gray ^= std::uint64_t{1} << bit;
        same = (s2 & vb) ? s2 : (full & ~s2);
        long long after = std::popcount(g.pos_mask(v) & same) +
                          std::popcount(g.neg_mask(v) & full & ~same);
        count += after - before;
        if (count > best || (count == best && gray < best_gray)) {
            best = count;
            best_gray = gray;
        }
    }
    return {best, best_gray};
}

}  // namespace detail

/// Maximum number of edges in a balanced subgraph, by exhaustive enumeration
/// of all 2^(n-1) bipartitions. Also returns the lexicographically smallest
/// optimal assignment. Throws OracleCapError above the cap.
inline BetaResult beta_exact(const SignedGraph& g, int cap = default_oracle_cap()) {
    const int n = g.n();
    if (n > cap)
        throw OracleCapError("beta_exact: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    if (n == 0) return {0, Assignment{}};
    auto [best, best_gray] = detail::beta_scan(g, 0, std::uint64_t{1} << (n - 1));
    Assignment a = Assignment::all_one(n);
    for (int v = 1; v < n; ++v)
        a.side[v] = 1 + static_cast<std::uint8_t>((best_gray >> (n - 1 - v)) & 1);
    return {best, std::move(a)};
}

/// Decision predicate for a connected instance: 4*beta >= 2m + (n-1) + k.
inline bool answer_exact(const SignedGraph& g, long long k, int cap = default_oracle_cap()) {
    if (!is_connected(g)) throw std::invalid_argument("answer_exact: graph not connected");
    long long beta4 = 4 * beta_exact(g, cap).beta;
    return beta4 >= 2 * g.m() + (g.n() - 1) + k;
}

/// Balance certificate: a witnessing assignment, or a cycle with an odd
/// number of negative edges.
struct BalanceResult {
    bool balanced = false;
    Assignment assignment;      // valid when balanced
    std::vector<Edge> cycle;    // closed walk, valid when unbalanced
};

inline BalanceResult is_balanced(const SignedGraph& g) {
    const int n = g.n();
    std::vector<int> color(n, -1), par(n, -1), depth(n, 0);
    std::vector<Sign> par_sign(n, Sign::negative);

    auto trace_up = [&](int from, int to_depth, std::vector<Edge>& out) {
        int v = from;
        while (depth[v] > to_depth) {
            out.push_back(make_edge(v, par[v], par_sign[v]));
            v = par[v];
        }
        return v;
    };

    for (int r = 0; r < n; ++r) {
        if (color[r] != -1) continue;
        color[r] = 0;
        std::vector<int> queue{r};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (auto [w, s] : g.adjacency(v)) {
                int want = s == Sign::positive ? color[v] : 1 - color[v];
                if (color[w] == -1) {
                    color[w] = want;
                    par[w] = v;
                    par_sign[w] = s;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if (color[w] != want) {
                    // Conflict: the tree paths to the common ancestor plus
                    // this edge close a negative cycle.
                    std::vector<Edge> up_v, up_w;
                    int a = v, b = w;
                    if (depth[a] > depth[b]) a = trace_up(a, depth[b], up_v);
                    if (depth[b] > depth[a]) b = trace_up(b, depth[a], up_w);
                    while (a != b) {
                        up_v.push_back(make_edge(a, par[a], par_sign[a]));
                        up_w.push_back(make_edge(b, par[b], par_sign[b]));
                        a = par[a];
                        b = par[b];
                    }
                    BalanceResult res;
                    res.balanced = false;
                    res.cycle.push_back(make_edge(v, w, s));
                    for (const auto& e : up_v) res.cycle.push_back(e);
                    std::reverse(up_w.begin(), up_w.end());
                    for (const auto& e : up_w) res.cycle.push_back(e);
                    return res;
                }
            }
        }
    }
    BalanceResult res;
    res.balanced = true;
    res.assignment.side.resize(n);
    for (int v = 0; v < n; ++v) res.assignment.side[v] = static_cast<std::uint8_t>(1 + color[v]);
    return res;
}

/// Both inequalities of the balanced-subgraph decomposition bound for a
/// split V = U + W of a connected graph, in quarter units:
///   4 beta(G) >= 4 beta(G[U]) + 4 beta(G[W]) + 2 |E(U,W)|
///   4 beta(G) >= 4 pt(G) + k1 + k2 - (c1 + c2 - 1)
struct LemmaBetaReport {
    long long beta_g4 = 0, beta_u4 = 0, beta_w4 = 0;
    long long cross_edges = 0;
    long long c1 = 0, c2 = 0;
    long long k1 = 0, k2 = 0;
    bool cut_form_holds = false;
    bool pt_form_holds = false;
};

inline LemmaBetaReport verify_lemma_beta(const SignedGraph& g, const std::vector<int>& u_set,
                                         int cap = default_oracle_cap()) {
    if (!is_connected(g)) throw std::invalid_argument("verify_lemma_beta: graph not connected");
    std::vector<char> in_u(g.n(), 0);
    for (int v : u_set) in_u[v] = 1;
    std::vector<int> w_set;
    for (int v = 0; v < g.n(); ++v)
        if (!in_u[v]) w_set.push_back(v);
    if (u_set.empty() || w_set.empty())
        throw std::invalid_argument("verify_lemma_beta: U must be a proper nonempty subset");

    auto [gu, map_u] = g.induced(u_set);
    auto [gw, map_w] = g.induced(w_set);
    LemmaBetaReport r;
    r.beta_g4 = 4 * beta_exact(g, cap).beta;
    r.beta_u4 = 4 * beta_exact(gu, cap).beta;
    r.beta_w4 = 4 * beta_exact(gw, cap).beta;
    for (const auto& e : g.edges())
        if (in_u[e.u] != in_u[e.v]) ++r.cross_edges;
    r.c1 = static_cast<long long>(connected_components(gu).size());
    r.c2 = static_cast<long long>(connected_components(gw).size());
    r.k1 = r.beta_u4 - pt(gu).q;
    r.k2 = r.beta_w4 - pt(gw).q;
    r.cut_form_holds = r.beta_g4 >= r.beta_u4 + r.beta_w4 + 2 * r.cross_edges;
    r.pt_form_holds = r.beta_g4 >= pt(g).q + r.k1 + r.k2 - (r.c1 + r.c2 - 1);
    return r;
}

}  // namespace sgmc
