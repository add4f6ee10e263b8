#pragma once

#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "sgmc/blocks.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/oracle.hpp"

namespace sgmc {

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Max Cut with Weighted Vertices, brute force: maximize over f: V -> {1,2}
///   sum_{edges} |f(x)-f(y)| + sum_{f(x)=1} w1(x) + sum_{f(x)=2} w2(x).
/// Edges count cut contributions regardless of sign; a parallel +/- pair
/// contributes twice.
inline long long mcwv_exact(const SignedGraph& g, const std::vector<long long>& w1,
                            const std::vector<long long>& w2, int cap = default_oracle_cap()) {
    const int n = g.n();
    if (n > cap)
        throw OracleCapError("mcwv_exact: n = " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    if (n == 0) return 0;
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::uint64_t s2 = 0;
    long long value = std::accumulate(w1.begin(), w1.end(), 0LL);
    long long best = value;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        int bit = std::countr_zero(i);
        int v = n - 1 - bit;
        std::uint64_t vb = std::uint64_t{1} << v;
        std::uint64_t opp = (s2 & vb) ? (full & ~s2) : s2;
        long long cut_before =
            std::popcount(g.pos_mask(v) & opp) + std::popcount(g.neg_mask(v) & opp);
        bool to_side2 = !(s2 & vb);
        s2 ^= vb;
        opp = (s2 & vb) ? (full & ~s2) : s2;
        long long cut_after =
            std::popcount(g.pos_mask(v) & opp) + std::popcount(g.neg_mask(v) & opp);
        value += cut_after - cut_before;
        value += to_side2 ? w2[v] - w1[v] : w1[v] - w2[v];
        if (value > best) best = value;
    }
    return best;
}

/// MCWV on a negative clique-forest in polynomial time, by dynamic
/// programming over the block-cut tree. Within a clique of size q holding a
/// vertices on side 1 the cut contribution is a(q-a); subtree optima are
/// combined per block by choosing how many children sit on side 1.
inline long long mcwv_clique_forest(const SignedGraph& g, const std::vector<long long>& w1,
                                    const std::vector<long long>& w2) {
    if (!is_negative_clique_forest(g))
        throw StructureError("mcwv_clique_forest: input is not a negative clique-forest");
    auto d = block_decomposition(g);

    // best(v, from_block) = (value with v on side 1, value with v on side 2)
    std::function<std::pair<long long, long long>(int, int)> best = [&](int v, int from_block) {
        long long v1 = w1[v], v2 = w2[v];
        for (int b : d.vertex_blocks[v]) {
            if (b == from_block) continue;
            const auto& blk = d.blocks[b];
            long long q = static_cast<long long>(blk.size());
            std::vector<long long> base_terms, gains;
            long long base = 0;
            for (int x : blk) {
                if (x == v) continue;
                auto [x1, x2] = best(x, b);
                base += x2;
                gains.push_back(x1 - x2);
            }
            std::sort(gains.rbegin(), gains.rend());
            long long add1 = std::numeric_limits<long long>::min();
            long long add2 = add1;
            long long prefix = 0;
            for (std::size_t a1 = 0; a1 <= gains.size(); ++a1) {
                if (a1 > 0) prefix += gains[a1 - 1];
                long long sub = base + prefix;
                long long a = static_cast<long long>(a1);
                add1 = std::max(add1, (a + 1) * (q - a - 1) + sub);
                add2 = std::max(add2, a * (q - a) + sub);
            }
            v1 += add1;
            v2 += add2;
        }
        return std::make_pair(v1, v2);
    };

    long long total = 0;
    for (const auto& comp : connected_components(g)) {
        auto [r1, r2] = best(comp.front(), -1);
        total += std::max(r1, r2);
    }
    return total;
}

}  // namespace sgmc
