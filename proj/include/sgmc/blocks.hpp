#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "sgmc/graph.hpp"

namespace sgmc {

/// Connected components of G minus an excluded vertex set, ignoring signs.
/// Components are ordered by smallest member and internally sorted.
inline std::vector<std::vector<int>> connected_components(const SignedGraph& g,
                                                          const std::vector<int>& excluded = {}) {
    std::vector<char> skip(g.n(), 0);
    for (int v : excluded) skip[v] = 1;
    std::vector<char> seen(g.n(), 0);
    std::vector<std::vector<int>> comps;
    for (int r = 0; r < g.n(); ++r) {
        if (skip[r] || seen[r]) continue;
        std::vector<int> comp, stack{r};
        seen[r] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!skip[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const SignedGraph& g) {
    return connected_components(g).size() <= 1;
}

/// Blocks, cut vertices and the block classification of G - S used by the
/// reduction rules. Vertex ids refer to G; members of S belong to no block.
///
/// Blocks are the 2-connected components and bridge edges of G - S, plus a
/// singleton block per isolated vertex of G - S. A vertex is interior to a
/// block iff all its G - S neighbors lie inside it, which for this block
/// structure is equivalent to not being a cut vertex of G - S.
struct BlockDecomposition {
    std::vector<std::vector<int>> blocks;        // sorted, ordered by smallest member
    std::vector<int> cut_vertices;               // sorted
    std::vector<std::vector<int>> vertex_blocks; // per vertex: block indices (empty on S)
    std::vector<char> is_cut;                    // per vertex
    std::vector<char> path_block;                // per block
    std::vector<char> leaf_block;                // per block
    std::vector<int> depth;                      // per block, BFS depth in the block tree
    std::vector<int> path_vertices;              // sorted

    const std::vector<int>& block(std::size_t b) const { return blocks[b]; }

    std::vector<int> interior(std::size_t b) const {
        std::vector<int> out;
        for (int v : blocks[b])
            if (!is_cut[v]) out.push_back(v);
        return out;
    }

    std::vector<int> exterior(std::size_t b) const {
        std::vector<int> out;
        for (int v : blocks[b])
            if (is_cut[v]) out.push_back(v);
        return out;
    }
};

inline BlockDecomposition block_decomposition(const SignedGraph& g,
                                              const std::vector<int>& s_set = {}) {
    const int n = g.n();
    std::vector<char> in_s(n, 0);
    for (int v : s_set) in_s[v] = 1;

    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    std::vector<std::pair<int, int>> estk;
    std::vector<std::vector<int>> raw_blocks;

    struct Frame {
        int v, parent;
        std::size_t i = 0;
        bool parent_skipped = false;
    };

    auto flush_block = [&](int pv, int cv) {
        std::vector<int> verts;
        while (!estk.empty()) {
            auto [a, b] = estk.back();
            estk.pop_back();
            verts.push_back(a);
            verts.push_back(b);
            if (a == pv && b == cv) break;
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        raw_blocks.push_back(std::move(verts));
    };

    std::vector<Frame> st;
    for (int r = 0; r < n; ++r) {
        if (in_s[r] || disc[r] != -1) continue;
        bool isolated = true;
        for (int w : g.neighbors(r))
            if (!in_s[w]) isolated = false;
        if (isolated) {
            disc[r] = timer++;
            raw_blocks.push_back({r});
            continue;
        }
        disc[r] = low[r] = timer++;
        st.push_back(Frame{r, -1});
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& nb = g.neighbors(f.v);
            if (f.i < nb.size()) {
                int w = nb[f.i++];
                if (in_s[w]) continue;
                if (w == f.parent && !f.parent_skipped) {
                    f.parent_skipped = true;
                    continue;
                }
                if (disc[w] == -1) {
                    estk.emplace_back(f.v, w);
                    disc[w] = low[w] = timer++;
                    st.push_back(Frame{w, f.v});
                } else if (disc[w] < disc[f.v]) {
                    estk.emplace_back(f.v, w);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                st.pop_back();
                if (!st.empty()) {
                    Frame& p = st.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] >= disc[p.v]) flush_block(p.v, done.v);
                }
            }
        }
        assert(estk.empty());
    }

    std::sort(raw_blocks.begin(), raw_blocks.end());

    BlockDecomposition d;
    d.blocks = std::move(raw_blocks);
    d.vertex_blocks.assign(n, {});
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for (int v : d.blocks[b]) d.vertex_blocks[v].push_back(static_cast<int>(b));
    d.is_cut.assign(n, 0);
    for (int v = 0; v < n; ++v)
        if (d.vertex_blocks[v].size() >= 2) {
            d.is_cut[v] = 1;
            d.cut_vertices.push_back(v);
        }

    d.path_block.assign(d.blocks.size(), 0);
    d.leaf_block.assign(d.blocks.size(), 0);
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        int ext = 0;
        for (int v : d.blocks[b]) ext += d.is_cut[v];
        d.path_block[b] = d.blocks[b].size() == 2 && ext == 2;
        d.leaf_block[b] = ext <= 1;
    }

    for (int v = 0; v < n; ++v) {
        if (in_s[v] || d.vertex_blocks[v].empty()) continue;
        bool all_path = true;
        for (int b : d.vertex_blocks[v])
            if (!d.path_block[b]) all_path = false;
        if (all_path) d.path_vertices.push_back(v);
    }

    // Depths via BFS over the block tree; the root of each component is the
    // block with the smallest minimum vertex.
    d.depth.assign(d.blocks.size(), -1);
    for (std::size_t root = 0; root < d.blocks.size(); ++root) {
        if (d.depth[root] != -1) continue;
        d.depth[root] = 0;
        std::vector<std::size_t> queue{root};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::size_t b = queue[qi];
            for (int v : d.blocks[b]) {
                if (!d.is_cut[v]) continue;
                for (int nb : d.vertex_blocks[v])
                    if (d.depth[nb] == -1) {
                        d.depth[nb] = d.depth[b] + 1;
                        queue.push_back(static_cast<std::size_t>(nb));
                    }
            }
        }
    }
    return d;
}

/// True iff every block of G induces a clique and every edge is negative.
inline bool is_negative_clique_forest(const SignedGraph& g) {
    for (const auto& e : g.edges())
        if (e.sign == Sign::positive) return false;
    auto d = block_decomposition(g);
    for (const auto& blk : d.blocks)
        for (std::size_t i = 0; i < blk.size(); ++i)
            for (std::size_t j = i + 1; j < blk.size(); ++j)
                if (!g.adjacent(blk[i], blk[j])) return false;
    return true;
}

}  // namespace sgmc
