#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgmc {

/// Edge signs. Order is fixed (negative < positive) so that sorted edge
/// lists and signature comparisons are deterministic everywhere.
enum class Sign : std::uint8_t { negative = 0, positive = 1 };

inline char sign_char(Sign s) { return s == Sign::positive ? '+' : '-'; }
inline Sign opposite(Sign s) {
    return s == Sign::positive ? Sign::negative : Sign::positive;
}

struct Edge {
    int u = 0;
    int v = 0;
    Sign sign = Sign::negative;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.sign < b.sign;
    }
};

/// Normalizes endpoint order (u < v). Loops are rejected.
inline Edge make_edge(int u, int v, Sign s) {
    if (u == v) throw std::invalid_argument("loop edge " + std::to_string(u));
    if (u > v) std::swap(u, v);
    return Edge{u, v, s};
}

/// An immutable signed graph on dense vertex ids 0..n-1.
///
/// A vertex pair may carry at most one edge per sign; a pair carrying both a
/// positive and a negative edge counts as two edges in m. All mutators
/// return a new graph.
class SignedGraph {
public:
    SignedGraph() = default;

    SignedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        for (auto& e : edges_) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v)
                throw std::invalid_argument("loop edge at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v >= n_)
                throw std::invalid_argument("edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i] == edges_[i - 1])
                throw std::invalid_argument(
                    "duplicate edge {" + std::to_string(edges_[i].u) + "," +
                    std::to_string(edges_[i].v) + "," + sign_char(edges_[i].sign) + "}");
        build_adjacency();
    }

    int n() const { return n_; }
    long long m() const { return static_cast<long long>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Incident signed edges of v as (other endpoint, sign), sorted.
    const std::vector<std::pair<int, Sign>>& adjacency(int v) const { return adj_[v]; }

    /// Distinct neighbors of v, sorted ascending.
    const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }

    /// Number of incident signed edges (a parallel +/- pair counts as 2).
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v, Sign s) const {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v, s});
    }

    bool adjacent(int u, int v) const {
        return has_edge(u, v, Sign::negative) || has_edge(u, v, Sign::positive);
    }

    bool has_parallel_pair() const {
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) return true;
        return false;
    }

    bool masks_available() const { return n_ <= 64; }
    std::uint64_t pos_mask(int v) const { assert(masks_available()); return pos_mask_[v]; }
    std::uint64_t neg_mask(int v) const { assert(masks_available()); return neg_mask_[v]; }

    /// Flips the sign of every edge with exactly one endpoint in U.
    SignedGraph switched(const std::vector<int>& u_set) const {
        std::vector<char> in_u(n_, 0);
        for (int v : u_set) in_u[v] = 1;
        std::vector<Edge> out = edges_;
        for (auto& e : out)
            if (in_u[e.u] != in_u[e.v]) e.sign = opposite(e.sign);
        return SignedGraph(n_, std::move(out));
    }

    /// Flips every edge sign.
    SignedGraph flipped() const {
        std::vector<Edge> out = edges_;
        for (auto& e : out) e.sign = opposite(e.sign);
        return SignedGraph(n_, std::move(out));
    }

    /// Deletes the given vertices; survivors are renumbered keeping their
    /// relative order. Returns the new graph and the old->new id map
    /// (-1 for deleted vertices).
    std::pair<SignedGraph, std::vector<int>> without_vertices(const std::vector<int>& del) const {
        std::vector<char> dead(n_, 0);
        for (int v : del) {
            if (v < 0 || v >= n_) throw std::invalid_argument("delete: vertex out of range");
            dead[v] = 1;
        }
        std::vector<int> remap(n_, -1);
        int next = 0;
        for (int v = 0; v < n_; ++v)
            if (!dead[v]) remap[v] = next++;
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_)
            if (!dead[e.u] && !dead[e.v]) out.push_back(Edge{remap[e.u], remap[e.v], e.sign});
        return {SignedGraph(next, std::move(out)), std::move(remap)};
    }

    /// Keeps exactly the given vertices (induced subgraph); same remap contract.
    std::pair<SignedGraph, std::vector<int>> induced(const std::vector<int>& keep) const {
        std::vector<char> keep_mask(n_, 0);
        for (int v : keep) keep_mask[v] = 1;
        std::vector<int> del;
        for (int v = 0; v < n_; ++v)
            if (!keep_mask[v]) del.push_back(v);
        return without_vertices(del);
    }

    /// Appends a fresh vertex with id n() attached by the given signed edges.
    SignedGraph with_added_vertex(const std::vector<std::pair<int, Sign>>& attachments) const {
        std::vector<Edge> out = edges_;
        for (auto [w, s] : attachments) out.push_back(make_edge(w, n_, s));
        return SignedGraph(n_ + 1, std::move(out));
    }

    SignedGraph without_edges(const std::vector<Edge>& del) const {
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (const auto& e : edges_) {
            bool drop = false;
            for (const auto& d : del)
                if (e == Edge{std::min(d.u, d.v), std::max(d.u, d.v), d.sign}) drop = true;
            if (!drop) out.push_back(e);
        }
        if (out.size() + del.size() != edges_.size())
            throw std::invalid_argument("without_edges: edge not present");
        return SignedGraph(n_, std::move(out));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, Sign>>> adj_;
    std::vector<std::vector<int>> nbrs_;
    std::vector<std::uint64_t> pos_mask_, neg_mask_;

    void build_adjacency() {
        adj_.assign(n_, {});
        nbrs_.assign(n_, {});
        for (const auto& e : edges_) {
            adj_[e.u].emplace_back(e.v, e.sign);
            adj_[e.v].emplace_back(e.u, e.sign);
        }
        for (int v = 0; v < n_; ++v) {
            std::sort(adj_[v].begin(), adj_[v].end());
            for (auto [w, s] : adj_[v])
                if (nbrs_[v].empty() || nbrs_[v].back() != w) nbrs_[v].push_back(w);
        }
        if (masks_available()) {
            pos_mask_.assign(n_, 0);
            neg_mask_.assign(n_, 0);
            for (const auto& e : edges_) {
                auto& mu = e.sign == Sign::positive ? pos_mask_ : neg_mask_;
                mu[e.u] |= std::uint64_t{1} << e.v;
                mu[e.v] |= std::uint64_t{1} << e.u;
            }
        }
    }
};

/// A kernelization instance: a connected signed graph plus the parameter k
/// in quarter units of slack above the Poljak-Turzik bound. k may drop to
/// zero or below during reductions, which signals a Yes-instance.
struct Instance {
    SignedGraph graph;
    long long k = 0;
};

}  // namespace sgmc
