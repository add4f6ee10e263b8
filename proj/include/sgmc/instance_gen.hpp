#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sgmc/blocks.hpp"
#include "sgmc/graph.hpp"
#include "sgmc/oracle.hpp"
#include "sgmc/partition.hpp"

namespace sgmc {

/// Deterministic pseudorandomness for generators. mt19937_64 plus explicit
/// derivations keep outputs identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t u64() { return eng_(); }
    int below(int n) { return n <= 0 ? 0 : static_cast<int>(u64() % static_cast<std::uint64_t>(n)); }
    bool chance(double p) { return static_cast<double>(u64() >> 11) * 0x1.0p-53 < p; }
    Sign sign(double pos_prob) { return chance(pos_prob) ? Sign::positive : Sign::negative; }

private:
    std::mt19937_64 eng_;
};

/// K_n with all edges negative; n must be odd so the instance is tight.
inline SignedGraph gen_negative_clique(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("gen_negative_clique: n must be odd and at least 3");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back(Edge{u, v, Sign::negative});
    return SignedGraph(n, std::move(edges));
}

/// Erdos-Renyi style sampler with a connectivity patch that links leftover
/// components by extra edges (a spanning tree when edge_prob is 0).
inline SignedGraph random_signed_graph(int n, double edge_prob, double pos_prob,
                                       std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(edge_prob)) edges.push_back(Edge{u, v, rng.sign(pos_prob)});
    SignedGraph g(n, std::move(edges));
    while (true) {
        auto comps = connected_components(g);
        if (comps.size() <= 1) break;
        int u = comps[0][rng.below(static_cast<int>(comps[0].size()))];
        int v = comps[1][rng.below(static_cast<int>(comps[1].size()))];
        auto e = g.edges();
        e.push_back(make_edge(u, v, rng.sign(pos_prob)));
        g = SignedGraph(n, std::move(e));
    }
    return g;
}

/// Graph with a planted partition into r independent sets and l cliques.
/// Cross-part edges are sampled; connectivity is patched using only
/// cross-part pairs. The planted partition is re-verified before returning.
inline std::pair<SignedGraph, Partition> gen_rl(const std::vector<int>& ind_sizes,
                                                const std::vector<int>& clique_sizes,
                                                double edge_prob, double pos_prob,
                                                std::uint64_t seed) {
    Rng rng(seed);
    Partition part;
    int next = 0;
    for (int sz : ind_sizes) {
        if (sz < 0) throw std::invalid_argument("gen_rl: negative part size");
        std::vector<int> p;
        for (int i = 0; i < sz; ++i) p.push_back(next++);
        part.independent_sets.push_back(std::move(p));
    }
    for (int sz : clique_sizes) {
        if (sz < 0) throw std::invalid_argument("gen_rl: negative part size");
        std::vector<int> p;
        for (int i = 0; i < sz; ++i) p.push_back(next++);
        part.cliques.push_back(std::move(p));
    }
    int n = next;
    if (n == 0) throw std::invalid_argument("gen_rl: all part sizes are zero");

    std::vector<int> part_of(n, -1);
    int pid = 0;
    for (const auto& p : part.independent_sets) {
        for (int v : p) part_of[v] = pid;
        ++pid;
    }
    for (const auto& p : part.cliques) {
        for (int v : p) part_of[v] = pid;
        ++pid;
    }

    std::vector<Edge> edges;
    for (const auto& p : part.cliques)
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                edges.push_back(Edge{p[i], p[j], rng.sign(pos_prob)});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v] && rng.chance(edge_prob))
                edges.push_back(Edge{u, v, rng.sign(pos_prob)});

    SignedGraph g(n, std::move(edges));
    while (true) {
        auto comps = connected_components(g);
        if (comps.size() <= 1) break;
        std::vector<std::pair<int, int>> legal;
        for (std::size_t c = 1; c < comps.size() && legal.empty(); ++c)
            for (int u : comps[0])
                for (int v : comps[c])
                    if (part_of[u] != part_of[v]) legal.emplace_back(u, v);
        if (legal.empty())
            throw std::invalid_argument("gen_rl: connectivity infeasible for this partition");
        auto [u, v] = legal[rng.below(static_cast<int>(legal.size()))];
        auto e = g.edges();
        e.push_back(make_edge(u, v, rng.sign(pos_prob)));
        g = SignedGraph(n, std::move(e));
    }
    verify_partition(g, part);
    return {std::move(g), std::move(part)};
}

struct DsplitInstance {
    SignedGraph graph;
    std::vector<int> k_side, i_side;
};

/// d*-split generator: a negative clique K, an independent set I whose
/// vertices attach to 1..d clique vertices, and a repair pass that gives
/// every clique vertex at least one I-neighbor by growing I with pendants.
inline DsplitInstance gen_dsplit(long long d, int k_size, int i_size, double pos_prob,
                                 std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("gen_dsplit: d must be at least 1");
    if (k_size < 1) throw std::invalid_argument("gen_dsplit: clique must be non-empty");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < k_size; ++u)
        for (int v = u + 1; v < k_size; ++v) edges.push_back(Edge{u, v, Sign::negative});
    std::vector<char> covered(k_size, 0);
    int next = k_size;
    std::vector<int> i_side;
    for (int i = 0; i < i_size; ++i) {
        int deg = 1 + rng.below(static_cast<int>(std::min<long long>(d, k_size)));
        std::vector<int> targets;
        while (static_cast<int>(targets.size()) < deg) {
            int t = rng.below(k_size);
            bool seen = false;
            for (int x : targets) seen = seen || x == t;
            if (!seen) targets.push_back(t);
        }
        for (int t : targets) {
            edges.push_back(make_edge(t, next, rng.sign(pos_prob)));
            covered[t] = 1;
        }
        i_side.push_back(next++);
    }
    for (int v = 0; v < k_size; ++v)
        if (!covered[v]) {
            edges.push_back(make_edge(v, next, rng.sign(pos_prob)));
            i_side.push_back(next++);
        }
    SignedGraph g(next, std::move(edges));
    std::vector<int> k_side;
    for (int v = 0; v < k_size; ++v) k_side.push_back(v);
    verify_dsplit_partition(g, k_side, i_side, d);
    return {std::move(g), std::move(k_side), std::move(i_side)};
}

/// 2G: two disjoint copies of G.
inline SignedGraph transform_double(const SignedGraph& g) {
    std::vector<Edge> edges = g.edges();
    for (const auto& e : g.edges()) edges.push_back(Edge{e.u + g.n(), e.v + g.n(), e.sign});
    return SignedGraph(2 * g.n(), std::move(edges));
}

/// The split-graph hardness construction: the input is treated as an
/// unsigned graph, its vertices become an all-negative clique, and each
/// non-edge {v,w} becomes a degree-2 vertex attached negatively to v and w.
/// The result is a 2*-split graph when the input has no universal vertex.
inline SignedGraph transform_bodlaender(const SignedGraph& g) {
    const int n = g.n();
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(g.neighbors(v).size()) == n - 1)
            throw StructureError("transform_bodlaender: universal vertex " + std::to_string(v));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back(Edge{u, v, Sign::negative});
    int next = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) {
                edges.push_back(Edge{u, next, Sign::negative});
                edges.push_back(Edge{v, next, Sign::negative});
                ++next;
            }
    return SignedGraph(next, std::move(edges));
}

struct CutSolution {
    long long value = 0;
    Assignment assignment;
};

/// Polynomial solver for 1*-split graphs with the private-pendant structure
/// (negative clique, every independent-set vertex of degree exactly 1):
/// split the clique as evenly as possible and place each pendant on its
/// consistent side.
inline CutSolution solve_1star_split(const SignedGraph& g, const std::vector<int>& k_side,
                                     const std::vector<int>& i_side) {
    verify_dsplit_partition(g, k_side, i_side, 1);
    for (int v : i_side)
        if (g.degree(v) != 1)
            throw StructureError("1*-split: independent-set vertex of degree != 1");
    for (std::size_t i = 0; i < k_side.size(); ++i)
        for (std::size_t j = i + 1; j < k_side.size(); ++j)
            if (g.has_edge(k_side[i], k_side[j], Sign::positive))
                throw StructureError("1*-split: positive edge inside the clique");

    Assignment a = Assignment::all_one(g.n());
    std::vector<int> k_sorted = k_side;
    std::sort(k_sorted.begin(), k_sorted.end());
    for (std::size_t i = 0; i < k_sorted.size(); ++i)
        a.side[k_sorted[i]] = i < (k_sorted.size() + 1) / 2 ? 1 : 2;
    for (int v : i_side) {
        auto [w, s] = g.adjacency(v).front();
        a.side[v] = s == Sign::positive ? a.side[w] : static_cast<std::uint8_t>(3 - a.side[w]);
    }
    return {consistent_edge_count(g, a), std::move(a)};
}

/// Generator request, reproducible per seed.
struct GenSpec {
    enum class Family {
        negative_clique,
        random_signed,
        split,
        rl,
        dsplit,
        double_copy,
        bodlaender_split,
    };
    Family family = Family::random_signed;
    int n = 0;
    std::vector<int> ind_sizes, clique_sizes;
    long long d = 1;
    int k_size = 0, i_size = 0;
    double edge_prob = 0.5, pos_prob = 0.5;
    std::uint64_t seed = 0;
};

struct Generated {
    SignedGraph graph;
    std::optional<Partition> partition;
};

/// Dispatcher for the CLI; transforms take the base graph as second input.
inline Generated generate(const GenSpec& spec,
                          const std::optional<SignedGraph>& base = std::nullopt) {
    switch (spec.family) {
        case GenSpec::Family::negative_clique:
            return {gen_negative_clique(spec.n), std::nullopt};
        case GenSpec::Family::random_signed:
            return {random_signed_graph(spec.n, spec.edge_prob, spec.pos_prob, spec.seed),
                    std::nullopt};
        case GenSpec::Family::split: {
            auto [g, p] = gen_rl({spec.i_size}, {spec.k_size}, spec.edge_prob, spec.pos_prob,
                                 spec.seed);
            return {std::move(g), std::move(p)};
        }
        case GenSpec::Family::rl: {
            auto [g, p] =
                gen_rl(spec.ind_sizes, spec.clique_sizes, spec.edge_prob, spec.pos_prob, spec.seed);
            return {std::move(g), std::move(p)};
        }
        case GenSpec::Family::dsplit: {
            auto inst = gen_dsplit(spec.d, spec.k_size, spec.i_size, spec.pos_prob, spec.seed);
            Partition p;
            p.cliques.push_back(inst.k_side);
            p.independent_sets.push_back(inst.i_side);
            return {std::move(inst.graph), std::move(p)};
        }
        case GenSpec::Family::double_copy:
            if (!base) throw std::invalid_argument("generate: double needs a base graph");
            return {transform_double(*base), std::nullopt};
        case GenSpec::Family::bodlaender_split:
            if (!base) throw std::invalid_argument("generate: bodlaender needs a base graph");
            return {transform_bodlaender(*base), std::nullopt};
    }
    throw std::invalid_argument("generate: unknown family");
}

}  // namespace sgmc
