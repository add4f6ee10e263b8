#pragma once

#include <vector>

#include "sgmc/graph.hpp"
#include "sgmc/mcwv.hpp"

namespace sgmc {

/// A planted vertex partition into independent sets and cliques. For
/// d*-split graphs the single clique comes first in `cliques` and the single
/// independent set first in `independent_sets`.
struct Partition {
    std::vector<std::vector<int>> independent_sets;
    std::vector<std::vector<int>> cliques;
};

/// Checks that the parts partition V(G), independent sets induce no edges
/// and cliques induce complete graphs. Throws StructureError otherwise.
inline void verify_partition(const SignedGraph& g, const Partition& p) {
    std::vector<int> owner(g.n(), -1);
    int part_id = 0;
    auto claim = [&](const std::vector<int>& part) {
        for (int v : part) {
            if (v < 0 || v >= g.n()) throw StructureError("partition: vertex out of range");
            if (owner[v] != -1) throw StructureError("partition: vertex in two parts");
            owner[v] = part_id;
        }
        ++part_id;
    };
    for (const auto& part : p.independent_sets) claim(part);
    for (const auto& part : p.cliques) claim(part);
    for (int v = 0; v < g.n(); ++v)
        if (owner[v] == -1) throw StructureError("partition: vertex not covered");
    for (const auto& part : p.independent_sets)
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j)
                if (g.adjacent(part[i], part[j]))
                    throw StructureError("partition: edge inside an independent set");
    for (const auto& part : p.cliques)
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j)
                if (!g.adjacent(part[i], part[j]))
                    throw StructureError("partition: missing edge inside a clique");
}

/// d*-split structure: split partition (K, I) where every I-vertex has
/// degree at most d and every K-vertex has at least one I-neighbor.
inline void verify_dsplit_partition(const SignedGraph& g, const std::vector<int>& k_side,
                                    const std::vector<int>& i_side, long long d) {
    Partition p;
    p.cliques.push_back(k_side);
    p.independent_sets.push_back(i_side);
    verify_partition(g, p);
    for (int v : i_side)
        if (g.degree(v) > d)
            throw StructureError("d*-split: independent-set vertex of degree above d");
    std::vector<char> in_i(g.n(), 0);
    for (int v : i_side) in_i[v] = 1;
    for (int v : k_side) {
        bool has = false;
        for (int w : g.neighbors(v))
            if (in_i[w]) has = true;
        if (!has) throw StructureError("d*-split: clique vertex without independent-set neighbor");
    }
}

}  // namespace sgmc
