#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgmc/graph.hpp"

namespace sgmc {

enum class RuleId {
    R8,
    R9,
    R10a,
    R10b,
    R11,
    Rule6Plus,
    RuleA,
    CreditedTriple,
    FreeVertex,  // deletion of an S-free isolated vertex of G-S (k unchanged)
    Switch,      // sign switch at a vertex set; answer-preserving, k unchanged
};

inline const char* rule_name(RuleId r) {
    switch (r) {
        case RuleId::R8: return "R8";
        case RuleId::R9: return "R9";
        case RuleId::R10a: return "R10a";
        case RuleId::R10b: return "R10b";
        case RuleId::R11: return "R11";
        case RuleId::Rule6Plus: return "Rule6Plus";
        case RuleId::RuleA: return "RuleA";
        case RuleId::CreditedTriple: return "CreditedTriple";
        case RuleId::FreeVertex: return "FreeVertex";
        case RuleId::Switch: return "Switch";
    }
    return "?";
}

/// One recorded rule application, as a mechanical edit script. Vertex ids
/// refer to the graph the step was applied to; replay performs, in order:
/// the sign switch, edge deletions (pre-step ids), vertex deletions
/// (pre-step ids, survivors renumbered order-preservingly), then one
/// optional vertex addition whose attachment ids are post-deletion ids.
/// k decreases by delta_k.
struct TraceStep {
    RuleId rule = RuleId::R8;
    std::vector<int> switched;
    std::vector<Edge> removed_edges;
    std::vector<int> removed;
    std::optional<std::vector<std::pair<int, Sign>>> added;  // edges of the fresh vertex
    long long delta_k = 0;
    // Quarter-unit justification of one-way steps (beta and pt of the
    // removed piece), when applicable.
    std::optional<long long> piece_beta4, piece_pt4;
};

using RuleTrace = std::vector<TraceStep>;

inline Instance replay_step(const Instance& inst, const TraceStep& step) {
    SignedGraph g = inst.graph;
    if (!step.switched.empty()) g = g.switched(step.switched);
    if (!step.removed_edges.empty()) g = g.without_edges(step.removed_edges);
    if (!step.removed.empty()) g = g.without_vertices(step.removed).first;
    if (step.added) g = g.with_added_vertex(*step.added);
    return Instance{std::move(g), inst.k - step.delta_k};
}

/// Replays a trace from an instance; the result is bit-exact with respect to
/// canonical serialization.
inline Instance replay_trace(Instance inst, const RuleTrace& trace) {
    for (const auto& step : trace) inst = replay_step(inst, step);
    return inst;
}

inline long long total_delta_k(const RuleTrace& trace) {
    long long s = 0;
    for (const auto& step : trace) s += step.delta_k;
    return s;
}

}  // namespace sgmc
