#pragma once

#include <string>

#include <json.hpp>

#include "sgmc/drivers.hpp"
#include "sgmc/io.hpp"
#include "sgmc/trace.hpp"

namespace sgmc {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over the canonical serialization; stable across platforms.
inline std::string input_hash(const SignedGraph& g) {
    std::string text = graph_to_string(g);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline nlohmann::json to_json(const TraceStep& step) {
    nlohmann::json j;
    j["rule"] = rule_name(step.rule);
    if (!step.switched.empty()) j["switched"] = step.switched;
    j["removed"] = step.removed;
    if (!step.removed_edges.empty()) {
        auto& arr = j["removed_edges"] = nlohmann::json::array();
        for (const auto& e : step.removed_edges)
            arr.push_back({e.u, e.v, std::string(1, sign_char(e.sign))});
    }
    if (step.added) {
        auto& arr = j["added_vertex_edges"] = nlohmann::json::array();
        for (auto [w, s] : *step.added) arr.push_back({w, std::string(1, sign_char(s))});
    }
    j["delta_k"] = step.delta_k;
    if (step.piece_beta4) j["piece_beta4"] = *step.piece_beta4;
    if (step.piece_pt4) j["piece_pt4"] = *step.piece_pt4;
    return j;
}

inline nlohmann::json to_json(const RuleTrace& trace) {
    auto arr = nlohmann::json::array();
    for (const auto& s : trace) arr.push_back(to_json(s));
    return arr;
}

inline RuleId rule_from_name(const std::string& name) {
    for (RuleId r : {RuleId::R8, RuleId::R9, RuleId::R10a, RuleId::R10b, RuleId::R11,
                     RuleId::Rule6Plus, RuleId::RuleA, RuleId::CreditedTriple, RuleId::FreeVertex,
                     RuleId::Switch})
        if (name == rule_name(r)) return r;
    throw std::invalid_argument("unknown rule id: " + name);
}

inline TraceStep step_from_json(const nlohmann::json& j) {
    TraceStep step;
    step.rule = rule_from_name(j.at("rule").get<std::string>());
    if (j.contains("switched")) step.switched = j.at("switched").get<std::vector<int>>();
    step.removed = j.at("removed").get<std::vector<int>>();
    step.delta_k = j.at("delta_k").get<long long>();
    if (j.contains("removed_edges"))
        for (const auto& e : j.at("removed_edges"))
            step.removed_edges.push_back(
                make_edge(e.at(0).get<int>(), e.at(1).get<int>(),
                          e.at(2).get<std::string>() == "+" ? Sign::positive : Sign::negative));
    if (j.contains("added_vertex_edges")) {
        std::vector<std::pair<int, Sign>> att;
        for (const auto& e : j.at("added_vertex_edges"))
            att.emplace_back(e.at(0).get<int>(),
                             e.at(1).get<std::string>() == "+" ? Sign::positive : Sign::negative);
        step.added = std::move(att);
    }
    if (j.contains("piece_beta4")) step.piece_beta4 = j.at("piece_beta4").get<long long>();
    if (j.contains("piece_pt4")) step.piece_pt4 = j.at("piece_pt4").get<long long>();
    return step;
}

inline RuleTrace trace_from_json(const nlohmann::json& arr) {
    RuleTrace trace;
    for (const auto& js : arr) trace.push_back(step_from_json(js));
    return trace;
}

inline nlohmann::json to_json(const BoundCheck& c) {
    return {{"name", c.name},
            {"threshold", c.threshold},
            {"observed", c.observed},
            {"triggered", c.triggered}};
}

inline nlohmann::json to_json(const KernelCounters& c) {
    return {{"non_path_blocks", c.non_path_blocks},
            {"path_vertices", c.path_vertices},
            {"path_vertices_scoped", c.path_vertices_scoped},
            {"exterior_union", c.exterior_union},
            {"attachment_sum", c.attachment_sum},
            {"s_free_components", c.s_free_components},
            {"free_vertex_deletions", c.free_vertex_deletions},
            {"parallel_pairs", c.parallel_pairs}};
}

inline nlohmann::json to_json(const KernelReport& r) {
    nlohmann::json j;
    j["outcome"] = r.outcome == KernelReport::Outcome::yes ? "yes" : "kernel";
    if (!r.yes_reason.empty()) j["yes_reason"] = r.yes_reason;
    if (r.kernel) {
        j["kernel"] = {{"n", r.kernel->graph.n()},
                       {"m", r.kernel->graph.m()},
                       {"k", r.kernel->k},
                       {"graph", graph_to_string(r.kernel->graph)}};
    }
    j["trace"] = to_json(r.trace);
    j["s_set"] = r.s_set;
    j["s_size"] = r.s_size;
    j["counters"] = to_json(r.counters);
    auto& checks = j["bound_checks"] = nlohmann::json::array();
    for (const auto& c : r.bound_checks) checks.push_back(to_json(c));
    return j;
}

}  // namespace sgmc
