#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sgmc/graph.hpp"

namespace sgmc {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

/// Parses the text format:
///   c <comment>
///   p sgraph <n> <m>
///   e <u> <v> <+|->        (0-based ids, u < v)
inline SignedGraph load_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_header = false;
    int n = 0;
    long long m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag.empty() || tag == "c") continue;
        if (tag == "p") {
            if (have_header) throw ParseError(line_no, "duplicate header");
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "sgraph")
                throw ParseError(line_no, "malformed header, expected 'p sgraph <n> <m>'");
            if (n < 0 || m < 0) throw ParseError(line_no, "negative size in header");
            have_header = true;
            continue;
        }
        if (tag == "e") {
            if (!have_header) throw ParseError(line_no, "edge before header");
            int u, v;
            std::string s;
            if (!(ls >> u >> v >> s) || (s != "+" && s != "-"))
                throw ParseError(line_no, "malformed edge line");
            std::string rest;
            if (ls >> rest) throw ParseError(line_no, "trailing tokens on edge line");
            if (u == v) throw ParseError(line_no, "loop edge");
            if (u > v) throw ParseError(line_no, "edge endpoints must satisfy u < v");
            if (u < 0 || v >= n) throw ParseError(line_no, "vertex id out of range");
            Sign sign = s == "+" ? Sign::positive : Sign::negative;
            for (const auto& e : edges)
                if (e.u == u && e.v == v && e.sign == sign)
                    throw ParseError(line_no, "duplicate same-sign edge");
            edges.push_back(Edge{u, v, sign});
            continue;
        }
        throw ParseError(line_no, "unknown line tag '" + tag + "'");
    }
    if (!have_header) throw ParseError(line_no, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(line_no, "header edge count " + std::to_string(m) +
                                      " does not match " + std::to_string(edges.size()) +
                                      " edge lines");
    return SignedGraph(n, std::move(edges));
}

inline SignedGraph load_graph(const std::string& text) {
    std::istringstream in(text);
    return load_graph(in);
}

/// Canonical serialization: edges sorted by (u, v, sign), '-' before '+'.
inline void save_graph(std::ostream& out, const SignedGraph& g) {
    out << "p sgraph " << g.n() << ' ' << g.m() << '\n';
    for (const auto& e : g.edges())
        out << "e " << e.u << ' ' << e.v << ' ' << sign_char(e.sign) << '\n';
}

inline std::string graph_to_string(const SignedGraph& g) {
    std::ostringstream out;
    save_graph(out, g);
    return out.str();
}

}  // namespace sgmc
