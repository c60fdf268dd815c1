#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hublab/graph.hpp"

namespace hublab {

struct SplitResult {
    Graph graph;
    std::vector<node_t> fwd;     // original node -> representative (its first copy)
    std::vector<node_t> origin;  // node of `graph` -> original node
    uint32_t cap = 0;            // degree cap ceil(m/n) + 2
    uint32_t chunk = 1;          // original edges per copy, max(1, ceil(m/n))
    std::vector<std::string> warnings;
};

/// Replaces every node of degree above ceil(m/n) + 2 by a path of copies joined
/// by cost-0 edges. The j-th incident edge (adjacency order) of a split node
/// attaches to copy j / chunk. Unsplit nodes and first copies keep their ids;
/// extra copies are appended in order of their original node.
inline SplitResult split_graph(const Graph& g) {
    const node_t n = g.node_count();
    const uint64_t m = g.edge_count();
    SplitResult res;
    const uint64_t avg_ceil = n == 0 ? 0 : (m + n - 1) / n;
    res.chunk = static_cast<uint32_t>(std::max<uint64_t>(1, avg_ceil));
    res.cap = static_cast<uint32_t>(avg_ceil + 2);

    // first_extra[v]: id of v's second copy, or kUnreachable when v is not split
    std::vector<node_t> first_extra(n, kUnreachable);
    node_t next_id = n;
    for (node_t v = 0; v < n; ++v) {
        const uint32_t deg = g.degree(v);
        if (deg <= res.cap) continue;
        const uint32_t copies = (deg + res.chunk - 1) / res.chunk;
        first_extra[v] = next_id;
        next_id += copies - 1;
    }
    const node_t total = next_id;

    auto copy_of = [&](node_t v, size_t slot) -> node_t {
        const size_t c = slot / res.chunk;
        if (first_extra[v] == kUnreachable || c == 0) return v;
        return static_cast<node_t>(first_extra[v] + c - 1);
    };

    std::vector<Edge> edges;
    edges.reserve(m + (total - n));
    res.origin.resize(total);
    for (node_t v = 0; v < n; ++v) {
        res.origin[v] = v;
        if (first_extra[v] == kUnreachable) continue;
        const uint32_t copies = (g.degree(v) + res.chunk - 1) / res.chunk;
        node_t prev = v;
        for (uint32_t c = 1; c < copies; ++c) {
            const node_t id = first_extra[v] + c - 1;
            res.origin[id] = v;
            edges.push_back({prev, id, 0});
            prev = id;
        }
    }
    for (node_t u = 0; u < n; ++u) {
        const auto adj = g.neighbors(u);
        for (size_t j = 0; j < adj.size(); ++j) {
            const node_t v = adj[j].to;
            if (v < u) continue;
            const auto back = g.neighbors(v);
            const auto it = std::lower_bound(back.begin(), back.end(), u,
                                             [](const Arc& a, node_t x) { return a.to < x; });
            const size_t back_slot = static_cast<size_t>(it - back.begin());
            edges.push_back({copy_of(u, j), copy_of(v, back_slot), adj[j].cost});
        }
    }

    res.graph = Graph(total, edges);
    res.fwd.resize(n);
    for (node_t v = 0; v < n; ++v) res.fwd[v] = v;

    if (uint64_t(total) > 2 * uint64_t(n))
        res.warnings.push_back("split graph has " + std::to_string(total) + " nodes, more than 2n = " +
                               std::to_string(2 * uint64_t(n)));
    return res;
}

}  // namespace hublab
