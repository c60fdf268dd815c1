#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "hublab/graph.hpp"

namespace hublab {

/// Preorder names of a BFS spanning forest. Each component is rooted at its
/// smallest node id, children are visited in ascending id order, and components
/// are numbered in order, so every component owns a contiguous name range.
struct Naming {
    std::vector<uint32_t> name;       // node -> name in [1, n]
    std::vector<node_t> inverse;      // name -> node; inverse[0] is unused
    std::vector<uint32_t> comp_first; // component -> first name
    std::vector<uint32_t> comp_last;  // component -> last name

    [[nodiscard]] node_t node_of(uint32_t nm) const { return inverse[nm]; }
};

inline Naming build_naming(const Graph& g) {
    const node_t n = g.node_count();
    Naming out;
    out.name.assign(n, 0);
    out.inverse.assign(size_t(n) + 1, 0);
    out.comp_first.assign(g.component_count(), 0);
    out.comp_last.assign(g.component_count(), 0);

    std::vector<std::vector<node_t>> children(n);
    std::vector<char> seen(n, 0);
    std::vector<node_t> queue, stack;
    uint32_t next_name = 1;

    for (node_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        queue.clear();
        queue.push_back(root);
        seen[root] = 1;
        for (size_t head = 0; head < queue.size(); ++head) {
            const node_t x = queue[head];
            for (const auto& a : g.neighbors(x))
                if (!seen[a.to]) {
                    seen[a.to] = 1;
                    children[x].push_back(a.to);
                    queue.push_back(a.to);
                }
        }
        const uint32_t comp = g.component(root);
        out.comp_first[comp] = next_name;
        stack.clear();
        stack.push_back(root);
        while (!stack.empty()) {
            const node_t x = stack.back();
            stack.pop_back();
            out.name[x] = next_name;
            out.inverse[next_name] = x;
            ++next_name;
            for (auto it = children[x].rbegin(); it != children[x].rend(); ++it) stack.push_back(*it);
        }
        out.comp_last[comp] = next_name - 1;
    }
    return out;
}

/// Total variation of the distances from u along the preorder sequence of u's
/// component: sum over consecutive names of |delta(u, v_{i-1}) - delta(u, v_i)|.
inline uint64_t variation(const Graph& g, node_t u, const Naming& naming, const std::vector<DistHop>& from_u) {
    const uint32_t comp = g.component(u);
    uint64_t total = 0;
    for (uint32_t nm = naming.comp_first[comp] + 1; nm <= naming.comp_last[comp]; ++nm) {
        const int64_t a = from_u[naming.inverse[nm - 1]].delta;
        const int64_t b = from_u[naming.inverse[nm]].delta;
        total += static_cast<uint64_t>(std::llabs(a - b));
    }
    return total;
}

inline uint64_t variation(const Graph& g, node_t u, const Naming& naming) {
    return variation(g, u, naming, sssp_01(g, u));
}

}  // namespace hublab
