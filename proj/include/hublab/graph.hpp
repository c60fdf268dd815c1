#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hublab {

using node_t = uint32_t;

/// Distance or hop count between nodes of different components.
inline constexpr uint32_t kUnreachable = std::numeric_limits<uint32_t>::max();

struct Edge {
    node_t u;
    node_t v;
    uint32_t cost = 1;
};

struct Arc {
    node_t to;
    uint32_t cost;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] size_t line() const { return line_; }

  private:
    size_t line_;
};

/// Undirected graph with edge costs in {0, 1}, held as sorted adjacency arrays.
/// Self-loops are dropped and parallel edges collapse to their cheapest cost.
class Graph {
  public:
    Graph() = default;

    Graph(node_t n, std::span<const Edge> edges) : n_(n) {
        std::vector<Edge> canon;
        canon.reserve(edges.size());
        for (const auto& e : edges) {
            if (e.u >= n || e.v >= n) throw std::out_of_range("edge endpoint outside [0, n)");
            if (e.cost > 1) throw std::invalid_argument("edge cost must be 0 or 1");
            if (e.u == e.v) continue;
            canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.cost});
        }
        std::sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v, a.cost) < std::tie(b.u, b.v, b.cost);
        });
        // after sorting the cheapest copy of each pair comes first
        canon.erase(std::unique(canon.begin(), canon.end(),
                                [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                    canon.end());
        m_ = canon.size();

        offsets_.assign(size_t(n) + 1, 0);
        for (const auto& e : canon) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
        arcs_.resize(offsets_[n]);
        std::vector<uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : canon) {
            arcs_[fill[e.u]++] = {e.v, e.cost};
            arcs_[fill[e.v]++] = {e.u, e.cost};
        }
        for (node_t u = 0; u < n; ++u)
            std::sort(arcs_.begin() + offsets_[u], arcs_.begin() + offsets_[u + 1],
                      [](const Arc& a, const Arc& b) { return a.to < b.to; });
        label_components();
    }

    [[nodiscard]] node_t node_count() const { return n_; }
    [[nodiscard]] uint64_t edge_count() const { return m_; }

    [[nodiscard]] std::span<const Arc> neighbors(node_t u) const {
        return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
    }

    [[nodiscard]] uint32_t degree(node_t u) const { return static_cast<uint32_t>(offsets_[u + 1] - offsets_[u]); }

    [[nodiscard]] uint32_t max_degree() const {
        uint32_t d = 0;
        for (node_t u = 0; u < n_; ++u) d = std::max(d, degree(u));
        return d;
    }

    /// Components are numbered 0, 1, ... in order of their smallest node id.
    [[nodiscard]] uint32_t component(node_t u) const { return comp_[u]; }
    [[nodiscard]] uint32_t component_count() const { return comp_count_; }

    /// Every edge once, as (min, max, cost), sorted.
    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (node_t u = 0; u < n_; ++u)
            for (const auto& a : neighbors(u))
                if (u < a.to) out.push_back({u, a.to, a.cost});
        return out;
    }

    /// FNV-1a over n and the canonical edge list.
    [[nodiscard]] uint64_t hash() const {
        uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&](uint64_t x) {
            for (int i = 0; i < 8; ++i) {
                h ^= (x >> (8 * i)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        mix(n_);
        mix(m_);
        for (node_t u = 0; u < n_; ++u)
            for (const auto& a : neighbors(u))
                if (u < a.to) {
                    mix(u);
                    mix(a.to);
                    mix(a.cost);
                }
        return h;
    }

  private:
    void label_components() {
        comp_.assign(n_, kUnreachable);
        comp_count_ = 0;
        std::vector<node_t> stack;
        for (node_t s = 0; s < n_; ++s) {
            if (comp_[s] != kUnreachable) continue;
            comp_[s] = comp_count_;
            stack.push_back(s);
            while (!stack.empty()) {
                const node_t x = stack.back();
                stack.pop_back();
                for (const auto& a : neighbors(x))
                    if (comp_[a.to] == kUnreachable) {
                        comp_[a.to] = comp_count_;
                        stack.push_back(a.to);
                    }
            }
            ++comp_count_;
        }
    }

    node_t n_ = 0;
    uint64_t m_ = 0;
    std::vector<uint64_t> offsets_{0};
    std::vector<Arc> arcs_;
    std::vector<uint32_t> comp_;
    uint32_t comp_count_ = 0;
};

/// Reads "n m" followed by m lines "u v" or "u v c"; '#' lines and blank lines are skipped.
inline Graph load_graph(std::istream& in) {
    std::string line;
    size_t lineno = 0;
    bool have_header = false;
    uint64_t n = 0, m = 0;
    std::vector<Edge> edges;

    auto parse_fields = [&](const std::string& text, std::vector<int64_t>& out) {
        out.clear();
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) {
            size_t used = 0;
            int64_t value = 0;
            try {
                value = std::stoll(tok, &used, 10);
            } catch (const std::exception&) {
                throw ParseError(lineno, "not an integer: '" + tok + "'");
            }
            if (used != tok.size()) throw ParseError(lineno, "not an integer: '" + tok + "'");
            out.push_back(value);
        }
    };

    std::vector<int64_t> f;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        parse_fields(line, f);
        if (!have_header) {
            if (f.size() != 2 || f[0] < 0 || f[1] < 0) throw ParseError(lineno, "expected header 'n m'");
            if (f[0] > int64_t(std::numeric_limits<node_t>::max() - 1)) throw ParseError(lineno, "node count too large");
            n = static_cast<uint64_t>(f[0]);
            m = static_cast<uint64_t>(f[1]);
            have_header = true;
            edges.reserve(std::min<uint64_t>(m, uint64_t(1) << 20));
            continue;
        }
        if (edges.size() == m) throw ParseError(lineno, "more edge lines than announced");
        if (f.size() != 2 && f.size() != 3) throw ParseError(lineno, "expected 'u v' or 'u v c'");
        if (f[0] < 0 || f[1] < 0 || uint64_t(f[0]) >= n || uint64_t(f[1]) >= n)
            throw ParseError(lineno, "node id out of range [0, " + std::to_string(n) + ")");
        const int64_t cost = f.size() == 3 ? f[2] : 1;
        if (cost != 0 && cost != 1) throw ParseError(lineno, "edge cost must be 0 or 1");
        edges.push_back({static_cast<node_t>(f[0]), static_cast<node_t>(f[1]), static_cast<uint32_t>(cost)});
    }
    if (!have_header) throw ParseError(lineno, "missing header 'n m'");
    if (edges.size() != m)
        throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(static_cast<node_t>(n), edges);
}

inline Graph load_graph_from_string(const std::string& text) {
    std::istringstream in(text);
    return load_graph(in);
}

/// Writes the canonical edge list; cost-1 edges omit the cost column.
inline void write_graph(std::ostream& out, const Graph& g) {
    const auto edges = g.edges();
    out << g.node_count() << ' ' << edges.size() << '\n';
    for (const auto& e : edges) {
        out << e.u << ' ' << e.v;
        if (e.cost != 1) out << ' ' << e.cost;
        out << '\n';
    }
}

/// Cheapest-path cost and, among cheapest paths, the fewest edges.
struct DistHop {
    uint32_t delta = kUnreachable;
    uint32_t hops = kUnreachable;

    bool operator==(const DistHop&) const = default;
};

/// Reusable buffers for repeated single-source searches.
struct SsspWorkspace {
    std::vector<std::pair<node_t, uint32_t>> carried;  // entered the level through a cost-1 edge
    std::vector<std::pair<node_t, uint32_t>> local;    // entered through a cost-0 edge
    std::vector<std::pair<node_t, uint32_t>> next;
    std::vector<node_t> bfs_queue;
    std::vector<uint32_t> bfs_stamp;
    uint32_t stamp = 0;
};

/// Single-source search ordered lexicographically by (delta, hops), i.e. by the
/// key delta * (2n + 1) + hops. Costs are 0/1 and hops grow by one per edge, so
/// each delta level is settled by merging two FIFO queues sorted by hops: the
/// entries carried in from the previous level and those created inside it.
inline void sssp_01(const Graph& g, node_t s, SsspWorkspace& ws, std::vector<DistHop>& out) {
    out.assign(g.node_count(), DistHop{});
    out[s] = {0, 0};
    ws.carried.clear();
    ws.carried.push_back({s, 0});
    uint32_t level = 0;
    while (!ws.carried.empty()) {
        ws.local.clear();
        ws.next.clear();
        size_t ci = 0, li = 0;
        while (ci < ws.carried.size() || li < ws.local.size()) {
            std::pair<node_t, uint32_t> cur;
            if (li >= ws.local.size() || (ci < ws.carried.size() && ws.carried[ci].second <= ws.local[li].second))
                cur = ws.carried[ci++];
            else
                cur = ws.local[li++];
            const auto [x, h] = cur;
            if (out[x].delta != level || out[x].hops != h) continue;  // stale
            for (const auto& a : g.neighbors(x)) {
                const DistHop cand{level + a.cost, h + 1};
                DistHop& cur_best = out[a.to];
                if (cand.delta < cur_best.delta || (cand.delta == cur_best.delta && cand.hops < cur_best.hops)) {
                    cur_best = cand;
                    (a.cost == 0 ? ws.local : ws.next).push_back({a.to, cand.hops});
                }
            }
        }
        std::swap(ws.carried, ws.next);
        ++level;
    }
}

inline std::vector<DistHop> sssp_01(const Graph& g, node_t s) {
    if (s >= g.node_count()) throw std::out_of_range("source outside [0, n)");
    SsspWorkspace ws;
    std::vector<DistHop> out;
    sssp_01(g, s, ws, out);
    return out;
}

/// Nodes within `r` edges of u (ignoring costs), in BFS order.
inline void hop_ball_nodes(const Graph& g, node_t u, uint32_t r, SsspWorkspace& ws, std::vector<node_t>& out) {
    if (ws.bfs_stamp.size() != g.node_count()) {
        ws.bfs_stamp.assign(g.node_count(), 0);
        ws.stamp = 0;
    }
    if (++ws.stamp == 0) {
        std::fill(ws.bfs_stamp.begin(), ws.bfs_stamp.end(), 0);
        ws.stamp = 1;
    }
    out.clear();
    out.push_back(u);
    ws.bfs_stamp[u] = ws.stamp;
    size_t head = 0;
    for (uint32_t depth = 0; depth < r; ++depth) {
        const size_t end = out.size();
        if (head == end) break;
        for (; head < end; ++head)
            for (const auto& a : g.neighbors(out[head]))
                if (ws.bfs_stamp[a.to] != ws.stamp) {
                    ws.bfs_stamp[a.to] = ws.stamp;
                    out.push_back(a.to);
                }
    }
}

/// Ball of radius r around u by edge count, each member paired with its true
/// cheapest-path cost from u; sorted by node id. `from_u` is sssp_01(g, u).
inline std::vector<std::pair<node_t, uint32_t>> hop_ball(const Graph& g, node_t u, uint32_t r,
                                                        const std::vector<DistHop>& from_u) {
    SsspWorkspace ws;
    std::vector<node_t> nodes;
    hop_ball_nodes(g, u, r, ws, nodes);
    std::vector<std::pair<node_t, uint32_t>> out;
    out.reserve(nodes.size());
    for (node_t v : nodes) out.emplace_back(v, from_u[v].delta);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::pair<node_t, uint32_t>> hop_ball(const Graph& g, node_t u, uint32_t r) {
    return hop_ball(g, u, r, sssp_01(g, u));
}

}  // namespace hublab
