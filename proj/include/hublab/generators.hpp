#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hublab/graph.hpp"

namespace hublab::gen {

/// Draws are taken as rng() % bound so output does not depend on the standard
/// library's distribution implementations.
inline uint64_t draw(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

inline Graph path(node_t n) {
    std::vector<Edge> e;
    for (node_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
    return Graph(n, e);
}

inline Graph cycle(node_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
    std::vector<Edge> e;
    for (node_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1});
    return Graph(n, e);
}

/// rows x cols lattice; node r * cols + c.
inline Graph grid(node_t rows, node_t cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("grid sides must be positive");
    std::vector<Edge> e;
    for (node_t r = 0; r < rows; ++r)
        for (node_t c = 0; c < cols; ++c) {
            const node_t id = r * cols + c;
            if (c + 1 < cols) e.push_back({id, id + 1, 1});
            if (r + 1 < rows) e.push_back({id, id + cols, 1});
        }
    return Graph(rows * cols, e);
}

/// Center 0 joined to leaves 1..leaves.
inline Graph star(node_t leaves) {
    std::vector<Edge> e;
    for (node_t i = 1; i <= leaves; ++i) e.push_back({0, i, 1});
    return Graph(leaves + 1, e);
}

/// Center 0, hubs 1..hubs joined to it, each hub with its own `leaves` leaves.
inline Graph star_of_stars(node_t hubs, node_t leaves) {
    std::vector<Edge> e;
    node_t next = hubs + 1;
    for (node_t h = 1; h <= hubs; ++h) {
        e.push_back({0, h, 1});
        for (node_t i = 0; i < leaves; ++i) e.push_back({h, next++, 1});
    }
    return Graph(next, e);
}

/// Uniform simple d-regular graph by the configuration model, rejecting pairings
/// with loops or repeated edges.
inline Graph random_regular(node_t n, uint32_t d, uint64_t seed) {
    if ((uint64_t(n) * d) % 2 != 0) throw std::invalid_argument("n * d must be even for a regular graph");
    if (d >= n) throw std::invalid_argument("degree must be below n");
    std::mt19937_64 rng(seed);
    std::vector<node_t> points;
    std::unordered_set<uint64_t> seen;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        points.clear();
        for (node_t v = 0; v < n; ++v)
            for (uint32_t i = 0; i < d; ++i) points.push_back(v);
        for (size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[draw(rng, i)]);
        seen.clear();
        std::vector<Edge> e;
        bool ok = true;
        for (size_t i = 0; i < points.size() && ok; i += 2) {
            node_t a = points[i], b = points[i + 1];
            if (a > b) std::swap(a, b);
            ok = a != b && seen.insert(uint64_t(a) << 32 | b).second;
            e.push_back({a, b, 1});
        }
        if (ok) return Graph(n, e);
    }
    throw std::runtime_error("random regular generator gave up after 10000 pairings");
}

/// G(n, m): m distinct edges drawn uniformly.
inline Graph erdos_renyi(node_t n, uint64_t m, uint64_t seed) {
    if (n < 2 && m > 0) throw std::invalid_argument("edges need at least 2 nodes");
    if (m > uint64_t(n) * (n - 1) / 2) throw std::invalid_argument("more edges than node pairs");
    std::mt19937_64 rng(seed);
    std::unordered_set<uint64_t> seen;
    std::vector<Edge> e;
    while (e.size() < m) {
        node_t a = static_cast<node_t>(draw(rng, n));
        node_t b = static_cast<node_t>(draw(rng, n));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.insert(uint64_t(a) << 32 | b).second) e.push_back({a, b, 1});
    }
    return Graph(n, e);
}

}  // namespace hublab::gen
