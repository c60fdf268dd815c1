#include <gtest/gtest.h>

#include <algorithm>

#include "hublab/generators.hpp"
#include "hublab/naming.hpp"
#include "hublab/split.hpp"
#include "oracles.hpp"

using namespace hublab;

TEST(Naming, PathFromEndpoint) {
    const Naming nm = build_naming(gen::path(3));
    EXPECT_EQ(nm.name, (std::vector<uint32_t>{1, 2, 3}));
    EXPECT_EQ(nm.node_of(3), 2u);
}

TEST(Naming, StarLeavesInIdOrder) {
    const Naming nm = build_naming(gen::star(4));
    EXPECT_EQ(nm.name, (std::vector<uint32_t>{1, 2, 3, 4, 5}));
}

TEST(Naming, TwoComponents) {
    const Graph g = load_graph_from_string("3 1\n0 1\n");
    const Naming nm = build_naming(g);
    EXPECT_EQ(nm.name, (std::vector<uint32_t>{1, 2, 3}));
    EXPECT_EQ(nm.comp_first, (std::vector<uint32_t>{1, 3}));
    EXPECT_EQ(nm.comp_last, (std::vector<uint32_t>{2, 3}));
}

TEST(Naming, PreorderNotBfsOrder) {
    // 0 has children 1 and 2; 1 has child 3. Preorder visits 3 before 2.
    const Graph g = load_graph_from_string("4 3\n0 1\n0 2\n1 3\n");
    EXPECT_EQ(build_naming(g).name, (std::vector<uint32_t>{1, 2, 4, 3}));
}

TEST(Naming, BijectionAndContiguousComponents) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = hublab::ref::random_graph(300, 260, 0.2, seed);
        const Naming nm = build_naming(g);
        std::vector<uint32_t> sorted = nm.name;
        std::sort(sorted.begin(), sorted.end());
        for (uint32_t i = 0; i < 300; ++i) ASSERT_EQ(sorted[i], i + 1);
        for (node_t u = 0; u < 300; ++u) {
            ASSERT_EQ(nm.inverse[nm.name[u]], u);
            const uint32_t c = g.component(u);
            ASSERT_GE(nm.name[u], nm.comp_first[c]);
            ASSERT_LE(nm.name[u], nm.comp_last[c]);
        }
        for (uint32_t c = 0; c < g.component_count(); ++c) {
            // root is the smallest id of its component
            node_t smallest = 300;
            for (node_t u = 0; u < 300; ++u)
                if (g.component(u) == c) smallest = std::min(smallest, u);
            EXPECT_EQ(nm.inverse[nm.comp_first[c]], smallest);
            if (c > 0) { EXPECT_EQ(nm.comp_first[c], nm.comp_last[c - 1] + 1); }
        }
    }
}

TEST(Variation, Examples) {
    const Graph p = gen::path(3);
    EXPECT_EQ(variation(p, 0, build_naming(p)), 2u);
    const Graph s = gen::star(4);
    EXPECT_EQ(variation(s, 0, build_naming(s)), 1u);
    const Graph one = gen::path(1);
    EXPECT_EQ(variation(one, 0, build_naming(one)), 0u);
}

TEST(Variation, AtMostTwiceNodeCountSmallGraphs) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        const node_t n = static_cast<node_t>(20 + seed * 4);
        const Graph g = hublab::ref::random_graph(n, n * (1 + seed % 4), seed % 3 == 0 ? 0.3 : 0.0, seed);
        const Naming nm = build_naming(g);
        for (node_t u = 0; u < n; ++u) ASSERT_LE(variation(g, u, nm), 2u * n) << seed << ' ' << u;
    }
}

TEST(Variation, AtMostTwiceNodeCountSplitGraphs) {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = hublab::ref::random_graph(150, 900, 0.0, seed);
        const SplitResult s = split_graph(g);
        const Naming nm = build_naming(s.graph);
        const node_t n = s.graph.node_count();
        for (node_t u = 0; u < n; ++u) ASSERT_LE(variation(s.graph, u, nm), 2u * n);
    }
}
