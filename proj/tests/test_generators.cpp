#include <gtest/gtest.h>

#include <sstream>

#include "hublab/generators.hpp"

using namespace hublab;

namespace {

std::string text(const Graph& g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

}  // namespace

TEST(Generators, Shapes) {
    EXPECT_EQ(text(gen::path(5)), "5 4\n0 1\n1 2\n2 3\n3 4\n");
    EXPECT_EQ(gen::cycle(6).edge_count(), 6u);
    const Graph grid = gen::grid(10, 10);
    EXPECT_EQ(grid.node_count(), 100u);
    EXPECT_EQ(grid.edge_count(), 180u);
    EXPECT_EQ(grid.max_degree(), 4u);
    EXPECT_EQ(gen::star(50).max_degree(), 50u);
    const Graph sos = gen::star_of_stars(13, 22);
    EXPECT_EQ(sos.node_count(), 300u);
    EXPECT_EQ(sos.degree(0), 13u);
    EXPECT_EQ(sos.degree(1), 23u);
    EXPECT_EQ(sos.component_count(), 1u);
}

TEST(Generators, ErdosRenyiIsDeterministic) {
    EXPECT_EQ(text(gen::erdos_renyi(100, 300, 7)), text(gen::erdos_renyi(100, 300, 7)));
    EXPECT_NE(text(gen::erdos_renyi(100, 300, 7)), text(gen::erdos_renyi(100, 300, 8)));
    EXPECT_EQ(gen::erdos_renyi(100, 300, 7).edge_count(), 300u);
    EXPECT_EQ(gen::erdos_renyi(5, 10, 1).edge_count(), 10u);
    EXPECT_THROW(gen::erdos_renyi(5, 11, 1), std::invalid_argument);
}

TEST(Generators, RandomRegularDegrees) {
    for (uint64_t seed : {1u, 2u, 3u}) {
        const Graph g = gen::random_regular(64, 3, seed);
        for (node_t v = 0; v < 64; ++v) ASSERT_EQ(g.degree(v), 3u);
    }
    const Graph big = gen::random_regular(500, 3, 1);
    for (node_t v = 0; v < 500; ++v) ASSERT_EQ(big.degree(v), 3u);
    EXPECT_EQ(text(gen::random_regular(64, 3, 1)), text(gen::random_regular(64, 3, 1)));
    EXPECT_THROW(gen::random_regular(63, 3, 1), std::invalid_argument);
    EXPECT_THROW(gen::random_regular(4, 4, 1), std::invalid_argument);
}
