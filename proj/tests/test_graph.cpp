#include "modmax/graph.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "oracle_helpers.hpp"

using namespace modmax;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

}  // namespace

TEST(GraphLoad, TriangleFromText) {
    auto loaded = load_edge_list(std::string("0 1\n1 2\n2 0\n"));
    EXPECT_EQ(loaded.graph.node_count(), 3);
    EXPECT_EQ(loaded.graph.edge_count(), 3);
    EXPECT_EQ(loaded.stats.self_loops_dropped, 0);
    EXPECT_EQ(loaded.stats.duplicate_edges_dropped, 0);
}

TEST(GraphLoad, DropsSelfLoopsAndDuplicates) {
    auto loaded = load_edge_list(std::string("a b\nb a\na a\n"));
    EXPECT_EQ(loaded.graph.node_count(), 2);
    EXPECT_EQ(loaded.graph.edge_count(), 1);
    EXPECT_EQ(loaded.stats.self_loops_dropped, 1);
    EXPECT_EQ(loaded.stats.duplicate_edges_dropped, 1);
    EXPECT_EQ(loaded.node_tokens, (std::vector<std::string>{"a", "b"}));
}

TEST(GraphLoad, TwoTrianglesDegrees) {
    auto loaded = load_edge_list(std::string("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n"));
    EXPECT_EQ(loaded.graph.node_count(), 6);
    EXPECT_EQ(loaded.graph.edge_count(), 6);
    for (int v = 0; v < 6; ++v) EXPECT_EQ(loaded.graph.degree(v), 2);
}

TEST(GraphLoad, TokensInternOrder) {
    auto loaded = load_edge_list(std::string("alice bob\ncarol alice\n"));
    EXPECT_EQ(loaded.node_tokens, (std::vector<std::string>{"alice", "bob", "carol"}));
    EXPECT_TRUE(loaded.graph.has_edge(0, 1));
    EXPECT_TRUE(loaded.graph.has_edge(0, 2));
}

TEST(GraphLoad, CommentsAndBlankLines) {
    auto loaded = load_edge_list(std::string("# header\n\n0 1  # inline\n\n1 2\n"));
    EXPECT_EQ(loaded.graph.edge_count(), 2);
}

TEST(GraphLoad, MalformedLineReportsNumber) {
    try {
        load_edge_list(std::string("0 1\n0 1 2\n"));
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(GraphLoad, SingleTokenLineFails) {
    EXPECT_THROW(load_edge_list(std::string("0\n")), parse_error);
}

TEST(GraphLoad, EmptyInputFails) {
    EXPECT_THROW(load_edge_list(std::string("")), parse_error);
    EXPECT_THROW(load_edge_list(std::string("# only comments\n")), parse_error);
}

TEST(GraphInvariants, DegreeSumIsTwiceEdges) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = oracle::random_graph(3 + static_cast<int>(uniform_index(rng, 8)), 0.4, rng);
        long long total = 0;
        for (int v = 0; v < g.node_count(); ++v) total += g.degree(v);
        EXPECT_EQ(total, 2LL * g.edge_count());
    }
}

TEST(GraphSerialize, RoundTripIsIdentity) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = oracle::random_graph(3 + static_cast<int>(uniform_index(rng, 8)), 0.5, rng);
        // Canonical form: reload so ids follow first-appearance order.
        auto canon = load_edge_list(serialize_edge_list(g));
        auto again = load_edge_list(serialize_edge_list(canon.graph));
        EXPECT_EQ(serialize_edge_list(canon.graph), serialize_edge_list(again.graph));
        EXPECT_EQ(canon.graph.edge_count(), again.graph.edge_count());
    }
}

TEST(GraphConstruct, RejectsBadEdges) {
    EXPECT_THROW(Graph(2, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Graph(2, {{0, 2}}), std::invalid_argument);
    EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(Graph(0, {}), std::invalid_argument);
}

TEST(GiantComponent, TieBreaksToSmallestNode) {
    auto comp = giant_component(two_triangles());
    EXPECT_EQ(comp.graph.node_count(), 3);
    EXPECT_EQ(comp.new_to_old, (std::vector<int>{0, 1, 2}));
}

TEST(GiantComponent, ConnectedGraphUnchanged) {
    auto comp = giant_component(triangle());
    EXPECT_EQ(comp.graph.node_count(), 3);
    EXPECT_EQ(comp.graph.edge_count(), 3);
    EXPECT_EQ(comp.old_to_new, (std::vector<int>{0, 1, 2}));
}

TEST(GiantComponent, DropsIsolatedNode) {
    Graph g(4, {{0, 1}, {1, 2}, {0, 2}});
    auto comp = giant_component(g);
    EXPECT_EQ(comp.graph.node_count(), 3);
    EXPECT_EQ(comp.old_to_new[3], -1);
}

TEST(GiantComponent, PicksLargerComponent) {
    Graph g(7, {{0, 1}, {2, 3}, {3, 4}, {2, 4}, {5, 6}});
    auto comp = giant_component(g);
    EXPECT_EQ(comp.graph.node_count(), 3);
    EXPECT_EQ(comp.new_to_old, (std::vector<int>{2, 3, 4}));
}
