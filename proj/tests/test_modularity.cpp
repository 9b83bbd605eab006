#include "modmax/modularity.hpp"

#include <gtest/gtest.h>

#include "modmax/partition.hpp"
#include "oracle_helpers.hpp"

using namespace modmax;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph two_triangles() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

}  // namespace

TEST(Partition, CanonicalRelabels) {
    Partition p(std::vector<int>{7, 7, 2});
    EXPECT_EQ(p.canonical().assignment(), (std::vector<int>{0, 0, 1}));
}

TEST(Partition, CanonicalIsIdempotent) {
    Partition p(std::vector<int>{2, 0, 2, 0});
    Partition c = p.canonical();
    EXPECT_EQ(c.assignment(), (std::vector<int>{0, 1, 0, 1}));
    EXPECT_EQ(c.canonical(), c);
    EXPECT_TRUE(c.is_canonical());
}

TEST(Partition, SameCommunityRelationSurvivesCanonicalization) {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto labels = oracle::random_assignment(10, 4, rng);
        Partition p(labels), c = p.canonical();
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j)
                EXPECT_EQ(p.same_community(i, j), c.same_community(i, j));
    }
}

TEST(Partition, FromGroupsValidates) {
    EXPECT_THROW(Partition::from_groups(3, {{0, 1}}), std::invalid_argument);
    EXPECT_THROW(Partition::from_groups(3, {{0, 1}, {1, 2}}), std::invalid_argument);
    auto p = Partition::from_groups(3, {{1, 2}, {0}});
    EXPECT_TRUE(p.same_community(1, 2));
    EXPECT_FALSE(p.same_community(0, 1));
}

TEST(ModularityEntry, TriangleValues) {
    auto g = triangle();
    EXPECT_EQ(modularity_entry(g, {}, 0, 1), (Ratio{1, 3}));   // 1 - 4/6
    EXPECT_EQ(modularity_entry(g, {}, 0, 0), (Ratio{-2, 3}));  // 0 - 4/6
}

TEST(ModularityEntry, CrossTrianglePair) {
    auto g = two_triangles();
    EXPECT_EQ(modularity_entry(g, {}, 0, 3), (Ratio{-1, 3}));  // 0 - 4/12
}

TEST(ModularityEntry, OutOfRangeThrows) {
    auto g = triangle();
    EXPECT_THROW(modularity_entry(g, {}, 0, 3), std::out_of_range);
    EXPECT_THROW(modularity_entry(g, {}, -1, 0), std::out_of_range);
}

TEST(Modularity, TriangleAllInOneIsZero) {
    EXPECT_EQ(modularity(triangle(), Partition::all_in_one(3)), (Ratio{0, 1}));
}

TEST(Modularity, TriangleSingletons) {
    EXPECT_EQ(modularity(triangle(), Partition::singletons(3)), (Ratio{-1, 3}));
}

TEST(Modularity, TwoTrianglesPlantedSplit) {
    auto p = Partition(std::vector<int>{0, 0, 0, 1, 1, 1});
    EXPECT_EQ(modularity(two_triangles(), p), (Ratio{1, 2}));
}

TEST(Modularity, EmptyGraphRejected) {
    Graph g(2, {});
    EXPECT_THROW(modularity(g, Partition::all_in_one(2)), std::invalid_argument);
    EXPECT_THROW(modularity_entry(g, {}, 0, 1), std::invalid_argument);
}

TEST(Modularity, MismatchedPartitionRejected) {
    EXPECT_THROW(modularity(triangle(), Partition::all_in_one(4)), std::invalid_argument);
}

TEST(Modularity, MatchesNaiveOracleOnRandomInstances) {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + static_cast<int>(uniform_index(rng, 8));
        auto g = oracle::random_graph(n, 0.5, rng);
        auto labels = oracle::random_assignment(n, 4, rng);
        double exact = modularity(g, Partition(labels)).value();
        EXPECT_NEAR(exact, oracle::naive_modularity(g, labels), 1e-12);
    }
}

TEST(Modularity, RangeAndInvariants) {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(uniform_index(rng, 9));
        auto g = oracle::random_graph(n, 0.4, rng);
        auto labels = oracle::random_assignment(n, n, rng);
        Partition p(labels);
        Ratio q = modularity(g, p);
        EXPECT_GE(q, (Ratio{-1, 2}));
        EXPECT_LE(q, (Ratio{1, 1}));
        // All-in-one cancels exactly at gamma 1.
        EXPECT_EQ(modularity(g, Partition::all_in_one(n)), (Ratio{0, 1}));
        // Relabeling invariance, exact.
        EXPECT_EQ(q, modularity(g, p.canonical()));
    }
}

TEST(Modularity, EntryMatrixSumsToZeroAtGammaOne) {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(uniform_index(rng, 7));
        auto g = oracle::random_graph(n, 0.5, rng);
        // Sum as exact integers over the common denominator 2mq.
        long long num = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) num += modularity_entry(g, {}, i, j).num;
        EXPECT_EQ(num, 0);
    }
}

TEST(Modularity, RationalGammaIsExact) {
    auto g = triangle();
    ModularityParams half = parse_gamma("1/2");
    // b_01 = 1 - (1/2)*4/6 = 2/3
    EXPECT_EQ(modularity_entry(g, half, 0, 1), (Ratio{2, 3}));
    ModularityParams dec = parse_gamma("0.5");
    EXPECT_EQ(dec.gamma_num, 1);
    EXPECT_EQ(dec.gamma_den, 2);
    EXPECT_THROW(parse_gamma("0"), std::invalid_argument);
    EXPECT_THROW(parse_gamma("-1"), std::invalid_argument);
    EXPECT_THROW(parse_gamma("x"), std::invalid_argument);
}

TEST(Ratio, ExactComparisons) {
    EXPECT_EQ((Ratio{1, 2}), (Ratio{2, 4}));
    EXPECT_LT((Ratio{1, 3}), (Ratio{1, 2}));
    EXPECT_GT((Ratio{-1, 3}), (Ratio{-1, 2}));
    EXPECT_EQ((Ratio{10216, 24336}).reduced().str(), "1277/3042");
}
