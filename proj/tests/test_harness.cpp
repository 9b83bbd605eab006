#include "modmax/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace modmax;
using namespace modmax::harness;

TEST(AlgorithmIds, ParseAndReject) {
    EXPECT_EQ(parse_algorithm("cnm").kind, AlgorithmId::Kind::cnm);
    EXPECT_EQ(parse_algorithm("louvain").kind, AlgorithmId::Kind::louvain);
    EXPECT_EQ(parse_algorithm("leiden").kind, AlgorithmId::Kind::leiden);
    EXPECT_EQ(parse_algorithm("combo").kind, AlgorithmId::Kind::combo);
    EXPECT_EQ(parse_algorithm("exact").kind, AlgorithmId::Kind::exact);
    auto bnb = parse_algorithm("bnb:0.1");
    EXPECT_EQ(bnb.kind, AlgorithmId::Kind::bnb);
    EXPECT_DOUBLE_EQ(bnb.tolerance, 0.1);
    EXPECT_THROW(parse_algorithm("paris"), unknown_algorithm);
    EXPECT_THROW(parse_algorithm("bnb:nope"), unknown_algorithm);
    EXPECT_THROW(parse_algorithm("bnb:1.5"), unknown_algorithm);
}

TEST(Records, CsvRoundTrip) {
    EvalRecord r;
    r.network = "two_triangles";
    r.algorithm = "louvain";
    r.seed = 7;
    r.q_alg = 0.5;
    r.q_star = 0.5;
    r.gop = 1.0;
    r.ami = 1.0;
    r.rmi = 1.0;
    r.ecs = 1.0;
    r.k_alg = 2;
    r.k_star = 2;
    r.optima_count = 1;
    r.solve_seconds = 0.001;
    EvalRecord heuristic_row = r;  // gap stays NaN
    std::string csv = records_to_csv({heuristic_row});
    std::istringstream in(csv);
    auto parsed = parse_records_csv(in);
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0].network, "two_triangles");
    EXPECT_EQ(parsed[0].seed, 7u);
    EXPECT_TRUE(std::isnan(parsed[0].gap));
    EXPECT_DOUBLE_EQ(parsed[0].gop, 1.0);
    EXPECT_FALSE(parsed[0].baseline_unavailable);
}

TEST(Records, SchemaMismatchDetected) {
    std::istringstream in("wrong,header\n1,2\n");
    EXPECT_THROW(parse_records_csv(in), std::runtime_error);
}

TEST(BoxStatsTest, HandComputedQuartiles) {
    // Four values, linear interpolation between closest ranks:
    // q1 at position 0.75 -> 1 + 0.75*(2-1) = 1.75; median 2.5; q3 3.25.
    auto s = box_stats({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.q1, 1.75);
    EXPECT_DOUBLE_EQ(s.median, 2.5);
    EXPECT_DOUBLE_EQ(s.q3, 3.25);
    // IQR = 1.5; fences at -0.5 and 5.5: whiskers reach the extremes.
    EXPECT_DOUBLE_EQ(s.whisker_low, 1.0);
    EXPECT_DOUBLE_EQ(s.whisker_high, 4.0);
    EXPECT_EQ(s.count, 4);
}

TEST(BoxStatsTest, OutlierExcludedFromWhisker) {
    auto s = box_stats({1.0, 1.1, 1.2, 1.3, 9.0});
    EXPECT_DOUBLE_EQ(s.whisker_high, 1.3);  // 9.0 lies beyond q3 + 1.5*IQR
    EXPECT_THROW(box_stats({}), std::invalid_argument);
}

TEST(RunPipeline, TinyCorpusRecords) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "modmax_harness_test";
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(dir / name);
        out << text;
        return (dir / name).string();
    };
    RunConfig cfg;
    cfg.networks.push_back({"k3", write("k3.txt", "0 1\n1 2\n2 0\n"), std::nullopt});
    cfg.networks.push_back(
        {"two_triangles", write("tt.txt", "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n"), std::nullopt});
    cfg.networks.push_back({"c4", write("c4.txt", "0 1\n1 2\n2 3\n3 0\n"), std::nullopt});
    cfg.algorithms = {"cnm", "louvain", "leiden", "combo"};
    cfg.solver.enumerate_all = true;

    auto out = run_evaluation(cfg);
    ASSERT_EQ(out.records.size(), 12u);
    for (const auto& r : out.records) {
        EXPECT_FALSE(r.baseline_unavailable);
        EXPECT_LE(r.q_alg, r.q_star + 1e-9);
        if (r.gop >= 1.0 - 1e-9) {
            EXPECT_DOUBLE_EQ(r.ami, 1.0);
            EXPECT_DOUBLE_EQ(r.rmi, 1.0);
            EXPECT_DOUBLE_EQ(r.ecs, 1.0);
        }
        EXPECT_GE(r.solve_seconds, 0.0);
    }
    // Records arrive sorted by (network, algorithm, seed).
    for (std::size_t i = 1; i < out.records.size(); ++i) {
        const auto &a = out.records[i - 1], &b = out.records[i];
        EXPECT_LE(std::tie(a.network, a.algorithm, a.seed),
                  std::tie(b.network, b.algorithm, b.seed));
    }
    // C4 has three optima at gamma 1.
    for (const auto& r : out.records)
        if (r.network == "c4") EXPECT_EQ(r.optima_count, 3);
}

TEST(RunPipeline, EmptyAlgorithmListRejected) {
    RunConfig cfg;
    cfg.networks.push_back({"x", "nonexistent.txt", std::nullopt});
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(RunPipeline, SolverAlgorithmRecordsGap) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "modmax_harness_gap";
    fs::create_directories(dir);
    std::ofstream(dir / "tt.txt") << "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n";
    RunConfig cfg;
    cfg.networks.push_back({"tt", (dir / "tt.txt").string(), std::nullopt});
    cfg.algorithms = {"bnb:0.5", "exact"};
    auto out = run_evaluation(cfg);
    ASSERT_EQ(out.records.size(), 2u);
    for (const auto& r : out.records) {
        EXPECT_FALSE(std::isnan(r.gap));
        if (r.algorithm == "exact") {
            EXPECT_DOUBLE_EQ(r.gop, 1.0);
            EXPECT_DOUBLE_EQ(r.gap, 0.0);
        } else {
            EXPECT_LE(r.gap, 0.5 + 1e-12);
        }
    }
}

TEST(Reports, SuccessRatesAndScatter) {
    std::vector<EvalRecord> records;
    auto make = [&](const std::string& net, const std::string& alg, double gop_v, double ami_v) {
        EvalRecord r;
        r.network = net;
        r.algorithm = alg;
        r.seed = 1;
        r.q_alg = gop_v * 0.4;
        r.q_star = 0.4;
        r.gop = gop_v;
        r.ami = ami_v;
        r.rmi = ami_v;
        r.ecs = ami_v;
        r.k_alg = 2;
        r.k_star = 2;
        r.optima_count = 1;
        r.solve_seconds = 0.01;
        return r;
    };
    records.push_back(make("a", "alg1", 1.0, 1.0));
    records.push_back(make("b", "alg1", 0.9, 0.5));
    records.push_back(make("a", "alg2", 1.0, 1.0));
    records.push_back(make("b", "alg2", 1.0, 1.0));

    auto rep = build_report(records, {{"a", 10}, {"b", 100}});
    EXPECT_NE(rep.success_rates_csv.find("alg1,2,1,0.5"), std::string::npos);
    EXPECT_NE(rep.success_rates_csv.find("alg2,2,2,1"), std::string::npos);
    EXPECT_DOUBLE_EQ(rep.summary.at("average_success_rate").get<double>(), 0.75);
    // The sub-optimal record lies above the 45-degree line (ami 0.5 <= gop 0.9).
    EXPECT_NE(rep.scatter_csv.find("b,alg1,1,0.9,0.5,0.5,0.5,true,true,true"),
              std::string::npos);
    EXPECT_FALSE(rep.time_bins_csv.empty());
}

TEST(Reports, AllOptimalCorpusDegenerates) {
    std::vector<EvalRecord> records;
    EvalRecord r;
    r.network = "a";
    r.algorithm = "alg";
    r.seed = 1;
    r.q_alg = r.q_star = 0.4;
    r.gop = r.ami = r.rmi = r.ecs = 1.0;
    r.k_alg = r.k_star = 2;
    r.optima_count = 1;
    r.solve_seconds = 0.01;
    records.push_back(r);
    auto rep = build_report(records, {});
    EXPECT_NE(rep.success_rates_csv.find("alg,1,1,1"), std::string::npos);
    EXPECT_THROW(build_report({}, {}), std::invalid_argument);
}
