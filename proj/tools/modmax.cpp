// modmax CLI: generate benchmark instances, solve single networks, run the
// evaluation pipeline, and summarize record tables.
//
// Exit codes: 0 success (solver proven or within gap), 2 unknown algorithm,
// 3 solver terminated by a limit, 1 any other error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modmax/benchgen.hpp"
#include "modmax/exact.hpp"
#include "modmax/graph.hpp"
#include "modmax/harness.hpp"
#include "modmax/heuristics.hpp"
#include "modmax/metrics.hpp"
#include "modmax/modularity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return json::parse(in);
}

int cmd_gen(const std::string& specs_path, const std::string& out_dir, double warn_mu) {
    json specs = read_json_file(specs_path);
    if (!specs.is_array()) throw std::runtime_error("spec file must be a JSON array");
    fs::create_directories(out_dir);

    json manifest;
    manifest["schema_version"] = modmax::harness::kSchemaVersion;
    manifest["generator"] = "abcdlite";
    manifest["instances"] = json::array();
    json warnings = json::array();

    int index = 0;
    for (const auto& item : specs) {
        std::string name = item.value("name", "abcdlite_" + std::to_string(index));
        modmax::BenchmarkSpec spec;
        try {
            spec = modmax::harness::benchmark_spec_from_json(item);
            spec.validate();
        } catch (const std::exception& e) {
            throw std::runtime_error("instance " + std::to_string(index) + " (" + name +
                                     "): " + e.what());
        }
        if (spec.mu >= warn_mu) {
            std::string w = name + ": mu=" + std::to_string(spec.mu) +
                            " is above the warn threshold " + std::to_string(warn_mu) +
                            "; instance is structurally non-modular";
            std::cerr << "warning: " << w << "\n";
            warnings.push_back(w);
        }
        std::optional<modmax::PlantedGraph> pg_box;
        try {
            pg_box.emplace(modmax::generate(spec));
        } catch (const std::exception& e) {
            throw std::runtime_error("instance " + std::to_string(index) + " (" + name +
                                     "): " + e.what());
        }
        const modmax::PlantedGraph& pg = *pg_box;

        write_file(fs::path(out_dir) / (name + ".txt"), modmax::serialize_edge_list(pg.graph));
        json side;
        side["schema_version"] = modmax::harness::kSchemaVersion;
        side["generator"] = "abcdlite";
        side["name"] = name;
        side["spec"] = modmax::harness::benchmark_spec_to_json(spec);
        side["realized_m"] = pg.stats.realized_edges;
        side["realized_inter_fraction"] = pg.stats.realized_inter_fraction();
        side["intra_stubs_dropped"] = pg.stats.intra_stubs_dropped;
        side["inter_stubs_dropped"] = pg.stats.inter_stubs_dropped;
        side["forced_inter_stubs"] = pg.stats.forced_inter_stubs;
        side["repaired_isolated"] = pg.stats.repaired_isolated;
        side["planted"] = pg.planted.canonical().assignment();
        write_file(fs::path(out_dir) / (name + ".json"), side.dump(2) + "\n");

        json entry;
        entry["name"] = name;
        entry["edge_list"] = name + ".txt";
        entry["sidecar"] = name + ".json";
        entry["n"] = pg.graph.node_count();
        entry["m"] = pg.graph.edge_count();
        manifest["instances"].push_back(entry);
        ++index;
    }
    manifest["warnings"] = warnings;
    write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << index << " instances to " << out_dir << "\n";
    return 0;
}

int cmd_solve(const std::string& network_path, const std::string& algorithm, std::string gamma,
              unsigned long long seed, std::optional<double> tolerance,
              std::optional<double> time_limit, std::optional<long long> node_limit,
              bool enumerate_all, bool giant_only) {
    modmax::harness::AlgorithmId id = modmax::harness::parse_algorithm(algorithm);

    std::ifstream in(network_path);
    if (!in) throw std::runtime_error("cannot open " + network_path);
    modmax::LoadedGraph loaded = modmax::load_edge_list(in);
    modmax::Graph g = loaded.graph;
    if (giant_only) g = modmax::giant_component(g).graph;
    modmax::ModularityParams params = modmax::parse_gamma(gamma);

    if (id.kind == modmax::harness::AlgorithmId::Kind::exact ||
        id.kind == modmax::harness::AlgorithmId::Kind::bnb) {
        modmax::SolveConfig cfg;
        cfg.tolerance = tolerance.value_or(
            id.kind == modmax::harness::AlgorithmId::Kind::bnb ? id.tolerance : 0.0);
        cfg.time_limit_seconds = time_limit;
        cfg.node_limit = node_limit;
        cfg.enumerate_all = enumerate_all && cfg.tolerance == 0.0;
        cfg.seed = seed;
        modmax::SolveResult res = cfg.enumerate_all
                                      ? modmax::enumerate_optima(g, params, cfg)
                                      : modmax::branch_and_bound_max(g, params, cfg);
        json j = modmax::harness::solve_result_to_json(res);
        j["algorithm"] = algorithm;
        j["tokens"] = loaded.node_tokens;
        std::cout << j.dump(2) << "\n";
        const bool within_gap = res.proven_optimal || res.gap <= cfg.tolerance + 1e-15;
        return within_gap ? 0 : 3;
    }

    modmax::HeuristicConfig hcfg;
    hcfg.seed = seed;
    hcfg.gamma = params;
    const auto t0 = std::chrono::steady_clock::now();
    modmax::Partition part = [&] {
        switch (id.kind) {
            case modmax::harness::AlgorithmId::Kind::cnm: return modmax::cnm(g, hcfg);
            case modmax::harness::AlgorithmId::Kind::louvain: return modmax::louvain(g, hcfg);
            case modmax::harness::AlgorithmId::Kind::leiden: return modmax::leiden(g, hcfg);
            default: return modmax::combo(g, hcfg);
        }
    }();
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    modmax::Ratio q = modmax::modularity(g, part, params);

    json j;
    j["schema_version"] = modmax::harness::kSchemaVersion;
    j["algorithm"] = algorithm;
    j["assignment"] = part.assignment();
    j["q"] = q.value();
    j["q_exact"] = q.str();
    j["k"] = part.community_count();
    j["elapsed_seconds"] = elapsed;
    j["tokens"] = loaded.node_tokens;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    json cfg_json = read_json_file(config_path);
    modmax::harness::RunConfig cfg = modmax::harness::run_config_from_json(cfg_json);
    fs::create_directories(out_dir);

    modmax::harness::RunOutput result = modmax::harness::run_evaluation(cfg, &std::cerr);

    write_file(fs::path(out_dir) / "records.csv", modmax::harness::records_to_csv(result.records));

    json records_json;
    records_json["schema_version"] = modmax::harness::kSchemaVersion;
    records_json["records"] = json::array();
    for (const auto& r : result.records) {
        json item;
        item["network"] = r.network;
        item["algorithm"] = r.algorithm;
        item["seed"] = r.seed;
        item["q_alg"] = r.q_alg;
        if (!std::isnan(r.q_star)) item["q_star"] = r.q_star;
        if (!std::isnan(r.gop)) item["gop"] = r.gop;
        if (!std::isnan(r.ami)) item["ami"] = r.ami;
        if (!std::isnan(r.rmi)) item["rmi"] = r.rmi;
        if (!std::isnan(r.ecs)) item["ecs"] = r.ecs;
        item["k_alg"] = r.k_alg;
        if (r.k_star >= 0) item["k_star"] = r.k_star;
        if (r.optima_count >= 0) item["optima_count"] = r.optima_count;
        item["solve_seconds"] = r.solve_seconds;
        if (!std::isnan(r.gap)) item["gap"] = r.gap;
        item["rmi_approximate"] = r.rmi_approximate;
        item["baseline_unavailable"] = r.baseline_unavailable;
        records_json["records"].push_back(std::move(item));
    }
    write_file(fs::path(out_dir) / "records.json", records_json.dump(2) + "\n");

    std::string networks_csv = "network,n,m,baseline_seconds,baseline_unavailable\n";
    for (const auto& ni : result.networks)
        networks_csv += ni.name + "," + std::to_string(ni.n) + "," + std::to_string(ni.m) + "," +
                        modmax::harness::detail::fmt_double(ni.baseline_seconds) + "," +
                        (ni.baseline_unavailable ? "true" : "false") + "\n";
    write_file(fs::path(out_dir) / "networks.csv", networks_csv);

    std::cout << "wrote " << result.records.size() << " records for " << result.networks.size()
              << " networks to " << out_dir << "\n";
    return 0;
}

int cmd_report(const std::string& records_path, const std::string& out_dir,
               double success_threshold) {
    std::ifstream in(records_path);
    if (!in) throw std::runtime_error("cannot open " + records_path);
    std::vector<modmax::harness::EvalRecord> records = modmax::harness::parse_records_csv(in);

    // networks.csv next to the records supplies edge counts for time bins.
    std::map<std::string, int> edges_of_network;
    fs::path networks_path = fs::path(records_path).parent_path() / "networks.csv";
    if (std::ifstream nin(networks_path); nin) {
        std::string line;
        std::getline(nin, line);  // header
        while (std::getline(nin, line)) {
            if (line.empty()) continue;
            auto f = modmax::harness::detail::split_csv_line(line);
            if (f.size() >= 3) edges_of_network[f[0]] = std::stoi(f[2]);
        }
    }

    modmax::harness::ReportFiles rep =
        modmax::harness::build_report(records, edges_of_network, success_threshold);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "success_rates.csv", rep.success_rates_csv);
    write_file(fs::path(out_dir) / "scatter.csv", rep.scatter_csv);
    write_file(fs::path(out_dir) / "distributions.csv", rep.distributions_csv);
    if (!rep.time_bins_csv.empty())
        write_file(fs::path(out_dir) / "time_bins.csv", rep.time_bins_csv);
    write_file(fs::path(out_dir) / "summary.json", rep.summary.dump(2) + "\n");
    std::cout << "report written to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modularity maximization toolkit"};
    app.require_subcommand(1);

    std::string specs_path, out_dir = ".", network_path, algorithm, config_path, records_path;
    std::string gamma = "1";
    unsigned long long seed = 1;
    double warn_mu = 0.5;
    double success_threshold = 1e-9;
    std::optional<double> tolerance, time_limit;
    std::optional<long long> node_limit;
    bool enumerate_all = false, giant_only = false;

    auto* gen = app.add_subcommand("gen", "generate abcdlite benchmark instances");
    gen->add_option("specs", specs_path, "JSON array of benchmark specs")->required();
    gen->add_option("-o,--output", out_dir, "output directory");
    gen->add_option("--warn-mu", warn_mu, "warn when mu reaches this threshold");

    auto* solve = app.add_subcommand("solve", "run one algorithm on one network");
    solve->add_option("network", network_path, "edge-list file")->required();
    solve->add_option("algorithm", algorithm, "cnm|louvain|leiden|combo|exact|bnb:<tolerance>")
        ->required();
    solve->add_option("--gamma", gamma, "resolution parameter (rational or decimal)");
    solve->add_option("--seed", seed, "random seed");
    solve->add_option("--tolerance", tolerance, "solver gap tolerance");
    solve->add_option("--time-limit", time_limit, "solver time limit in seconds");
    solve->add_option("--node-limit", node_limit, "solver search-node limit");
    solve->add_flag("--enumerate", enumerate_all, "enumerate all optimal partitions");
    solve->add_flag("--giant", giant_only, "restrict to the giant component");

    auto* run = app.add_subcommand("run", "run the evaluation pipeline from a config");
    run->add_option("config", config_path, "run-config JSON")->required();
    run->add_option("-o,--output", out_dir, "output directory");

    auto* report = app.add_subcommand("report", "summarize a records.csv table");
    report->add_option("records", records_path, "records.csv from the run subcommand")
        ->required();
    report->add_option("-o,--output", out_dir, "output directory");
    report->add_option("--success-threshold", success_threshold,
                       "GOP slack treated as optimal");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(specs_path, out_dir, warn_mu);
        if (solve->parsed())
            return cmd_solve(network_path, algorithm, gamma, seed, tolerance, time_limit,
                             node_limit, enumerate_all, giant_only);
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (report->parsed()) return cmd_report(records_path, out_dir, success_threshold);
    } catch (const modmax::harness::unknown_algorithm& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
