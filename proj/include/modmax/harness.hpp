#pragma once

// Evaluation harness: runs the exact baseline and the configured algorithms
// over a corpus, emits one EvalRecord per (network, algorithm, seed), and
// turns record tables into success-rate, scatter, distribution and solve-time
// summaries.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modmax/benchgen.hpp"
#include "modmax/exact.hpp"
#include "modmax/graph.hpp"
#include "modmax/heuristics.hpp"
#include "modmax/metrics.hpp"
#include "modmax/modularity.hpp"
#include "modmax/partition.hpp"

namespace modmax::harness {

inline constexpr const char* kSchemaVersion = "1";

// ---------------------------------------------------------------------------
// Algorithm identifiers accepted by the CLI and the run pipeline.

struct AlgorithmId {
    enum class Kind { cnm, louvain, leiden, combo, exact, bnb };
    Kind kind = Kind::cnm;
    double tolerance = 0.0;  // bnb only
    std::string text;
};

inline const std::vector<std::string>& valid_algorithm_ids() {
    static const std::vector<std::string> ids = {"cnm",   "louvain", "leiden",
                                                 "combo", "exact",   "bnb:<tolerance>"};
    return ids;
}

class unknown_algorithm : public std::invalid_argument {
public:
    explicit unknown_algorithm(const std::string& name)
        : std::invalid_argument("unknown algorithm '" + name +
                                "'; valid: cnm, louvain, leiden, combo, exact, bnb:<tolerance>") {}
};

inline AlgorithmId parse_algorithm(const std::string& name) {
    AlgorithmId id;
    id.text = name;
    if (name == "cnm") id.kind = AlgorithmId::Kind::cnm;
    else if (name == "louvain") id.kind = AlgorithmId::Kind::louvain;
    else if (name == "leiden") id.kind = AlgorithmId::Kind::leiden;
    else if (name == "combo") id.kind = AlgorithmId::Kind::combo;
    else if (name == "exact") id.kind = AlgorithmId::Kind::exact;
    else if (name.rfind("bnb:", 0) == 0) {
        id.kind = AlgorithmId::Kind::bnb;
        try {
            std::size_t pos = 0;
            id.tolerance = std::stod(name.substr(4), &pos);
            if (pos != name.size() - 4) throw std::invalid_argument(name);
        } catch (...) {
            throw unknown_algorithm(name);
        }
        if (!(id.tolerance >= 0.0) || id.tolerance >= 1.0) throw unknown_algorithm(name);
    } else {
        throw unknown_algorithm(name);
    }
    return id;
}

// ---------------------------------------------------------------------------
// Records.

struct EvalRecord {
    std::string network;
    std::string algorithm;
    unsigned long long seed = 0;
    double q_alg = 0.0;
    double q_star = std::numeric_limits<double>::quiet_NaN();
    double gop = std::numeric_limits<double>::quiet_NaN();
    double ami = std::numeric_limits<double>::quiet_NaN();
    double rmi = std::numeric_limits<double>::quiet_NaN();
    double ecs = std::numeric_limits<double>::quiet_NaN();
    int k_alg = 0;
    int k_star = -1;  // community count of the best-AMI optimum
    int optima_count = -1;
    double solve_seconds = 0.0;
    double gap = std::numeric_limits<double>::quiet_NaN();  // solver runs only
    bool rmi_approximate = false;
    bool baseline_unavailable = false;
};

inline constexpr const char* kRecordsCsvHeader =
    "network,algorithm,seed,q_alg,q_star,gop,ami,rmi,ecs,k_alg,k_star,optima_count,"
    "solve_seconds,gap,rmi_approximate,baseline_unavailable";

namespace detail {

inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt_int_or_empty(int v) { return v < 0 ? "" : std::to_string(v); }

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

inline double parse_double_or_nan(const std::string& s) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::stod(s);
}

}  // namespace detail

inline std::string to_csv_row(const EvalRecord& r) {
    std::string row;
    row += r.network;
    row += ',';
    row += r.algorithm;
    row += ',';
    row += std::to_string(r.seed);
    row += ',';
    row += detail::fmt_double(r.q_alg);
    row += ',';
    row += detail::fmt_double(r.q_star);
    row += ',';
    row += detail::fmt_double(r.gop);
    row += ',';
    row += detail::fmt_double(r.ami);
    row += ',';
    row += detail::fmt_double(r.rmi);
    row += ',';
    row += detail::fmt_double(r.ecs);
    row += ',';
    row += std::to_string(r.k_alg);
    row += ',';
    row += detail::fmt_int_or_empty(r.k_star);
    row += ',';
    row += detail::fmt_int_or_empty(r.optima_count);
    row += ',';
    row += detail::fmt_double(r.solve_seconds);
    row += ',';
    row += detail::fmt_double(r.gap);
    row += ',';
    row += r.rmi_approximate ? "true" : "false";
    row += ',';
    row += r.baseline_unavailable ? "true" : "false";
    return row;
}

inline std::string records_to_csv(const std::vector<EvalRecord>& records) {
    std::string out = kRecordsCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += to_csv_row(r);
        out += '\n';
    }
    return out;
}

inline std::vector<EvalRecord> parse_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty records file");
    if (line != kRecordsCsvHeader)
        throw std::runtime_error("records schema mismatch: unexpected header");
    std::vector<EvalRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 16) throw std::runtime_error("records schema mismatch: bad column count");
        EvalRecord r;
        r.network = f[0];
        r.algorithm = f[1];
        r.seed = std::stoull(f[2]);
        r.q_alg = detail::parse_double_or_nan(f[3]);
        r.q_star = detail::parse_double_or_nan(f[4]);
        r.gop = detail::parse_double_or_nan(f[5]);
        r.ami = detail::parse_double_or_nan(f[6]);
        r.rmi = detail::parse_double_or_nan(f[7]);
        r.ecs = detail::parse_double_or_nan(f[8]);
        r.k_alg = std::stoi(f[9]);
        r.k_star = f[10].empty() ? -1 : std::stoi(f[10]);
        r.optima_count = f[11].empty() ? -1 : std::stoi(f[11]);
        r.solve_seconds = detail::parse_double_or_nan(f[12]);
        r.gap = detail::parse_double_or_nan(f[13]);
        r.rmi_approximate = f[14] == "true";
        r.baseline_unavailable = f[15] == "true";
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Solver result JSON (the exact module's wire schema).

inline nlohmann::json solve_result_to_json(const SolveResult& res) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["q_lb"] = res.q_lb.value();
    j["q_ub"] = res.q_ub.value();
    j["q_lb_exact"] = res.q_lb.str();
    j["q_ub_exact"] = res.q_ub.str();
    j["gap"] = res.gap;
    j["proven_optimal"] = res.proven_optimal;
    j["enumeration_complete"] = res.enumeration_complete;
    j["nodes_explored"] = res.nodes_explored;
    j["elapsed_seconds"] = res.elapsed_seconds;
    nlohmann::json optima = nlohmann::json::array();
    for (const auto& p : res.optima) optima.push_back(p.assignment());
    j["optima"] = std::move(optima);
    return j;
}

// ---------------------------------------------------------------------------
// Run configuration.

struct NetworkSource {
    std::string name;
    std::string path;                       // edge-list file, or
    std::optional<BenchmarkSpec> generate;  // in-memory generated instance
};

struct RunConfig {
    std::vector<NetworkSource> networks;
    std::vector<std::string> algorithms;
    ModularityParams gamma{};
    SolveConfig solver{};
    std::vector<unsigned long long> seeds = {1};
    bool best_of_seeds = false;  // keep only the best-modularity seed per algorithm
    bool timing = true;          // false zeroes wall-clock columns for byte-stable output
    double success_threshold = 1e-9;
    double alpha = 0.9;  // ecs parameter
    HeuristicConfig heuristics{};

    void validate() const {
        if (networks.empty()) throw std::invalid_argument("run config: no networks");
        if (algorithms.empty()) throw std::invalid_argument("run config: no algorithms");
        if (seeds.empty()) throw std::invalid_argument("run config: no seeds");
        for (const auto& a : algorithms) parse_algorithm(a);
        gamma.validate();
        solver.validate();
    }
};

inline BenchmarkSpec benchmark_spec_from_json(const nlohmann::json& j) {
    BenchmarkSpec spec;
    spec.n = j.at("n").get<int>();
    spec.tau1 = j.value("tau1", 3.0);
    spec.tau2 = j.value("tau2", 1.5);
    spec.d_min = j.at("d_min").get<int>();
    spec.d_max = j.at("d_max").get<int>();
    spec.k_min = j.at("k_min").get<int>();
    spec.k_max = j.at("k_max").get<int>();
    spec.mu = j.at("mu").get<double>();
    spec.seed = j.value("seed", 0ULL);
    return spec;
}

inline nlohmann::json benchmark_spec_to_json(const BenchmarkSpec& spec) {
    nlohmann::json j;
    j["n"] = spec.n;
    j["tau1"] = spec.tau1;
    j["tau2"] = spec.tau2;
    j["d_min"] = spec.d_min;
    j["d_max"] = spec.d_max;
    j["k_min"] = spec.k_min;
    j["k_max"] = spec.k_max;
    j["mu"] = spec.mu;
    j["seed"] = spec.seed;
    return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    if (j.contains("networks")) {
        for (const auto& item : j.at("networks")) {
            NetworkSource src;
            if (item.is_string()) {
                src.path = item.get<std::string>();
                src.name = std::filesystem::path(src.path).stem().string();
            } else {
                src.path = item.value("path", "");
                src.name = item.value("name",
                                      std::filesystem::path(src.path).stem().string());
            }
            cfg.networks.push_back(std::move(src));
        }
    }
    if (j.contains("generate")) {
        int index = 0;
        for (const auto& item : j.at("generate")) {
            NetworkSource src;
            src.generate = benchmark_spec_from_json(item);
            src.name = item.value("name", "abcdlite_" + std::to_string(index));
            ++index;
            cfg.networks.push_back(std::move(src));
        }
    }
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("gamma")) {
        if (j.at("gamma").is_string())
            cfg.gamma = parse_gamma(j.at("gamma").get<std::string>());
        else
            cfg.gamma = parse_gamma(nlohmann::json(j.at("gamma")).dump());
    }
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        cfg.solver.tolerance = s.value("tolerance", 0.0);
        if (s.contains("time_limit_seconds") && !s.at("time_limit_seconds").is_null())
            cfg.solver.time_limit_seconds = s.at("time_limit_seconds").get<double>();
        if (s.contains("node_limit") && !s.at("node_limit").is_null())
            cfg.solver.node_limit = s.at("node_limit").get<long long>();
        cfg.solver.enumerate_all = s.value("enumerate_all", true);
        cfg.solver.seed = s.value("seed", 0ULL);
    } else {
        cfg.solver.enumerate_all = true;
    }
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<unsigned long long>>();
    cfg.best_of_seeds = j.value("best_of_seeds", false);
    cfg.timing = j.value("timing", true);
    cfg.success_threshold = j.value("success_threshold", 1e-9);
    cfg.alpha = j.value("alpha", 0.9);
    if (j.contains("heuristics")) {
        const auto& h = j.at("heuristics");
        cfg.heuristics.max_passes = h.value("max_passes", 100);
        cfg.heuristics.theta = h.value("theta", 0.01);
        if (h.contains("combo_max_communities") && !h.at("combo_max_communities").is_null())
            cfg.heuristics.combo_max_communities = h.at("combo_max_communities").get<int>();
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// The run pipeline.

struct NetworkInfo {
    std::string name;
    int n = 0;
    int m = 0;
    double baseline_seconds = 0.0;
    bool baseline_unavailable = false;
};

struct RunOutput {
    std::vector<EvalRecord> records;
    std::vector<NetworkInfo> networks;
};

namespace detail {

struct AlgorithmRun {
    Partition partition;
    double q_float = 0.0;
    Ratio q_exact{0, 1};
    double seconds = 0.0;
    double gap = std::numeric_limits<double>::quiet_NaN();
};

inline AlgorithmRun run_algorithm(const Graph& g, const AlgorithmId& id, const RunConfig& cfg,
                                  unsigned long long seed) {
    HeuristicConfig hcfg = cfg.heuristics;
    hcfg.seed = seed;
    hcfg.gamma = cfg.gamma;
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Partition> part;
    double gap = std::numeric_limits<double>::quiet_NaN();
    switch (id.kind) {
        case AlgorithmId::Kind::cnm: part = cnm(g, hcfg); break;
        case AlgorithmId::Kind::louvain: part = louvain(g, hcfg); break;
        case AlgorithmId::Kind::leiden: part = leiden(g, hcfg); break;
        case AlgorithmId::Kind::combo: part = combo(g, hcfg); break;
        case AlgorithmId::Kind::exact:
        case AlgorithmId::Kind::bnb: {
            SolveConfig scfg = cfg.solver;
            scfg.enumerate_all = false;
            scfg.tolerance = id.kind == AlgorithmId::Kind::bnb ? id.tolerance : 0.0;
            scfg.seed = seed;
            SolveResult res = branch_and_bound_max(g, cfg.gamma, scfg);
            part = res.optima.front();
            gap = res.gap;
            break;
        }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    AlgorithmRun run{std::move(*part), 0.0, {0, 1}, seconds, gap};
    run.q_exact = modularity(g, run.partition, cfg.gamma);
    run.q_float = run.q_exact.value();
    return run;
}

}  // namespace detail

inline Graph load_network(const NetworkSource& src) {
    if (src.generate) return generate(*src.generate).graph;
    std::ifstream in(src.path);
    if (!in) throw std::runtime_error("cannot open network file: " + src.path);
    return load_edge_list(in).graph;
}

// Runs exact enumeration as the baseline, then every (algorithm, seed), and
// derives similarity columns with the max-over-optima protocol. Per-network
// failures are isolated: the affected rows carry baseline_unavailable.
inline RunOutput run_evaluation(const RunConfig& cfg, std::ostream* log = nullptr) {
    cfg.validate();
    RunOutput out;

    for (const auto& src : cfg.networks) {
        Graph g = load_network(src);
        NetworkInfo info{src.name, g.node_count(), g.edge_count(), 0.0, false};

        std::vector<Partition> optima;
        Ratio q_star{0, 1};
        bool baseline_ok = false;
        if (g.edge_count() >= 1) {
            SolveConfig scfg = cfg.solver;
            scfg.tolerance = 0.0;
            SolveResult base = scfg.enumerate_all ? enumerate_optima(g, cfg.gamma, scfg)
                                                  : branch_and_bound_max(g, cfg.gamma, scfg);
            info.baseline_seconds = cfg.timing ? base.elapsed_seconds : 0.0;
            baseline_ok = base.proven_optimal;
            optima = base.optima;
            q_star = base.q_lb;
        }
        info.baseline_unavailable = !baseline_ok;
        if (log)
            (*log) << "network " << src.name << ": n=" << info.n << " m=" << info.m
                   << (baseline_ok ? " baseline ok q*=" + std::to_string(q_star.value())
                                   : " baseline unavailable")
                   << " (" << info.baseline_seconds << "s)\n";
        out.networks.push_back(info);

        for (const auto& alg_name : cfg.algorithms) {
            AlgorithmId id = parse_algorithm(alg_name);
            std::vector<detail::AlgorithmRun> runs;
            std::vector<unsigned long long> run_seeds;
            for (auto seed : cfg.seeds) {
                runs.push_back(detail::run_algorithm(g, id, cfg, seed));
                run_seeds.push_back(seed);
            }
            if (cfg.best_of_seeds && runs.size() > 1) {
                std::size_t best = 0;
                for (std::size_t i = 1; i < runs.size(); ++i)
                    if (runs[best].q_exact < runs[i].q_exact) best = i;
                runs = {runs[best]};
                run_seeds = {run_seeds[best]};
            }

            for (std::size_t i = 0; i < runs.size(); ++i) {
                const auto& run = runs[i];
                EvalRecord rec;
                rec.network = src.name;
                rec.algorithm = alg_name;
                rec.seed = run_seeds[i];
                rec.q_alg = run.q_float;
                rec.k_alg = run.partition.community_count();
                rec.solve_seconds = cfg.timing ? run.seconds : 0.0;
                rec.gap = run.gap;
                rec.baseline_unavailable = !baseline_ok;
                if (baseline_ok) {
                    rec.q_star = q_star.value();
                    // A partition matching Q* exactly is itself optimal; make
                    // sure the similarity protocol sees it even if it was not
                    // among the enumerated optima (partial enumerations).
                    std::vector<Partition> pool = optima;
                    if (run.q_exact == q_star) {
                        Partition canon = run.partition.canonical();
                        if (std::find(pool.begin(), pool.end(), canon) == pool.end())
                            pool.push_back(canon);
                    }
                    int best_ami_index = -1;
                    SimilarityReport rep = compare_to_optima(run.partition, pool, run.q_float,
                                                             rec.q_star, cfg.alpha,
                                                             &best_ami_index);
                    rec.gop = rep.gop;
                    rec.ami = rep.ami;
                    rec.rmi = rep.rmi;
                    rec.ecs = rep.ecs;
                    rec.optima_count = static_cast<int>(optima.size());
                    rec.rmi_approximate = rep.rmi_approximate;
                    rec.k_star = best_ami_index >= 0
                                     ? pool[best_ami_index].community_count()
                                     : optima.front().community_count();
                }
                out.records.push_back(std::move(rec));
            }
        }
    }

    std::sort(out.records.begin(), out.records.end(),
              [](const EvalRecord& a, const EvalRecord& b) {
                  if (a.network != b.network) return a.network < b.network;
                  if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                  return a.seed < b.seed;
              });
    std::sort(out.networks.begin(), out.networks.end(),
              [](const NetworkInfo& a, const NetworkInfo& b) { return a.name < b.name; });
    return out;
}

// ---------------------------------------------------------------------------
// Reports.

struct BoxStats {
    double q1 = 0, median = 0, q3 = 0;
    double whisker_low = 0, whisker_high = 0;
    int count = 0;
};

// Quartiles by linear interpolation between closest ranks; whiskers run from
// the nearest hinge to the farthest datapoint within 1.5*IQR.
inline BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("box_stats of empty sample");
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        double pos = p * (values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        double frac = pos - lo;
        if (lo + 1 >= values.size()) return values.back();
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };
    BoxStats s;
    s.count = static_cast<int>(values.size());
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    const double iqr = s.q3 - s.q1;
    for (double v : values) {  // sorted: first admissible point is the whisker
        if (v >= s.q1 - 1.5 * iqr) {
            s.whisker_low = v;
            break;
        }
    }
    for (auto it = values.rbegin(); it != values.rend(); ++it) {
        if (*it <= s.q3 + 1.5 * iqr) {
            s.whisker_high = *it;
            break;
        }
    }
    return s;
}

struct ReportFiles {
    std::string success_rates_csv;
    std::string scatter_csv;
    std::string distributions_csv;
    std::string time_bins_csv;  // empty when no network size table is available
    nlohmann::json summary;
};

// Networks' edge counts (for the time bins); may be empty.
inline ReportFiles build_report(const std::vector<EvalRecord>& records,
                                const std::map<std::string, int>& edges_of_network,
                                double success_threshold = 1e-9) {
    if (records.empty()) throw std::invalid_argument("empty record table");
    ReportFiles out;

    std::set<std::string> algorithms;
    for (const auto& r : records) algorithms.insert(r.algorithm);

    // Success rates: fraction of evaluable records with gop >= 1 - guard.
    out.success_rates_csv = "algorithm,records,successes,success_rate\n";
    std::map<std::string, std::pair<int, int>> tally;  // algorithm -> (evaluable, successes)
    for (const auto& r : records) {
        if (r.baseline_unavailable || std::isnan(r.gop)) continue;
        auto& [total, wins] = tally[r.algorithm];
        ++total;
        if (r.gop >= 1.0 - success_threshold) ++wins;
    }
    double rate_sum = 0.0;
    int rated = 0;
    for (const auto& alg : algorithms) {
        auto it = tally.find(alg);
        int total = it == tally.end() ? 0 : it->second.first;
        int wins = it == tally.end() ? 0 : it->second.second;
        double rate = total == 0 ? std::numeric_limits<double>::quiet_NaN()
                                 : static_cast<double>(wins) / total;
        out.success_rates_csv += alg + "," + std::to_string(total) + "," + std::to_string(wins) +
                                 "," + detail::fmt_double(rate) + "\n";
        if (total > 0) {
            rate_sum += rate;
            ++rated;
        }
    }

    // Scatter rows with the above-45-degree-line flags (similarity <= gop).
    out.scatter_csv =
        "network,algorithm,seed,gop,ami,rmi,ecs,above45_ami,above45_rmi,above45_ecs\n";
    for (const auto& r : records) {
        if (r.baseline_unavailable || std::isnan(r.gop)) continue;
        auto flag = [&](double sim) {
            if (std::isnan(sim)) return std::string();
            return std::string(sim <= r.gop ? "true" : "false");
        };
        out.scatter_csv += r.network + "," + r.algorithm + "," + std::to_string(r.seed) + "," +
                           detail::fmt_double(r.gop) + "," + detail::fmt_double(r.ami) + "," +
                           detail::fmt_double(r.rmi) + "," + detail::fmt_double(r.ecs) + "," +
                           flag(r.ami) + "," + flag(r.rmi) + "," + flag(r.ecs) + "\n";
    }

    // Distribution summaries per algorithm and measure.
    out.distributions_csv =
        "# quartiles: linear interpolation between closest ranks; whiskers: farthest point "
        "within 1.5*IQR of the nearest hinge\n"
        "algorithm,measure,count,q1,median,q3,whisker_low,whisker_high\n";
    const char* measure_names[3] = {"ami", "rmi", "ecs"};
    for (const auto& alg : algorithms) {
        for (int mi = 0; mi < 3; ++mi) {
            std::vector<double> vals;
            for (const auto& r : records) {
                if (r.algorithm != alg || r.baseline_unavailable) continue;
                double v = mi == 0 ? r.ami : mi == 1 ? r.rmi : r.ecs;
                if (!std::isnan(v)) vals.push_back(v);
            }
            if (vals.empty()) continue;
            BoxStats s = box_stats(vals);
            out.distributions_csv += alg + std::string(",") + measure_names[mi] + "," +
                                     std::to_string(s.count) + "," + detail::fmt_double(s.q1) +
                                     "," + detail::fmt_double(s.median) + "," +
                                     detail::fmt_double(s.q3) + "," +
                                     detail::fmt_double(s.whisker_low) + "," +
                                     detail::fmt_double(s.whisker_high) + "\n";
        }
    }

    // Solve-time means in four log-spaced bins by edge count.
    if (!edges_of_network.empty()) {
        int m_lo = std::numeric_limits<int>::max(), m_hi = 0;
        bool any = false;
        for (const auto& r : records) {
            auto it = edges_of_network.find(r.network);
            if (it == edges_of_network.end()) continue;
            m_lo = std::min(m_lo, it->second);
            m_hi = std::max(m_hi, it->second);
            any = true;
        }
        if (any) {
            const int bins = 4;
            const double log_lo = std::log(std::max(1, m_lo));
            const double log_hi = std::log(std::max(1, m_hi));
            auto bin_of = [&](int m) {
                if (log_hi <= log_lo) return 0;
                int b = static_cast<int>(bins * (std::log(std::max(1, m)) - log_lo) /
                                         (log_hi - log_lo));
                return std::clamp(b, 0, bins - 1);
            };
            out.time_bins_csv = "algorithm,bin,m_low,m_high,records,mean_solve_seconds\n";
            for (const auto& alg : algorithms) {
                std::vector<double> sums(bins, 0.0);
                std::vector<int> counts(bins, 0);
                for (const auto& r : records) {
                    if (r.algorithm != alg) continue;
                    auto it = edges_of_network.find(r.network);
                    if (it == edges_of_network.end() || std::isnan(r.solve_seconds)) continue;
                    int b = bin_of(it->second);
                    sums[b] += r.solve_seconds;
                    ++counts[b];
                }
                for (int b = 0; b < bins; ++b) {
                    if (counts[b] == 0) continue;
                    double blo = std::exp(log_lo + (log_hi - log_lo) * b / bins);
                    double bhi = std::exp(log_lo + (log_hi - log_lo) * (b + 1) / bins);
                    out.time_bins_csv += alg + "," + std::to_string(b) + "," +
                                         detail::fmt_double(blo) + "," + detail::fmt_double(bhi) +
                                         "," + std::to_string(counts[b]) + "," +
                                         detail::fmt_double(sums[b] / counts[b]) + "\n";
                }
            }
        }
    }

    out.summary["schema_version"] = kSchemaVersion;
    out.summary["success_threshold"] = success_threshold;
    out.summary["quartile_method"] = "linear interpolation between closest ranks";
    out.summary["whisker_method"] = "farthest datapoint within 1.5*IQR of the nearest hinge";
    out.summary["average_success_rate"] =
        rated == 0 ? nlohmann::json() : nlohmann::json(rate_sum / rated);
    return out;
}

}  // namespace modmax::harness
