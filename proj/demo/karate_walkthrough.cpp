// Loads an edge list, runs the four heuristics and the exact solver, and
// prints how close each heuristic lands to the proven optimum.
//
//   ./karate_walkthrough path/to/edgelist.txt

#include <fstream>
#include <iostream>

#include "modmax/exact.hpp"
#include "modmax/graph.hpp"
#include "modmax/heuristics.hpp"
#include "modmax/metrics.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <edgelist>\n";
        return 1;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot open " << argv[1] << "\n";
        return 1;
    }
    auto loaded = modmax::load_edge_list(in);
    auto giant = modmax::giant_component(loaded.graph);
    const auto& g = giant.graph;
    std::cout << "graph: n=" << g.node_count() << " m=" << g.edge_count() << "\n";

    auto exact = modmax::enumerate_optima(g);
    std::cout << "exact: Q* = " << exact.q_lb.value() << " (" << exact.q_lb.str() << "), "
              << exact.optima.size() << " optimal partition(s), " << exact.nodes_explored
              << " nodes, " << exact.elapsed_seconds << "s\n";

    struct Entry {
        const char* name;
        modmax::Partition (*run)(const modmax::Graph&, const modmax::HeuristicConfig&);
    };
    const Entry entries[] = {{"cnm", &modmax::cnm},
                             {"louvain", &modmax::louvain},
                             {"leiden", &modmax::leiden},
                             {"combo", &modmax::combo}};
    for (const auto& e : entries) {
        modmax::HeuristicConfig cfg;
        cfg.seed = 1;
        auto part = e.run(g, cfg);
        double q = modmax::modularity(g, part).value();
        auto rep = modmax::compare_to_optima(part, exact.optima, q, exact.q_lb.value());
        std::cout << e.name << ": Q = " << q << ", k = " << part.community_count()
                  << ", GOP = " << rep.gop << ", AMI = " << rep.ami << ", RMI = " << rep.rmi
                  << ", ECS = " << rep.ecs << "\n";
    }
    return 0;
}
