#pragma once

#include <random>
#include <vector>

#include "salvo/graph.hpp"

namespace test_helpers {

// Random connected graph: random spanning tree plus extra edges.
inline salvo::CommGraph random_connected_graph(std::mt19937& rng, int n,
                                               bool unit_weights = true) {
    std::vector<salvo::Edge> edges;
    std::uniform_real_distribution<double> weight(0.2, 2.0);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.push_back({parent(rng), v, unit_weights ? 1.0 : weight(rng)});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (coin(rng) == 0) {
                edges.push_back({i, j, unit_weights ? 1.0 : weight(rng)});
            }
        }
    }
    return salvo::CommGraph(n, edges);
}

inline salvo::CommGraph ring(int n, double w = 1.0) {
    std::vector<salvo::Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.push_back({i, (i + 1) % n, w});
    }
    return salvo::CommGraph(n, edges);
}

inline salvo::CommGraph complete(int n) {
    std::vector<salvo::Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.push_back({i, j, 1.0});
        }
    }
    return salvo::CommGraph(n, edges);
}

}  // namespace test_helpers
