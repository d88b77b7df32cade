#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace salvo {

struct Edge {
    int a = 0;  // 0-based node indices
    int b = 0;
    double weight = 1.0;
};

// Undirected weighted communication graph over n agents.
// Invariants enforced at construction: symmetric adjacency, zero diagonal,
// non-negative weights. Immutable afterwards, safe to share across threads.
class CommGraph {
public:
    CommGraph(int n, const std::vector<Edge>& edges);
    CommGraph(int n, std::vector<double> adjacency_row_major);

    int size() const { return n_; }
    double weight(int i, int j) const { return adj_[static_cast<size_t>(i) * n_ + j]; }
    double degree(int i) const { return degree_[i]; }
    double total_degree() const;
    const std::vector<double>& adjacency() const { return adj_; }
    std::vector<Edge> edges() const;

    bool operator==(const CommGraph& other) const = default;

private:
    int n_;
    std::vector<double> adj_;     // row-major n x n
    std::vector<double> degree_;  // row sums
};

// Graph Laplacian, row-major: l_ii = sum_j a_ij, l_ij = -a_ij. Rows sum to zero.
std::vector<double> laplacian(const CommGraph& g);

// True iff every pair of nodes is joined by a path of positive-weight edges.
bool is_connected(const CommGraph& g);

// All eigenvalues of a symmetric matrix (row-major, size n*n), ascending.
// Cyclic Jacobi rotations; sweeps until every off-diagonal magnitude is
// below 1e-12.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

// Algebraic connectivity: the second-smallest Laplacian eigenvalue.
// Throws if the graph is not connected.
double algebraic_connectivity(const CommGraph& g);

// Piecewise-constant (right-continuous) topology as a function of time.
// First segment must start at t = 0; every segment graph must be connected.
class TopologySchedule {
public:
    struct Segment {
        double t_start;
        CommGraph graph;

        bool operator==(const Segment&) const = default;
    };

    explicit TopologySchedule(std::vector<Segment> segments);
    static TopologySchedule fixed(CommGraph g);

    const std::vector<Segment>& segments() const { return segments_; }
    int agent_count() const;

    bool operator==(const TopologySchedule& other) const = default;

private:
    std::vector<Segment> segments_;
};

// Graph of the last segment with t_start <= t. Throws for t < 0.
const CommGraph& graph_at(const TopologySchedule& schedule, double t);

}  // namespace salvo
