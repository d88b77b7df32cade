#include "salvo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "salvo/errors.hpp"

namespace salvo {

namespace {

void validate_adjacency(const std::vector<double>& adj, int n) {
    if (n <= 0) {
        throw ValidationError("graph: agent count must be positive");
    }
    if (adj.size() != static_cast<size_t>(n) * n) {
        throw ValidationError("graph: adjacency size does not match agent count");
    }
    for (int i = 0; i < n; ++i) {
        if (adj[static_cast<size_t>(i) * n + i] != 0.0) {
            throw ValidationError("graph: self-loop at node " + std::to_string(i + 1));
        }
        for (int j = 0; j < n; ++j) {
            const double w = adj[static_cast<size_t>(i) * n + j];
            if (!(w >= 0.0)) {
                throw ValidationError("graph: negative or non-finite weight at (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
            if (w != adj[static_cast<size_t>(j) * n + i]) {
                throw ValidationError("graph: adjacency not symmetric at (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      "); directed graphs are rejected");
            }
        }
    }
}

}  // namespace

CommGraph::CommGraph(int n, std::vector<double> adjacency_row_major)
    : n_(n), adj_(std::move(adjacency_row_major)) {
    validate_adjacency(adj_, n_);
    degree_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        degree_[i] = std::accumulate(adj_.begin() + static_cast<size_t>(i) * n_,
                                     adj_.begin() + static_cast<size_t>(i + 1) * n_, 0.0);
    }
}

CommGraph::CommGraph(int n, const std::vector<Edge>& edges)
    : CommGraph(n, [&] {
          if (n <= 0) {
              throw ValidationError("graph: agent count must be positive");
          }
          std::vector<double> adj(static_cast<size_t>(n) * n, 0.0);
          for (const Edge& e : edges) {
              if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
                  throw ValidationError("graph: edge endpoint out of range");
              }
              if (e.a == e.b) {
                  throw ValidationError("graph: self-loop at node " + std::to_string(e.a + 1));
              }
              adj[static_cast<size_t>(e.a) * n + e.b] = e.weight;
              adj[static_cast<size_t>(e.b) * n + e.a] = e.weight;
          }
          return adj;
      }()) {}

double CommGraph::total_degree() const {
    return std::accumulate(degree_.begin(), degree_.end(), 0.0);
}

std::vector<Edge> CommGraph::edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (weight(i, j) > 0.0) {
                out.push_back({i, j, weight(i, j)});
            }
        }
    }
    return out;
}

std::vector<double> laplacian(const CommGraph& g) {
    const int n = g.size();
    std::vector<double> lap(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                lap[static_cast<size_t>(i) * n + j] = g.degree(i);
            } else {
                lap[static_cast<size_t>(i) * n + j] = -g.weight(i, j);
            }
        }
    }
    return lap;
}

bool is_connected(const CommGraph& g) {
    const int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        const int i = queue.back();
        queue.pop_back();
        for (int j = 0; j < n; ++j) {
            if (!seen[j] && g.weight(i, j) > 0.0) {
                seen[j] = 1;
                queue.push_back(j);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 64;
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_off = 0.0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                max_off = std::max(max_off, std::fabs(at(p, q)));
            }
        }
        if (max_off < kOffTol) {
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::fabs(apq) < kOffTol) {
                    continue;
                }
                const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

double algebraic_connectivity(const CommGraph& g) {
    if (!is_connected(g)) {
        throw ValidationError(
            "algebraic_connectivity: graph is not connected, smallest "
            "nonzero Laplacian eigenvalue is undefined");
    }
    if (g.size() == 1) {
        throw ValidationError("algebraic_connectivity: needs at least two nodes");
    }
    const std::vector<double> eig = symmetric_eigenvalues(laplacian(g), g.size());
    return eig[1];
}

TopologySchedule::TopologySchedule(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw ValidationError("schedule: needs at least one segment");
    }
    if (segments_.front().t_start != 0.0) {
        throw ValidationError("schedule: first segment must start at t = 0");
    }
    for (size_t k = 0; k < segments_.size(); ++k) {
        if (k > 0 && !(segments_[k].t_start > segments_[k - 1].t_start)) {
            throw ValidationError("schedule: segment start times must be strictly increasing");
        }
        if (segments_[k].graph.size() != segments_.front().graph.size()) {
            throw ValidationError("schedule: all segment graphs must have the same agent count");
        }
        if (!is_connected(segments_[k].graph)) {
            throw ValidationError("schedule: segment " + std::to_string(k) +
                                  " graph is not connected");
        }
    }
}

TopologySchedule TopologySchedule::fixed(CommGraph g) {
    std::vector<Segment> segs;
    segs.push_back({0.0, std::move(g)});
    return TopologySchedule(std::move(segs));
}

int TopologySchedule::agent_count() const { return segments_.front().graph.size(); }

const CommGraph& graph_at(const TopologySchedule& schedule, double t) {
    if (!(t >= 0.0)) {
        throw ValidationError("graph_at: time must be non-negative");
    }
    const auto& segs = schedule.segments();
    size_t k = 0;
    while (k + 1 < segs.size() && segs[k + 1].t_start <= t) {
        ++k;
    }
    return segs[k].graph;
}

}  // namespace salvo
