#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "salvo/errors.hpp"
#include "salvo/graph.hpp"

using namespace salvo;
using test_helpers::complete;
using test_helpers::random_connected_graph;
using test_helpers::ring;

TEST_SUITE_BEGIN("graph");

namespace {

CommGraph path3() {
    return CommGraph(3, std::vector<Edge>{{0, 1}, {1, 2}});
}

}  // namespace

TEST_CASE("laplacian of a single edge") {
    const CommGraph g(2, std::vector<Edge>{{0, 1}});
    const std::vector<double> expect{1.0, -1.0, -1.0, 1.0};
    CHECK(laplacian(g) == expect);
}

TEST_CASE("laplacian of the path 1-2-3") {
    const std::vector<double> expect{1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0};
    CHECK(laplacian(path3()) == expect);
}

TEST_CASE("laplacian of isolated nodes is zero") {
    const CommGraph g(3, std::vector<Edge>{});
    for (double v : laplacian(g)) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("laplacian rows sum to zero for random graphs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const bool unit = trial % 2 == 0;
        const CommGraph g = random_connected_graph(rng, n, unit);
        const std::vector<double> lap = laplacian(g);
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                row += lap[static_cast<size_t>(i) * n + j];
            }
            if (unit) {
                CHECK(row == 0.0);  // integer weights sum exactly
            } else {
                CHECK(std::fabs(row) < 1e-12);
            }
        }
    }
}

TEST_CASE("connectivity") {
    CHECK(is_connected(path3()));
    CHECK_FALSE(is_connected(CommGraph(2, std::vector<Edge>{})));
    CHECK(is_connected(CommGraph(1, std::vector<Edge>{})));
}

TEST_CASE("construction rejects bad graphs") {
    CHECK_THROWS_AS(CommGraph(2, std::vector<Edge>{{0, 0}}), ValidationError);
    CHECK_THROWS_AS(CommGraph(2, std::vector<Edge>{{0, 1, -1.0}}), ValidationError);
    // asymmetric adjacency (directed) rejected
    CHECK_THROWS_AS(CommGraph(2, std::vector<double>{0.0, 1.0, 0.0, 0.0}), ValidationError);
    // nonzero diagonal rejected
    CHECK_THROWS_AS(CommGraph(2, std::vector<double>{1.0, 0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("algebraic connectivity of a single edge is 2") {
    CHECK(algebraic_connectivity(CommGraph(2, std::vector<Edge>{{0, 1}})) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("path 1-2-3 has Laplacian spectrum {0, 1, 3}") {
    const std::vector<double> eig = symmetric_eigenvalues(laplacian(path3()), 3);
    CHECK(eig[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eig[2] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(algebraic_connectivity(path3()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("5-cycle matches the circulant spectrum") {
    // eigenvalues of the cycle Laplacian are 2 - 2 cos(2 pi k / n)
    const double expect = 2.0 * (1.0 - std::cos(2.0 * M_PI / 5.0));
    CHECK(algebraic_connectivity(ring(5)) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("complete graph connectivity equals n") {
    for (int n = 2; n <= 8; ++n) {
        CHECK(algebraic_connectivity(complete(n)) == doctest::Approx(n).epsilon(1e-8));
    }
}

TEST_CASE("algebraic connectivity rejects disconnected graphs") {
    CHECK_THROWS_AS(algebraic_connectivity(CommGraph(3, std::vector<Edge>{{0, 1}})),
                    ValidationError);
}

TEST_CASE("zero eigenvalue is simple for connected graphs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const CommGraph g = random_connected_graph(rng, n, false);
        const std::vector<double> eig = symmetric_eigenvalues(laplacian(g), n);
        CHECK(std::fabs(eig[0]) < 1e-9);
        CHECK(eig[1] > 1e-9);
    }
}

TEST_CASE("quadratic form bound: mT L m >= lambda_s mT m for zero-sum m") {
    std::mt19937 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const CommGraph g = random_connected_graph(rng, n, trial % 2 == 0);
        const double lam = algebraic_connectivity(g);
        const std::vector<double> lap = laplacian(g);
        std::vector<double> m(n);
        double mean = 0.0;
        for (double& v : m) {
            v = gauss(rng);
            mean += v;
        }
        mean /= n;
        for (double& v : m) {
            v -= mean;
        }
        double quad = 0.0;
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            norm2 += m[i] * m[i];
            for (int j = 0; j < n; ++j) {
                quad += m[i] * lap[static_cast<size_t>(i) * n + j] * m[j];
            }
        }
        CHECK(quad >= lam * norm2 - 1e-8);
    }
}

TEST_CASE("schedule lookup is a right-continuous step function") {
    const TopologySchedule sched({{0.0, ring(4)}, {10.0, complete(4)}});
    CHECK(graph_at(sched, 5.0) == ring(4));
    CHECK(graph_at(sched, 10.0) == complete(4));
    CHECK(graph_at(sched, 1e9) == complete(4));
    CHECK_THROWS_AS(graph_at(sched, -1.0), ValidationError);
}

TEST_CASE("schedule invariants") {
    CHECK_THROWS_AS(TopologySchedule({{1.0, ring(3)}}), ValidationError);
    CHECK_THROWS_AS(TopologySchedule({{0.0, ring(3)}, {0.0, ring(3)}}), ValidationError);
    CHECK_THROWS_AS(TopologySchedule({{0.0, CommGraph(3, std::vector<Edge>{{0, 1}})}}),
                    ValidationError);
    CHECK_THROWS_AS(TopologySchedule({{0.0, ring(3)}, {5.0, ring(4)}}), ValidationError);
}

TEST_SUITE_END();
