#include <doctest.h>

#include <cmath>
#include <random>

#include "salvo/errors.hpp"
#include "salvo/settling.hpp"

using namespace salvo;

TEST_SUITE_BEGIN("settling");

namespace {

GuidanceParams sec4_params() { return GuidanceParams{}; }

FixedTimeSpec spec(double a, double b, int m, int n, int p, int q) {
    FixedTimeSpec s;
    s.a = a;
    s.b = b;
    s.m = m;
    s.n = n;
    s.p = p;
    s.q = q;
    return s;
}

TrajectoryLog log_from(const std::vector<double>& times, const std::vector<double>& xi_r) {
    TrajectoryLog log;
    log.time = times;
    for (double v : xi_r) {
        AgentSample a;
        a.xi_r = v;
        log.samples.push_back({a});
    }
    return log;
}

}  // namespace

TEST_CASE("direct bound arithmetic") {
    CHECK(settling_bound(spec(1, 1, 3, 1, 1, 3)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(settling_bound(spec(2, 2, 5, 3, 3, 5)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(settling_bound(spec(1, 1, 7, 5, 3, 5)) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(settling_bound(spec(0.0, 1, 3, 1, 1, 3)), ValidationError);
    CHECK_THROWS_AS(settling_bound(spec(1, 1, 2, 1, 1, 3)), ValidationError);
    CHECK_THROWS_AS(settling_bound(spec(1, 1, 1, 3, 1, 3)), ValidationError);  // m < n
    CHECK_THROWS_AS(settling_bound(spec(1, 1, 3, 1, 3, 1)), ValidationError);  // p > q
}

TEST_CASE("conservative bound arithmetic and applicability") {
    // theta = 1: (5/2) * (atan(1) + 1)
    const double expect = 2.5 * (M_PI / 4.0 + 1.0);
    CHECK(settling_bound_conservative(spec(1, 1, 7, 5, 3, 5)) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(settling_bound_conservative(spec(1, 1, 7, 5, 3, 5)) ==
          doctest::Approx(4.463495408493621).epsilon(1e-12));
    // theta = 3 > 1: the formula does not apply
    CHECK_THROWS_AS(settling_bound_conservative(spec(1, 1, 3, 1, 1, 3)), ValidationError);
}

TEST_CASE("conservative bound decreases in a") {
    const double lo = settling_bound_conservative(spec(0.5, 1, 7, 5, 3, 5));
    const double hi = settling_bound_conservative(spec(2.0, 1, 7, 5, 3, 5));
    CHECK(hi < lo);
}

TEST_CASE("numeric settling oracle basics") {
    const FixedTimeSpec s = spec(1, 1, 3, 1, 1, 3);
    CHECK(settling_time_numeric(s, 0.0, 1e-6) == 0.0);
    const double t1 = settling_time_numeric(s, 1.0, 1e-6);
    CHECK(t1 > 0.0);
    CHECK(t1 <= settling_bound(s));
    // fixed-time: the measured settling stays below the same bound for any y0
    const double t_huge = settling_time_numeric(s, 1e6, 1e-6);
    CHECK(t_huge <= settling_bound(s));
    CHECK(settling_time_numeric(s, -1e6, 1e-6) == t_huge);  // odd symmetry
}

TEST_CASE("oracle respects both bounds over random specs") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> gain(0.1, 5.0);
    const int odd[] = {1, 3, 5, 7, 9, 11, 13};
    for (int trial = 0; trial < 20; ++trial) {
        FixedTimeSpec s;
        s.a = gain(rng);
        s.b = gain(rng);
        do {
            s.m = odd[rng() % 7];
            s.n = odd[rng() % 7];
        } while (s.m <= s.n);
        do {
            s.p = odd[rng() % 7];
            s.q = odd[rng() % 7];
        } while (s.p >= s.q);
        const double direct = settling_bound(s);
        for (double y0 : {1e-2, 1.0, 1e3, 1e6}) {
            const double t = settling_time_numeric(s, y0, 1e-6);
            CHECK(t <= direct);
            if (s.theta() <= 1.0) {
                CHECK(t <= settling_bound_conservative(s));
            }
        }
    }
}

TEST_CASE("reaching-stage bound for the reference gains") {
    const StageBound t1 = reaching_bound(sec4_params(), 5);
    CHECK(t1.formula == BoundFormula::conservative);  // theta2 = 7/11
    CHECK(t1.seconds == doctest::Approx(25.712256914135697).epsilon(1e-12));
}

TEST_CASE("reaching bound falls back to the direct formula") {
    GuidanceParams p = sec4_params();
    p.reach_super = OddRatio(3, 1);
    p.reach_sub = OddRatio(1, 3);
    p.k1 = 1.0;
    p.k2 = 1.0;
    const StageBound t1 = reaching_bound(p, 1);  // theta = 3 > 1, n-factor = 1
    CHECK(t1.formula == BoundFormula::direct);
    CHECK(t1.seconds == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("consensus bound for the reference gains") {
    const GuidanceParams p = sec4_params();
    const StageBound t1 = reaching_bound(p, 5);
    const double t2 = consensus_bound(p, 5, t1.seconds);
    CHECK(t2 == doctest::Approx(48.92947764330808).epsilon(1e-12));
    CHECK(t2 >= t1.seconds);
    // zero reaching time leaves the surface-ride stage alone
    CHECK(consensus_bound(p, 5, 0.0) ==
          doctest::Approx(23.217220729172386).epsilon(1e-12));
}

TEST_CASE("transverse bound takes the smaller applicable formula") {
    const StageBound t3 = transverse_bound(sec4_params(), 5);
    CHECK(t3.formula == BoundFormula::conservative);  // theta3 = 1, 15.011 < 15.047
    CHECK(t3.seconds == doctest::Approx(15.011475572894886).epsilon(1e-12));

    GuidanceParams p = sec4_params();
    p.transverse_super = OddRatio(3, 1);
    p.transverse_sub = OddRatio(1, 3);
    p.k3 = 1.0;
    p.k4 = 1.0;
    const StageBound simple = transverse_bound(p, 1);
    CHECK(simple.seconds == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("bound report is internally ordered") {
    const BoundReport report = compute_bounds(sec4_params(), 5);
    CHECK(report.reaching > 0.0);
    CHECK(report.consensus >= report.reaching);
    CHECK(report.transverse > 0.0);
}

TEST_CASE("power-mean inequalities behind the stacked bounds") {
    // for x_i >= 0: sum x^p1 >= (sum x)^p1 when p1 in (0,1];
    // sum x^p2 >= n^(1-p2) (sum x)^p2 when p2 > 1
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> xu(0.0, 10.0);
    std::uniform_real_distribution<double> p1u(0.05, 1.0);
    std::uniform_real_distribution<double> p2u(1.0 + 1e-6, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        std::vector<double> x(n);
        double sum = 0.0;
        for (double& v : x) {
            v = xu(rng);
            sum += v;
        }
        const double p1 = p1u(rng);
        const double p2 = p2u(rng);
        double lhs1 = 0.0;
        double lhs2 = 0.0;
        for (double v : x) {
            lhs1 += std::pow(v, p1);
            lhs2 += std::pow(v, p2);
        }
        CHECK(lhs1 >= std::pow(sum, p1) - 1e-9);
        CHECK(lhs2 >= std::pow(n, 1.0 - p2) * std::pow(sum, p2) - 1e-9);
    }
}

TEST_CASE("settling measurement semantics") {
    // identically zero signal settles at the first logged time
    CHECK(measure_settling(log_from({0.0, 0.1, 0.2}, {0.0, 0.0, 0.0}), SettlingSignal::xi_r,
                           1.0) == 0.0);
    // dips below then re-exceeds: the final entry wins
    const TrajectoryLog log =
        log_from({0.0, 0.1, 0.2, 0.3, 0.4}, {5.0, 0.5, 2.0, 0.4, 0.3});
    CHECK(measure_settling(log, SettlingSignal::xi_r, 1.0) == doctest::Approx(0.3));
    // never settles within the log
    CHECK_FALSE(
        measure_settling(log_from({0.0, 0.1}, {5.0, 5.0}), SettlingSignal::xi_r, 1.0)
            .has_value());
    CHECK_THROWS_AS(measure_settling(log, SettlingSignal::xi_r, 0.0), ValidationError);
}

TEST_SUITE_END();
