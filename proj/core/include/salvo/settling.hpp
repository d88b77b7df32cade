#pragma once

#include <optional>

#include "salvo/guidance.hpp"
#include "salvo/trajectory.hpp"

namespace salvo {

// Scalar fixed-time system  y' = -a*pow_odd(y, m/n) - b*pow_odd(y, p/q)
// with a, b > 0 and positive odd integers m > n, p < q. Its settling time is
// bounded independently of y(0).
struct FixedTimeSpec {
    double a = 1.0;
    double b = 1.0;
    int m = 3;
    int n = 1;
    int p = 1;
    int q = 3;

    void validate() const;
    // q(m-n) / (n(q-p)); the conservative bound below applies when <= 1.
    double theta() const;
};

// (1/a)*n/(m-n) + (1/b)*q/(q-p)
double settling_bound(const FixedTimeSpec& s);

// (q/(q-p)) * ( atan(sqrt(a/b))/sqrt(a*b) + 1/(a*theta) ); requires theta <= 1.
double settling_bound_conservative(const FixedTimeSpec& s);

// Brute-force check: integrates the scalar system from y0 with adaptive-step
// RK4 (step halving near the origin) and returns the first time |y| < tol.
// Throws if |y| has not shrunk below tol by ten times the analytic bound.
double settling_time_numeric(const FixedTimeSpec& s, double y0, double tol);

enum class BoundFormula { direct, conservative };

struct StageBound {
    double seconds = 0.0;
    BoundFormula formula = BoundFormula::direct;
};

// Settling-time bound for the sliding variables s_i reaching zero:
// a = k1 * n^((n2-m2)/(2 n2)), b = k2 with the reach exponents; the
// conservative formula is used when its theta <= 1, the direct one otherwise.
StageBound reaching_bound(const GuidanceParams& p, int n_agents);

// Total bound for the range/closing-velocity consensus errors reaching zero:
// the reaching bound plus the surface-ride stage with a = alpha1 *
// n^((n1-m1)/(2 n1)), b = alpha2 and the surface exponents.
StageBound consensus_stage_bound(const GuidanceParams& p, int n_agents);
double consensus_bound(const GuidanceParams& p, int n_agents, double reaching_seconds);

// Bound for the transverse velocities reaching zero: a = k3 *
// n^((n3-m3)/(2 n3)), b = k4 with the transverse exponents; when the
// conservative form applies the smaller of the two is returned.
StageBound transverse_bound(const GuidanceParams& p, int n_agents);

struct BoundReport {
    double reaching = 0.0;        // surface reaching stage (T1)
    double consensus = 0.0;       // range/velocity consensus, includes reaching (T2)
    double transverse = 0.0;      // transverse velocity alignment (T3)
    BoundFormula reaching_formula = BoundFormula::direct;
    BoundFormula consensus_formula = BoundFormula::direct;
    BoundFormula transverse_formula = BoundFormula::direct;
};

BoundReport compute_bounds(const GuidanceParams& p, int n_agents);

enum class SettlingSignal { xi_r, xi_vr, surface, v_q, heading };

// First logged time t* after which max-over-agents |signal| stays below the
// threshold for the rest of the log (last-crossing semantics). nullopt if the
// signal never settles within the log.
std::optional<double> measure_settling(const TrajectoryLog& log, SettlingSignal signal,
                                       double threshold);

}  // namespace salvo
