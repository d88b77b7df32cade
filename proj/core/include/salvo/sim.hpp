#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "salvo/engagement.hpp"
#include "salvo/graph.hpp"
#include "salvo/guidance.hpp"
#include "salvo/settling.hpp"
#include "salvo/trajectory.hpp"

namespace salvo {

struct SettlingThresholds {
    double xi_r = 1.0;      // m
    double xi_vr = 1.0;     // m/s
    double heading = 0.01;  // rad

    bool operator==(const SettlingThresholds&) const = default;
};

struct SimConfig {
    double dt = 1e-3;      // s
    double t_max = 120.0;  // s
    double r_stop = 1.0;   // arrival radius, m
    double r_floor = 0.1;  // denominator guard, m
    ControlResolutionMode mode = ControlResolutionMode::delayed;
    TargetModel target;
    TopologySchedule schedule =
        TopologySchedule::fixed(CommGraph(2, std::vector<Edge>{{0, 1, 1.0}}));
    GuidanceParams guidance;
    SettlingThresholds settling;

    void validate() const;
};

enum class Termination { completed, timeout };

struct SimResult {
    std::vector<double> arrival_times;  // NaN for agents that never arrived
    double arrival_spread = 0.0;        // max - min over arrived agents
    bool all_arrived = false;
    std::optional<double> settle_xi_r;
    std::optional<double> settle_xi_vr;
    std::optional<double> settle_heading;
    BoundReport bounds;
    Termination termination = Termination::completed;
};

// One closed-loop step: controls resolved once at step start (zero-order hold
// across the step), then classical RK4 on the kinematics with r clamped to
// r_floor inside derivative evaluations and the target acceleration
// re-evaluated and re-projected at substage times. No arrival handling.
std::pair<std::vector<MissileState>, std::vector<ControlInput>> step(
    std::span<const MissileState> states, double t, std::span<const double> prev_u_r,
    const SimConfig& cfg);

// Full run from the given initial conditions: integrates until every agent
// has r <= r_stop or t reaches t_max. Arrived agents are frozen (state held,
// controls zero, last transmitted values held for neighbors); per-agent
// arrival times are linearly interpolated across the crossing step. The
// topology is re-read from the schedule every step.
std::pair<SimResult, TrajectoryLog> run(const SimConfig& cfg,
                                        std::span<const InitialCondition> initial);

// Human-readable run summary.
void write_summary(const SimResult& result, const SimConfig& cfg, std::ostream& out);

// Machine-readable key = value lines.
void write_kv(const SimResult& result, std::ostream& out);

}  // namespace salvo
