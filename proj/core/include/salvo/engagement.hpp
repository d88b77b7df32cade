#pragma once

#include <array>
#include <optional>

namespace salvo {

// Per-missile state in its own line-of-sight frame.
//   r      range to go, m (> 0 while in flight)
//   lambda LOS angle, rad
//   v_r    velocity along the LOS, m/s (negative while closing)
//   v_q    velocity perpendicular to the LOS, m/s
struct MissileState {
    double r = 0.0;
    double lambda = 0.0;
    double v_r = 0.0;
    double v_q = 0.0;
};

struct InitialCondition {
    double r0 = 0.0;    // m
    double v0 = 0.0;    // m/s, speed (>= 0)
    double phi0 = 0.0;  // rad, initial heading error
};

// Missile acceleration components resolved in the LOS frame.
struct ControlInput {
    double u_r = 0.0;  // m/s^2, along the LOS
    double u_q = 0.0;  // m/s^2, perpendicular to the LOS
};

struct TargetModel {
    enum class Kind { stationary, sinusoidal };
    Kind kind = Kind::stationary;
    // sinusoidal: both inertial axes get amplitude*sin(frequency*t + phase)
    double amplitude = 0.0;  // m/s^2
    double frequency = 0.0;  // rad/s
    double phase = 0.0;      // rad
    // initial target position/velocity, kept for reporting only
    std::optional<std::array<double, 2>> position;
    std::optional<std::array<double, 2>> velocity;

    bool operator==(const TargetModel&) const = default;
};

struct StateDerivative {
    double r_dot = 0.0;
    double lambda_dot = 0.0;
    double v_r_dot = 0.0;
    double v_q_dot = 0.0;
};

// Initial LOS-frame state: r = r0, lambda = 0,
// v_r = -v0*cos(phi0) (closing), v_q = v0*sin(phi0).
MissileState init_state(const InitialCondition& ic);

// Inertial target acceleration (a_x, a_y) at time t.
std::array<double, 2> target_accel(const TargetModel& model, double t);

// Rotate an inertial acceleration into the LOS frame at angle lambda:
// u_T_r = a_x*cos(l) + a_y*sin(l), u_T_q = -a_x*sin(l) + a_y*cos(l).
std::array<double, 2> project_target_accel(double a_x, double a_y, double lambda);

// Planar engagement kinematics:
//   r'   = v_r
//   l'   = v_q / r
//   v_r' = v_q^2/r - u_r + u_T_r
//   v_q' = -v_q*v_r/r - u_q + u_T_q
// Throws for r <= 0; callers clamp r to a floor before evaluating.
StateDerivative state_derivative(const MissileState& s, const ControlInput& u,
                                 const std::array<double, 2>& u_target);

// Angle between the velocity vector and the closing LOS direction,
// atan2(v_q, -v_r) in (-pi, pi]. Throws for zero velocity.
double heading_error(const MissileState& s);

}  // namespace salvo
