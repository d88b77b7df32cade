#include "salvo/engagement.hpp"

#include <cmath>

#include "salvo/errors.hpp"

namespace salvo {

MissileState init_state(const InitialCondition& ic) {
    if (!(ic.r0 > 0.0)) {
        throw ValidationError("init_state: initial range must be positive");
    }
    if (!(ic.v0 >= 0.0)) {
        throw ValidationError("init_state: initial speed must be non-negative");
    }
    MissileState s;
    s.r = ic.r0;
    s.lambda = 0.0;
    s.v_r = -ic.v0 * std::cos(ic.phi0);
    s.v_q = ic.v0 * std::sin(ic.phi0);
    return s;
}

std::array<double, 2> target_accel(const TargetModel& model, double t) {
    if (model.kind == TargetModel::Kind::stationary) {
        return {0.0, 0.0};
    }
    const double a = model.amplitude * std::sin(model.frequency * t + model.phase);
    return {a, a};
}

std::array<double, 2> project_target_accel(double a_x, double a_y, double lambda) {
    const double c = std::cos(lambda);
    const double s = std::sin(lambda);
    return {a_x * c + a_y * s, -a_x * s + a_y * c};
}

StateDerivative state_derivative(const MissileState& s, const ControlInput& u,
                                 const std::array<double, 2>& u_target) {
    if (!(s.r > 0.0)) {
        throw NumericError("state_derivative: range must be positive");
    }
    StateDerivative d;
    d.r_dot = s.v_r;
    d.lambda_dot = s.v_q / s.r;
    d.v_r_dot = s.v_q * s.v_q / s.r - u.u_r + u_target[0];
    d.v_q_dot = -s.v_q * s.v_r / s.r - u.u_q + u_target[1];
    return d;
}

double heading_error(const MissileState& s) {
    if (s.v_r == 0.0 && s.v_q == 0.0) {
        throw ValidationError("heading_error: undefined for zero velocity");
    }
    return std::atan2(s.v_q, -s.v_r);
}

}  // namespace salvo
