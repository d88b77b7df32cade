#include "salvo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "salvo/consensus.hpp"
#include "salvo/errors.hpp"

namespace salvo {

namespace {

MissileState clamped(const MissileState& s, double r_floor) {
    MissileState c = s;
    c.r = std::max(c.r, r_floor);
    return c;
}

// RK4 sub-derivative with the range clamped inside the evaluation only.
StateDerivative eval_derivative(const MissileState& s, const ControlInput& u, double t,
                                const TargetModel& target, double r_floor) {
    const MissileState sc = clamped(s, r_floor);
    const auto [ax, ay] = target_accel(target, t);
    return state_derivative(sc, u, project_target_accel(ax, ay, sc.lambda));
}

MissileState rk4_advance(const MissileState& s, const ControlInput& u, double t, double dt,
                         const TargetModel& target, double r_floor) {
    auto add = [](const MissileState& base, const StateDerivative& d, double h) {
        MissileState out = base;
        out.r += h * d.r_dot;
        out.lambda += h * d.lambda_dot;
        out.v_r += h * d.v_r_dot;
        out.v_q += h * d.v_q_dot;
        return out;
    };
    const StateDerivative k1 = eval_derivative(s, u, t, target, r_floor);
    const StateDerivative k2 = eval_derivative(add(s, k1, 0.5 * dt), u, t + 0.5 * dt, target, r_floor);
    const StateDerivative k3 = eval_derivative(add(s, k2, 0.5 * dt), u, t + 0.5 * dt, target, r_floor);
    const StateDerivative k4 = eval_derivative(add(s, k3, dt), u, t + dt, target, r_floor);
    MissileState out = s;
    out.r += dt / 6.0 * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot);
    out.lambda += dt / 6.0 * (k1.lambda_dot + 2.0 * k2.lambda_dot + 2.0 * k3.lambda_dot + k4.lambda_dot);
    out.v_r += dt / 6.0 * (k1.v_r_dot + 2.0 * k2.v_r_dot + 2.0 * k3.v_r_dot + k4.v_r_dot);
    out.v_q += dt / 6.0 * (k1.v_q_dot + 2.0 * k2.v_q_dot + 2.0 * k3.v_q_dot + k4.v_q_dot);
    return out;
}

double safe_heading(const MissileState& s) {
    if (s.v_r == 0.0 && s.v_q == 0.0) {
        return 0.0;
    }
    return heading_error(s);
}

void check_finite(const MissileState& s, int agent, double t) {
    if (!std::isfinite(s.r) || !std::isfinite(s.lambda) || !std::isfinite(s.v_r) ||
        !std::isfinite(s.v_q)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "run: non-finite state for agent %d at t = %.6f (r=%g, lambda=%g, "
                      "v_r=%g, v_q=%g)",
                      agent + 1, t, s.r, s.lambda, s.v_r, s.v_q);
        throw NumericError(buf);
    }
}

}  // namespace

void SimConfig::validate() const {
    if (!(dt > 0.0)) {
        throw ValidationError("sim: dt must be positive");
    }
    if (!(t_max > 0.0)) {
        throw ValidationError("sim: t_max must be positive");
    }
    if (!(r_floor > 0.0 && r_floor < r_stop)) {
        throw ValidationError("sim: need 0 < r_floor < r_stop");
    }
    if (!(settling.xi_r > 0.0 && settling.xi_vr > 0.0 && settling.heading > 0.0)) {
        throw ValidationError("sim: settling thresholds must be positive");
    }
    guidance.validate();
}

std::pair<std::vector<MissileState>, std::vector<ControlInput>> step(
    std::span<const MissileState> states, double t, std::span<const double> prev_u_r,
    const SimConfig& cfg) {
    const CommGraph& g = graph_at(cfg.schedule, t);
    std::vector<MissileState> for_controls(states.begin(), states.end());
    for (MissileState& s : for_controls) {
        s = clamped(s, cfg.r_floor);
    }
    const std::vector<ControlInput> controls =
        resolve_controls(for_controls, g, prev_u_r, cfg.mode, cfg.guidance);
    std::vector<MissileState> next(states.size());
    for (size_t i = 0; i < states.size(); ++i) {
        next[i] = rk4_advance(states[i], controls[i], t, cfg.dt, cfg.target, cfg.r_floor);
    }
    return {std::move(next), controls};
}

std::pair<SimResult, TrajectoryLog> run(const SimConfig& cfg,
                                        std::span<const InitialCondition> initial) {
    cfg.validate();
    const int n = cfg.schedule.agent_count();
    if (initial.size() != static_cast<size_t>(n)) {
        throw ValidationError("run: initial condition count does not match graph size");
    }
    if (n < 2) {
        throw ValidationError("run: needs at least two agents");
    }

    std::vector<MissileState> states(n);
    for (int i = 0; i < n; ++i) {
        states[i] = init_state(initial[i]);
    }
    std::vector<double> prev_u_r(n, 0.0);
    std::vector<char> frozen(n, 0);
    std::vector<double> arrival(n, std::numeric_limits<double>::quiet_NaN());
    int arrived_count = 0;

    TrajectoryLog log;
    const size_t max_steps = static_cast<size_t>(std::ceil(cfg.t_max / cfg.dt));
    log.time.reserve(max_steps + 1);
    log.samples.reserve(max_steps + 1);

    std::vector<MissileState> for_controls(n);
    size_t step_index = 0;
    double t = 0.0;
    Termination termination = Termination::timeout;

    auto log_step = [&](double now, const std::vector<ControlInput>& controls,
                        const ConsensusErrors& errors) {
        std::vector<AgentSample> row(n);
        for (int i = 0; i < n; ++i) {
            AgentSample& a = row[i];
            a.r = states[i].r;
            a.lambda = states[i].lambda;
            a.v_r = states[i].v_r;
            a.v_q = states[i].v_q;
            a.phi = safe_heading(states[i]);
            a.xi_r = errors.xi_r[i];
            a.xi_vr = errors.xi_vr[i];
            a.s = surface(errors.xi_r[i], errors.xi_vr[i], cfg.guidance.surface);
            a.branch = static_cast<char>(
                surface_branch(errors.xi_r[i], errors.xi_vr[i], cfg.guidance.surface));
            a.u_r = controls[i].u_r;
            a.u_q = controls[i].u_q;
            const auto [a_n, a_t] = body_accels(controls[i].u_r, controls[i].u_q, a.phi);
            a.a_n = a_n;
            a.a_t = a_t;
        }
        log.time.push_back(now);
        log.samples.push_back(std::move(row));
    };

    while (step_index * cfg.dt < cfg.t_max && arrived_count < n) {
        t = static_cast<double>(step_index) * cfg.dt;
        const CommGraph& g = graph_at(cfg.schedule, t);
        for (int i = 0; i < n; ++i) {
            for_controls[i] = clamped(states[i], cfg.r_floor);
        }
        const std::vector<ControlInput> controls =
            resolve_controls(for_controls, g, prev_u_r, cfg.mode, cfg.guidance, frozen);
        log_step(t, controls, consensus_errors(for_controls, g));

        for (int i = 0; i < n; ++i) {
            if (frozen[i]) {
                continue;
            }
            const MissileState next =
                rk4_advance(states[i], controls[i], t, cfg.dt, cfg.target, cfg.r_floor);
            check_finite(next, i, t + cfg.dt);
            if (next.r <= cfg.r_stop && states[i].r > cfg.r_stop) {
                arrival[i] = t + cfg.dt * (states[i].r - cfg.r_stop) / (states[i].r - next.r);
            } else if (next.r <= cfg.r_stop) {
                arrival[i] = t + cfg.dt;
            }
            states[i] = next;
            prev_u_r[i] = controls[i].u_r;  // held as the last transmitted value once frozen
            if (next.r <= cfg.r_stop) {
                frozen[i] = 1;
                ++arrived_count;
            }
        }
        ++step_index;
    }

    // terminal sample; controls column reads zero on the final row
    {
        t = static_cast<double>(step_index) * cfg.dt;
        const CommGraph& g = graph_at(cfg.schedule, t);
        for (int i = 0; i < n; ++i) {
            for_controls[i] = clamped(states[i], cfg.r_floor);
        }
        std::vector<ControlInput> zero(n);
        log_step(t, zero, consensus_errors(for_controls, g));
    }
    if (arrived_count == n) {
        termination = Termination::completed;
    }

    SimResult result;
    result.arrival_times = arrival;
    result.all_arrived = (arrived_count == n);
    result.termination = termination;
    if (arrived_count > 0) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double a : arrival) {
            if (std::isfinite(a)) {
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
        }
        result.arrival_spread = hi - lo;
    }
    result.settle_xi_r = measure_settling(log, SettlingSignal::xi_r, cfg.settling.xi_r);
    result.settle_xi_vr = measure_settling(log, SettlingSignal::xi_vr, cfg.settling.xi_vr);
    result.settle_heading = measure_settling(log, SettlingSignal::heading, cfg.settling.heading);
    result.bounds = compute_bounds(cfg.guidance, n);
    return {std::move(result), std::move(log)};
}

namespace {

const char* formula_name(BoundFormula f) {
    return f == BoundFormula::conservative ? "conservative" : "direct";
}

std::string opt_str(const std::optional<double>& v) {
    if (!v) {
        return "not settled";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f s", *v);
    return buf;
}

}  // namespace

void write_summary(const SimResult& result, const SimConfig& cfg, std::ostream& out) {
    out << "termination: "
        << (result.termination == Termination::completed ? "completed" : "timeout") << "\n";
    out << "arrival times (s):";
    for (double a : result.arrival_times) {
        char buf[32];
        if (std::isfinite(a)) {
            std::snprintf(buf, sizeof(buf), " %.3f", a);
        } else {
            std::snprintf(buf, sizeof(buf), " -");
        }
        out << buf;
    }
    out << "\n";
    if (result.all_arrived) {
        double mean = 0.0;
        for (double a : result.arrival_times) {
            mean += a;
        }
        mean /= static_cast<double>(result.arrival_times.size());
        char buf[96];
        std::snprintf(buf, sizeof(buf), "mean arrival: %.3f s, spread: %.4f s\n", mean,
                      result.arrival_spread);
        out << buf;
    }
    out << "settling (last crossing):\n";
    out << "  max|xi_r|  < " << cfg.settling.xi_r << " m   at " << opt_str(result.settle_xi_r)
        << "\n";
    out << "  max|xi_vr| < " << cfg.settling.xi_vr << " m/s at " << opt_str(result.settle_xi_vr)
        << "\n";
    out << "  max|phi|   < " << cfg.settling.heading << " rad at "
        << opt_str(result.settle_heading) << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "bounds: T1 = %.3f s (%s), T2 = %.3f s (%s), T3 = %.3f s (%s)\n",
                  result.bounds.reaching, formula_name(result.bounds.reaching_formula),
                  result.bounds.consensus, formula_name(result.bounds.consensus_formula),
                  result.bounds.transverse, formula_name(result.bounds.transverse_formula));
    out << buf;
}

void write_kv(const SimResult& result, std::ostream& out) {
    auto num = [&out](const char* key, double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s = %.17g\n", key, v);
        out << buf;
    };
    out << "termination = "
        << (result.termination == Termination::completed ? "completed" : "timeout") << "\n";
    for (size_t i = 0; i < result.arrival_times.size(); ++i) {
        num(("arrival_" + std::to_string(i + 1)).c_str(), result.arrival_times[i]);
    }
    num("arrival_spread", result.arrival_spread);
    num("settle_xi_r", result.settle_xi_r.value_or(std::numeric_limits<double>::quiet_NaN()));
    num("settle_xi_vr", result.settle_xi_vr.value_or(std::numeric_limits<double>::quiet_NaN()));
    num("settle_heading",
        result.settle_heading.value_or(std::numeric_limits<double>::quiet_NaN()));
    num("bound_reaching", result.bounds.reaching);
    num("bound_consensus", result.bounds.consensus);
    num("bound_transverse", result.bounds.transverse);
}

}  // namespace salvo
