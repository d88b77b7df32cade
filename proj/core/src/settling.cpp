#include "salvo/settling.hpp"

#include <algorithm>
#include <cmath>

#include "salvo/errors.hpp"

namespace salvo {

void FixedTimeSpec::validate() const {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ValidationError("fixed-time spec: gains a, b must be positive");
    }
    auto odd_positive = [](int v, const char* name) {
        if (v <= 0 || v % 2 == 0) {
            throw ValidationError(std::string("fixed-time spec: ") + name +
                                  " must be a positive odd integer");
        }
    };
    odd_positive(m, "m");
    odd_positive(n, "n");
    odd_positive(p, "p");
    odd_positive(q, "q");
    if (m <= n) {
        throw ValidationError("fixed-time spec: m must exceed n");
    }
    if (p >= q) {
        throw ValidationError("fixed-time spec: p must be below q");
    }
}

double FixedTimeSpec::theta() const {
    return static_cast<double>(q) * (m - n) / (static_cast<double>(n) * (q - p));
}

double settling_bound(const FixedTimeSpec& s) {
    s.validate();
    return (1.0 / s.a) * s.n / (s.m - s.n) + (1.0 / s.b) * s.q / (s.q - s.p);
}

double settling_bound_conservative(const FixedTimeSpec& s) {
    s.validate();
    const double th = s.theta();
    if (th > 1.0) {
        throw ValidationError("conservative settling bound requires theta <= 1");
    }
    const double front = static_cast<double>(s.q) / (s.q - s.p);
    return front * (std::atan(std::sqrt(s.a / s.b)) / std::sqrt(s.a * s.b) + 1.0 / (s.a * th));
}

double settling_time_numeric(const FixedTimeSpec& s, double y0, double tol) {
    s.validate();
    if (!(tol > 0.0)) {
        throw ValidationError("settling oracle: tolerance must be positive");
    }
    if (std::fabs(y0) < tol) {
        return 0.0;
    }
    const double em = static_cast<double>(s.m) / s.n;
    const double ep = static_cast<double>(s.p) / s.q;
    auto f = [&](double y) { return -s.a * pow_odd(y, em) - s.b * pow_odd(y, ep); };

    const double bound = settling_bound(s);
    const double horizon = 10.0 * bound;
    const double dt_max = bound / 1000.0;
    double t = 0.0;
    double y = y0;
    double dt = dt_max;
    while (t < horizon) {
        // keep the relative change per step modest; the dynamics stiffen
        // near the origin
        const double rate = std::fabs(f(y));
        if (rate > 0.0) {
            dt = std::min(dt_max, 0.1 * std::fabs(y) / rate);
        }
        double ynew;
        while (true) {
            const double k1 = f(y);
            const double k2 = f(y + 0.5 * dt * k1);
            const double k3 = f(y + 0.5 * dt * k2);
            const double k4 = f(y + dt * k3);
            ynew = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (std::fabs(ynew) <= std::fabs(y) || dt < 1e-14 * bound) {
                break;
            }
            dt *= 0.5;  // overshoot across the origin: halve and retry
        }
        y = ynew;
        t += dt;
        if (std::fabs(y) < tol) {
            return t;
        }
    }
    throw NumericError("settling oracle: no convergence within ten times the bound");
}

namespace {

StageBound pick_bound(const FixedTimeSpec& spec, bool take_smaller) {
    const double direct = settling_bound(spec);
    if (spec.theta() <= 1.0) {
        const double conservative = settling_bound_conservative(spec);
        if (!take_smaller || conservative <= direct) {
            return {conservative, BoundFormula::conservative};
        }
    }
    return {direct, BoundFormula::direct};
}

}  // namespace

StageBound reaching_bound(const GuidanceParams& p, int n_agents) {
    p.validate();
    FixedTimeSpec spec;
    spec.m = p.reach_super.num();
    spec.n = p.reach_super.den();
    spec.p = p.reach_sub.num();
    spec.q = p.reach_sub.den();
    spec.a = p.k1 * std::pow(n_agents, (spec.n - spec.m) / (2.0 * spec.n));
    spec.b = p.k2;
    return pick_bound(spec, /*take_smaller=*/false);
}

StageBound consensus_stage_bound(const GuidanceParams& p, int n_agents) {
    p.validate();
    FixedTimeSpec spec;
    spec.m = p.surface.exp_super.num();
    spec.n = p.surface.exp_super.den();
    spec.p = p.surface.exp_sub.num();
    spec.q = p.surface.exp_sub.den();
    spec.a = p.surface.alpha1 * std::pow(n_agents, (spec.n - spec.m) / (2.0 * spec.n));
    spec.b = p.surface.alpha2;
    return pick_bound(spec, /*take_smaller=*/false);
}

double consensus_bound(const GuidanceParams& p, int n_agents, double reaching_seconds) {
    if (!(reaching_seconds >= 0.0)) {
        throw ValidationError("consensus bound: reaching time must be non-negative");
    }
    return reaching_seconds + consensus_stage_bound(p, n_agents).seconds;
}

StageBound transverse_bound(const GuidanceParams& p, int n_agents) {
    p.validate();
    FixedTimeSpec spec;
    spec.m = p.transverse_super.num();
    spec.n = p.transverse_super.den();
    spec.p = p.transverse_sub.num();
    spec.q = p.transverse_sub.den();
    spec.a = p.k3 * std::pow(n_agents, (spec.n - spec.m) / (2.0 * spec.n));
    spec.b = p.k4;
    return pick_bound(spec, /*take_smaller=*/true);
}

BoundReport compute_bounds(const GuidanceParams& p, int n_agents) {
    const StageBound t1 = reaching_bound(p, n_agents);
    const StageBound stage = consensus_stage_bound(p, n_agents);
    const StageBound t3 = transverse_bound(p, n_agents);
    BoundReport report;
    report.reaching = t1.seconds;
    report.reaching_formula = t1.formula;
    report.consensus = t1.seconds + stage.seconds;
    report.consensus_formula = stage.formula;
    report.transverse = t3.seconds;
    report.transverse_formula = t3.formula;
    return report;
}

std::optional<double> measure_settling(const TrajectoryLog& log, SettlingSignal signal,
                                       double threshold) {
    if (!(threshold > 0.0)) {
        throw ValidationError("measure_settling: threshold must be positive");
    }
    if (log.step_count() == 0) {
        return std::nullopt;
    }
    auto value = [&](const AgentSample& a) {
        switch (signal) {
            case SettlingSignal::xi_r:
                return a.xi_r;
            case SettlingSignal::xi_vr:
                return a.xi_vr;
            case SettlingSignal::surface:
                return a.s;
            case SettlingSignal::v_q:
                return a.v_q;
            case SettlingSignal::heading:
                return a.phi;
        }
        return 0.0;
    };
    ptrdiff_t last_violation = -1;
    for (size_t k = 0; k < log.step_count(); ++k) {
        double peak = 0.0;
        for (const AgentSample& a : log.samples[k]) {
            peak = std::max(peak, std::fabs(value(a)));
        }
        if (peak >= threshold) {
            last_violation = static_cast<ptrdiff_t>(k);
        }
    }
    if (last_violation < 0) {
        return log.time.front();
    }
    if (last_violation + 1 >= static_cast<ptrdiff_t>(log.step_count())) {
        return std::nullopt;  // never settles within the log
    }
    return log.time[static_cast<size_t>(last_violation + 1)];
}

}  // namespace salvo
