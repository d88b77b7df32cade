#include "salvo/sweep.hpp"

#include <cmath>
#include <limits>
#include <cstdio>

#include "salvo/errors.hpp"

namespace salvo {

Scenario scaled_scenario(const Scenario& base, double scale) {
    if (!(scale > 0.0)) {
        throw ValidationError("sweep: scale must be positive");
    }
    double mean_r = 0.0;
    double mean_v = 0.0;
    double mean_phi = 0.0;
    for (const InitialCondition& ic : base.agents) {
        mean_r += ic.r0;
        mean_v += ic.v0;
        mean_phi += ic.phi0;
    }
    const double n = static_cast<double>(base.agents.size());
    mean_r /= n;
    mean_v /= n;
    mean_phi /= n;
    Scenario out = base;
    for (InitialCondition& ic : out.agents) {
        ic.r0 = mean_r + scale * (ic.r0 - mean_r);
        ic.v0 = mean_v + scale * (ic.v0 - mean_v);
        ic.phi0 = mean_phi + scale * (ic.phi0 - mean_phi);
    }
    return out;
}

std::vector<SweepRow> run_scale_sweep(const Scenario& base, std::span<const double> scales) {
    std::vector<SweepRow> rows;
    for (double scale : scales) {
        const Scenario scaled = scaled_scenario(base, scale);
        scaled.validate();
        const auto [result, log] = run(scaled.sim_config(), scaled.agents);
        SweepRow row;
        row.scale = scale;
        row.settle_xi_r = result.settle_xi_r;
        row.consensus_bound = result.bounds.consensus;
        row.pass = result.settle_xi_r.has_value() &&
                   *result.settle_xi_r <= result.bounds.consensus;
        row.all_arrived = result.all_arrived;
        if (result.all_arrived) {
            double mean = 0.0;
            for (double a : result.arrival_times) {
                mean += a;
            }
            row.mean_arrival = mean / static_cast<double>(result.arrival_times.size());
        } else {
            row.mean_arrival = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_table(std::span<const SweepRow> rows, std::ostream& out) {
    out << "scale  settle_xi_r[s]  bound_T2[s]  mean_arrival[s]  verdict\n";
    for (const SweepRow& row : rows) {
        char buf[128];
        char settle[24];
        if (row.settle_xi_r) {
            std::snprintf(settle, sizeof(settle), "%.3f", *row.settle_xi_r);
        } else {
            std::snprintf(settle, sizeof(settle), "not settled");
        }
        std::snprintf(buf, sizeof(buf), "%-6g %-15s %-12.3f %-16.3f %s\n", row.scale, settle,
                      row.consensus_bound, row.mean_arrival, row.pass ? "PASS" : "FAIL");
        out << buf;
    }
}

}  // namespace salvo
