#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "salvo/scenario.hpp"

namespace salvo {

// Scenario with the initial-condition disagreement scaled about the fleet
// means: x_i -> mean + scale * (x_i - mean) for r0, v0 and phi0.
Scenario scaled_scenario(const Scenario& base, double scale);

struct SweepRow {
    double scale = 1.0;
    std::optional<double> settle_xi_r;
    double consensus_bound = 0.0;
    bool pass = false;  // settled and settle_xi_r <= consensus_bound
    bool all_arrived = false;
    double mean_arrival = 0.0;
};

// Runs the scenario at each disagreement scale and tabulates the measured
// consensus settling time against the (scale-independent) bound. Rows come
// back in scale order.
std::vector<SweepRow> run_scale_sweep(const Scenario& base, std::span<const double> scales);

void write_sweep_table(std::span<const SweepRow> rows, std::ostream& out);

}  // namespace salvo
