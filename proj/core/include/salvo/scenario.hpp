#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "salvo/sim.hpp"

namespace salvo {

// Published values carried alongside a scenario for comparison in reports.
struct ReferenceValues {
    std::optional<double> arrival;
    std::optional<double> settle_xi_r;
    std::optional<double> settle_xi_vr;
    std::optional<double> settle_heading;
    std::optional<double> consensus_bound;
    std::optional<double> transverse_bound;

    bool operator==(const ReferenceValues&) const = default;
};

struct Scenario {
    std::vector<InitialCondition> agents;
    TopologySchedule schedule = TopologySchedule::fixed(
        CommGraph(2, std::vector<Edge>{{0, 1, 1.0}}));
    GuidanceParams guidance;
    TargetModel target;
    double dt = 1e-3;
    double t_max = 120.0;
    double r_stop = 1.0;
    double r_floor = 0.1;
    ControlResolutionMode mode = ControlResolutionMode::delayed;
    SettlingThresholds settling;
    ReferenceValues reference;

    void validate() const;
    SimConfig sim_config() const;

    bool operator==(const Scenario&) const;
};

// Names that load_scenario resolves without touching the filesystem.
std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

// Resolves a built-in name first, then falls back to parsing the file at
// the given path. Parse and validation failures name the offending field.
Scenario load_scenario(const std::string& path_or_name);

Scenario parse_scenario(std::istream& in, const std::string& origin);
void save_scenario(const Scenario& s, std::ostream& out);

// From time t onward, remove the edge between 1-based agents i and j from
// every schedule segment in effect. Throws if the edge is absent or if any
// resulting graph is disconnected.
void drop_edge(Scenario& s, int i, int j, double t);

}  // namespace salvo
