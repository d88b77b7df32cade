#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

namespace salvo {

// One agent's logged quantities at one step.
struct AgentSample {
    double r = 0.0;
    double lambda = 0.0;
    double v_r = 0.0;
    double v_q = 0.0;
    double phi = 0.0;
    double xi_r = 0.0;
    double xi_vr = 0.0;
    double s = 0.0;
    char branch = 'A';
    double u_r = 0.0;
    double u_q = 0.0;
    double a_n = 0.0;
    double a_t = 0.0;
};

// Time-indexed record of every agent's state, controls, surface values and
// consensus errors, sampled every step.
struct TrajectoryLog {
    std::vector<double> time;
    std::vector<std::vector<AgentSample>> samples;  // samples[step][agent]

    size_t step_count() const { return time.size(); }
    int agent_count() const { return samples.empty() ? 0 : static_cast<int>(samples[0].size()); }
};

// CSV with header
//   t,agent,r,lambda,v_r,v_q,phi,xi_r,xi_vr,s,branch,u_r,u_q,a_n,a_t
// one row per (step, agent), agents numbered from 1. Numbers are written
// with enough digits to round-trip doubles exactly.
void write_csv(const TrajectoryLog& log, std::ostream& out);

}  // namespace salvo
