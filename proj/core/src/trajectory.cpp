#include "salvo/trajectory.hpp"

#include <cstdio>

namespace salvo {

namespace {

void append_double(std::string& row, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    row += buf;
}

}  // namespace

void write_csv(const TrajectoryLog& log, std::ostream& out) {
    out << "t,agent,r,lambda,v_r,v_q,phi,xi_r,xi_vr,s,branch,u_r,u_q,a_n,a_t\n";
    std::string row;
    for (size_t k = 0; k < log.step_count(); ++k) {
        for (size_t i = 0; i < log.samples[k].size(); ++i) {
            const AgentSample& a = log.samples[k][i];
            row.clear();
            append_double(row, log.time[k]);
            row += ',';
            row += std::to_string(i + 1);
            for (double v : {a.r, a.lambda, a.v_r, a.v_q, a.phi, a.xi_r, a.xi_vr, a.s}) {
                row += ',';
                append_double(row, v);
            }
            row += ',';
            row += a.branch;
            for (double v : {a.u_r, a.u_q, a.a_n, a.a_t}) {
                row += ',';
                append_double(row, v);
            }
            row += '\n';
            out << row;
        }
    }
}

}  // namespace salvo
