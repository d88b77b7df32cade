#pragma once

#include <span>
#include <vector>

#include "salvo/engagement.hpp"
#include "salvo/graph.hpp"

namespace salvo {

// Neighborhood disagreement signals:
//   xi_r[i]  = sum_j a_ij (r_i - r_j)        (m)
//   xi_vr[i] = sum_j a_ij (v_r_i - v_r_j)    (m/s)
// For a symmetric adjacency both sum to zero over the agents.
struct ConsensusErrors {
    std::vector<double> xi_r;
    std::vector<double> xi_vr;
};

ConsensusErrors consensus_errors(std::span<const MissileState> states, const CommGraph& g);

}  // namespace salvo
