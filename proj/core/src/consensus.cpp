#include "salvo/consensus.hpp"

#include "salvo/errors.hpp"

namespace salvo {

ConsensusErrors consensus_errors(std::span<const MissileState> states, const CommGraph& g) {
    const int n = g.size();
    if (states.size() != static_cast<size_t>(n)) {
        throw ValidationError("consensus_errors: state count does not match graph size");
    }
    ConsensusErrors e;
    e.xi_r.assign(n, 0.0);
    e.xi_vr.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double a = g.weight(i, j);
            if (a == 0.0) {
                continue;
            }
            e.xi_r[i] += a * (states[i].r - states[j].r);
            e.xi_vr[i] += a * (states[i].v_r - states[j].v_r);
        }
    }
    return e;
}

}  // namespace salvo
