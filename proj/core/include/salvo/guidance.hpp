#pragma once

#include <array>
#include <span>
#include <vector>

#include "salvo/consensus.hpp"
#include "salvo/engagement.hpp"
#include "salvo/graph.hpp"
#include "salvo/sliding_surface.hpp"

namespace salvo {

// How the implicit neighbor-control coupling in the LOS-aligned law is
// resolved each step.
//
// delayed: each agent evaluates its law using neighbors' controls from the
// previous step (zero at t = 0), averaged with its own previous control -
// the distributed reading. Two stabilizations are required: the averaging
// damps the oscillatory coupling modes of bipartite graphs (eigenvalue -1 of
// the row-stochastic coupling matrix), and because that matrix also has
// eigenvalue one, the degree-weighted mean of the update is an open
// integrator of the unrealizable component of the law and is pinned to zero.
// Neither touches the disagreement dynamics the consensus analysis speaks
// about: uniform control shifts are invisible to the consensus errors.
//
// fixed_point: centralized oracle; solves the coupled linear system in the
// least-squares sense and returns the solution with zero degree-weighted
// mean. Exact whenever the system is consistent (always for n = 2 or with
// arrived agents pinning the boundary).
enum class ControlResolutionMode { delayed, fixed_point };

struct GuidanceParams {
    double k1 = 0.265;
    double k2 = 2.0;
    double k3 = 0.25;
    double k4 = 2.0;
    OddRatio reach_super{13, 11};       // exponent on s, > 1
    OddRatio reach_sub{5, 7};           // exponent on s, < 1
    OddRatio transverse_super{7, 5};    // exponent on v_q, > 1
    OddRatio transverse_sub{3, 5};      // exponent on v_q, < 1
    double eta1 = 1.5;                  // tanh robustness gain (>= 0)
    double epsilon = 1.5;               // v_q robustness gain (>= 0)
    double omega = 0.5;                 // v_q robustness exponent in (0,1)
    SurfaceParams surface;

    void validate() const;

    bool operator==(const GuidanceParams&) const = default;
};

// LOS-aligned acceleration for agent i, one evaluation with the given
// neighbor controls:
//   (1/d_i) { sum_j a_ij (v_q_i^2/r_i - v_q_j^2/r_j + u_j)
//             + alpha1*xi_vr_i + alpha2*beta_dot_i
//             + k1*pow_odd(s_i, m2/n2) + k2*pow_odd(s_i, p2/q2)
//             + eta1*tanh(s_i) }
// Throws for an isolated agent or a non-finite result.
double u_r(int i, std::span<const MissileState> states, const ConsensusErrors& errors,
           double s_i, const CommGraph& g, std::span<const double> neighbor_u_r,
           const GuidanceParams& p);

// LOS-perpendicular acceleration:
//   -v_q*v_r/r + k3*pow_odd(v_q, m3/n3) + k4*pow_odd(v_q, p3/q3)
//   + epsilon*|v_q|^omega*sign(v_q)
// with sign(0) = 0. Throws for r <= 0.
double u_q(const MissileState& s, const GuidanceParams& p);

// Body-frame normal/tangential accelerations from the LOS components:
// a_n = u_q*cos(phi) - u_r*sin(phi), a_t = u_r*cos(phi) + u_q*sin(phi).
std::array<double, 2> body_accels(double u_r, double u_q, double phi);

// Resolve all agents' controls for one step. frozen[i] != 0 marks an arrived
// agent: its state and prev_u_r entry are the held last-transmitted values,
// its returned control is zero, and the coupled solve treats its u_r as a
// known boundary value (which grounds the otherwise singular system).
std::vector<ControlInput> resolve_controls(std::span<const MissileState> states,
                                           const CommGraph& g,
                                           std::span<const double> prev_u_r,
                                           ControlResolutionMode mode,
                                           const GuidanceParams& p,
                                           std::span<const char> frozen = {});

}  // namespace salvo
