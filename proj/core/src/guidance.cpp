#include "salvo/guidance.hpp"

#include <cmath>
#include <string>

#include "salvo/errors.hpp"

namespace salvo {

namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Dense Gaussian elimination with partial pivoting; a is row-major n x n,
// destroyed in place. Solution overwrites b.
void solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::fabs(at(row, col)) > std::fabs(at(pivot, col))) {
                pivot = row;
            }
        }
        if (at(pivot, col) == 0.0) {
            throw NumericError("resolve_controls: singular coupling system");
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(pivot, j), at(col, j));
            }
            std::swap(b[pivot], b[col]);
        }
        for (int row = col + 1; row < n; ++row) {
            const double f = at(row, col) / at(col, col);
            if (f == 0.0) {
                continue;
            }
            for (int j = col; j < n; ++j) {
                at(row, j) -= f * at(col, j);
            }
            b[row] -= f * b[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double acc = b[row];
        for (int j = row + 1; j < n; ++j) {
            acc -= at(row, j) * b[j];
        }
        b[row] = acc / at(row, row);
    }
}

// Everything in the law except the neighbor-control coupling, for agent i.
double forcing_term(int i, std::span<const MissileState> states, const ConsensusErrors& e,
                    double s_i, const CommGraph& g, const GuidanceParams& p) {
    double coupling = 0.0;
    const double own = states[i].v_q * states[i].v_q / states[i].r;
    for (int j = 0; j < g.size(); ++j) {
        const double a = g.weight(i, j);
        if (a == 0.0) {
            continue;
        }
        coupling += a * (own - states[j].v_q * states[j].v_q / states[j].r);
    }
    return coupling + p.surface.alpha1 * e.xi_vr[i] +
           p.surface.alpha2 * beta_dot(e.xi_r[i], e.xi_vr[i], p.surface) +
           p.k1 * pow_odd(s_i, p.reach_super) + p.k2 * pow_odd(s_i, p.reach_sub) +
           p.eta1 * std::tanh(s_i);
}

}  // namespace

void GuidanceParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) {
            throw ValidationError(std::string("guidance: ") + name + " must be positive");
        }
    };
    positive(k1, "k1");
    positive(k2, "k2");
    positive(k3, "k3");
    positive(k4, "k4");
    if (!(eta1 >= 0.0)) {
        throw ValidationError("guidance: eta1 must be non-negative");
    }
    if (!(epsilon >= 0.0)) {
        throw ValidationError("guidance: epsilon must be non-negative");
    }
    if (!(omega > 0.0 && omega < 1.0)) {
        throw ValidationError("guidance: omega must lie in (0,1)");
    }
    if (!reach_super.super_unit()) {
        throw ValidationError("guidance: reach_super must exceed one");
    }
    if (reach_sub.super_unit()) {
        throw ValidationError("guidance: reach_sub must be below one");
    }
    if (!transverse_super.super_unit()) {
        throw ValidationError("guidance: transverse_super must exceed one");
    }
    if (transverse_sub.super_unit()) {
        throw ValidationError("guidance: transverse_sub must be below one");
    }
    surface.validate();
}

double u_r(int i, std::span<const MissileState> states, const ConsensusErrors& errors,
           double s_i, const CommGraph& g, std::span<const double> neighbor_u_r,
           const GuidanceParams& p) {
    const double d = g.degree(i);
    if (!(d > 0.0)) {
        throw ValidationError("u_r: agent " + std::to_string(i + 1) + " has no neighbors");
    }
    double coupled = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double a = g.weight(i, j);
        if (a != 0.0) {
            coupled += a * neighbor_u_r[j];
        }
    }
    const double value = (coupled + forcing_term(i, states, errors, s_i, g, p)) / d;
    if (!std::isfinite(value)) {
        throw NumericError("u_r: non-finite control for agent " + std::to_string(i + 1));
    }
    return value;
}

double u_q(const MissileState& s, const GuidanceParams& p) {
    if (!(s.r > 0.0)) {
        throw NumericError("u_q: range must be positive");
    }
    return -s.v_q * s.v_r / s.r + p.k3 * pow_odd(s.v_q, p.transverse_super) +
           p.k4 * pow_odd(s.v_q, p.transverse_sub) +
           p.epsilon * std::pow(std::fabs(s.v_q), p.omega) * sign_of(s.v_q);
}

std::array<double, 2> body_accels(double u_r, double u_q, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {u_q * c - u_r * s, u_r * c + u_q * s};
}

std::vector<ControlInput> resolve_controls(std::span<const MissileState> states,
                                           const CommGraph& g,
                                           std::span<const double> prev_u_r,
                                           ControlResolutionMode mode,
                                           const GuidanceParams& p,
                                           std::span<const char> frozen) {
    const int n = g.size();
    if (states.size() != static_cast<size_t>(n) || prev_u_r.size() != static_cast<size_t>(n)) {
        throw ValidationError("resolve_controls: state/control count does not match graph size");
    }
    auto is_frozen = [&](int i) { return !frozen.empty() && frozen[i] != 0; };
    bool any_frozen = false;
    for (int i = 0; i < n; ++i) {
        any_frozen = any_frozen || is_frozen(i);
        if (!is_frozen(i) && !(g.degree(i) > 0.0)) {
            throw ValidationError("resolve_controls: agent " + std::to_string(i + 1) +
                                  " has no neighbors");
        }
    }

    const ConsensusErrors errors = consensus_errors(states, g);
    std::vector<double> s_val(n), forcing(n);
    for (int i = 0; i < n; ++i) {
        s_val[i] = surface(errors.xi_r[i], errors.xi_vr[i], p.surface);
        forcing[i] = is_frozen(i) ? 0.0 : forcing_term(i, states, errors, s_val[i], g, p);
    }

    std::vector<double> ur(n, 0.0);
    if (mode == ControlResolutionMode::delayed) {
        // Averaged update: the plain one-pass map has undamped oscillatory
        // modes on bipartite graphs (coupling eigenvalue -1) which the
        // fractional-power reach terms pump into blowup; averaging with the
        // agent's own previous control damps them and leaves consistent
        // fixed points untouched.
        for (int i = 0; i < n; ++i) {
            if (!is_frozen(i)) {
                ur[i] = 0.5 * prev_u_r[i] +
                        0.5 * u_r(i, states, errors, s_val[i], g, prev_u_r, p);
            }
        }
        if (!any_frozen) {
            // Pin the singular weighted-mean direction (see header).
            double num = 0.0;
            double den = 0.0;
            for (int i = 0; i < n; ++i) {
                num += g.degree(i) * ur[i];
                den += g.degree(i);
            }
            const double mean = num / den;
            for (int i = 0; i < n; ++i) {
                ur[i] -= mean;
            }
        }
    } else {
        // Coupled system over active agents: d_i u_i - sum_j a_ij u_j = w_i,
        // with frozen agents' u_j as known boundary values.
        std::vector<int> active;
        for (int i = 0; i < n; ++i) {
            if (!is_frozen(i)) {
                active.push_back(i);
            }
        }
        const int m = static_cast<int>(active.size());
        if (m > 0 && !any_frozen) {
            // Singular Laplacian system; bordered solve picks the
            // least-squares solution with zero plain mean, then shift to the
            // zero degree-weighted-mean representative.
            const int dim = n + 1;
            std::vector<double> a(static_cast<size_t>(dim) * dim, 0.0);
            std::vector<double> b(dim, 0.0);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    a[static_cast<size_t>(i) * dim + j] = (i == j) ? g.degree(i) : -g.weight(i, j);
                }
                a[static_cast<size_t>(i) * dim + n] = 1.0;
                a[static_cast<size_t>(n) * dim + i] = 1.0;
                b[i] = forcing[i];
            }
            solve_dense(a, b, dim);
            double num = 0.0;
            for (int i = 0; i < n; ++i) {
                num += g.degree(i) * b[i];
            }
            const double shift = num / g.total_degree();
            for (int i = 0; i < n; ++i) {
                ur[i] = b[i] - shift;
            }
        } else if (m > 0) {
            // Grounded (positive definite) system.
            std::vector<double> a(static_cast<size_t>(m) * m, 0.0);
            std::vector<double> b(m, 0.0);
            for (int ii = 0; ii < m; ++ii) {
                const int i = active[ii];
                a[static_cast<size_t>(ii) * m + ii] = g.degree(i);
                b[ii] = forcing[i];
                for (int jj = 0; jj < m; ++jj) {
                    if (jj != ii) {
                        a[static_cast<size_t>(ii) * m + jj] = -g.weight(i, active[jj]);
                    }
                }
                for (int j = 0; j < n; ++j) {
                    if (is_frozen(j)) {
                        b[ii] += g.weight(i, j) * prev_u_r[j];
                    }
                }
            }
            solve_dense(a, b, m);
            for (int ii = 0; ii < m; ++ii) {
                ur[active[ii]] = b[ii];
            }
        }
    }

    std::vector<ControlInput> out(n);
    for (int i = 0; i < n; ++i) {
        if (is_frozen(i)) {
            out[i] = {0.0, 0.0};
            continue;
        }
        out[i].u_r = ur[i];
        out[i].u_q = u_q(states[i], p);
        if (!std::isfinite(out[i].u_r) || !std::isfinite(out[i].u_q)) {
            throw NumericError("resolve_controls: non-finite control for agent " +
                               std::to_string(i + 1));
        }
    }
    return out;
}

}  // namespace salvo
