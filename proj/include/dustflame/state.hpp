#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dustflame/config.hpp"
#include "dustflame/errors.hpp"
#include "dustflame/mesh.hpp"
#include "dustflame/thermo.hpp"

namespace dustflame {

// One time level of the discrete solution. rho_prev carries the density of
// the level before: the time terms of the scheme pair rho^{n-1} with the old
// scalars and rho^n with the new ones.
struct FlowState {
    double t = 0.0;
    std::vector<double> rho;      // per cell, level n
    std::vector<double> rho_prev; // per cell, level n-1
    std::array<std::vector<double>, kNumSpecies> y;
    std::vector<double> z;
    std::vector<double> theta;
    std::vector<double> u; // per face
    std::vector<double> g; // per cell; empty for the primitive model

    int n_cells() const { return static_cast<int>(rho.size()); }
    bool has_g() const { return !g.empty(); }

    // Bounds the scheme guarantees; tol absorbs roundoff only.
    void validate(double tol = 1e-9) const {
        const int n = n_cells();
        for (int k = 0; k < n; ++k) {
            if (!(rho[k] > 0.0) || !(rho_prev[k] > 0.0))
                throw consistency_error("state: nonpositive density at cell " + std::to_string(k));
            if (!(theta[k] > 0.0))
                throw consistency_error("state: nonpositive temperature at cell " + std::to_string(k));
            double sum = 0.0;
            for (int i = 0; i < kNumSpecies; ++i) {
                const double v = y[i][k];
                if (v < -tol || v > 1.0 + tol)
                    throw consistency_error("state: mass fraction out of [0,1] at cell " +
                                            std::to_string(k));
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw consistency_error("state: mass fractions do not sum to 1 at cell " +
                                        std::to_string(k));
            if (z[k] < -tol || z[k] > 1.0 + tol)
                throw consistency_error("state: z out of [0,1] at cell " + std::to_string(k));
            if (has_g() && (g[k] < -tol || g[k] > 1.0 + tol))
                throw consistency_error("state: G out of [0,1] at cell " + std::to_string(k));
        }
    }
};

// Keeps the discrete mass-balance identity valid across a time-step change
// from dt_old to dt_new = ratio * dt_old: the scheme sees the history only
// through (rho - rho_prev)/dt, so rho_prev is rescaled about rho.
inline void rescale_density_history(FlowState& st, double ratio) {
    for (int k = 0; k < st.n_cells(); ++k)
        st.rho_prev[k] = st.rho[k] + ratio * (st.rho_prev[k] - st.rho[k]);
}

// Initial condition: mixture at rest, homogeneous composition and
// temperature, except for the ignition zone. The primitive model ignites
// through a fictitious elevated temperature in a thin zone; the
// flame-velocity model starts with G = 0 there and G = 1 elsewhere.
inline FlowState initial_state(const SimulationConfig& cfg, const SpeciesTable& sp,
                               const Mesh1D& mesh) {
    double ysum = 0.0;
    for (double v : cfg.y0) ysum += v;
    if (std::abs(ysum - 1.0) > 1e-12)
        throw config_error("initial state: mass fractions must sum to 1");

    const int n = mesh.n_cells;
    FlowState st;
    st.t = 0.0;
    for (int i = 0; i < kNumSpecies; ++i) st.y[i].assign(n, cfg.y0[i]);
    st.z.assign(n, reduced_z(cfg.y0[kFuel], cfg.y0[kOxidant], sp));
    st.theta.assign(n, cfg.theta0);
    if (cfg.model == Model::primitive) {
        for (int k = 0; k < cfg.ignition_cells; ++k) st.theta[k] = cfg.ignition_theta;
    } else {
        st.g.assign(n, 1.0);
        for (int k = 0; k < cfg.ignition_cells; ++k) st.g[k] = 0.0;
    }
    st.rho.resize(n);
    for (int k = 0; k < n; ++k) st.rho[k] = eos_density(cfg.y0, st.theta[k], sp, cfg.p_th);
    // With u = 0 and rho_prev = rho the discrete mass balance holds exactly
    // at t = 0, which the constant-preservation property relies on.
    st.rho_prev = st.rho;
    st.u.assign(n + 1, 0.0);
    return st;
}

} // namespace dustflame
