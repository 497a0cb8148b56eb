#pragma once

#include <cmath>

#include "dustflame/config.hpp"
#include "dustflame/solver_core.hpp"

namespace dustflame {

// Closure parameters of the flame-velocity formulation.
struct GFieldParams {
    double u_f = 0.0;   // flame brush velocity, m/s
    double delta = 0.0; // reaction-zone length scale, m
    double rho_u = 0.0; // characteristic unburnt density, kg/m^3

    void validate() const {
        if (!(u_f >= 0.0)) throw config_error("gfield: u_f must be >= 0");
        if (!(delta > 0.0)) throw config_error("gfield: delta must be > 0");
        if (!(rho_u > 0.0)) throw config_error("gfield: rho_u must be > 0");
    }
};

// Reaction rate gated by the color function:
//   omega = (u_f/delta) eta(y_F, y_O) (G - 0.5)^-,
//   eta = min(y_F/(nu_F W_F), y_O/(nu_O W_O)).
// Positive only on the burnt side G < 0.5, zero when a reactant is absent.
inline double g_reaction_rate(double g, double y_fuel, double y_oxidant,
                              const GFieldParams& par, const SpeciesTable& sp) {
    const double gate = g < 0.5 ? 0.5 - g : 0.0;
    const double eta = std::min(y_fuel / (sp.nu_fuel * sp.molar_mass[kFuel]),
                                y_oxidant / (sp.nu_oxidant * sp.molar_mass[kOxidant]));
    return par.u_f / par.delta * eta * gate;
}

// Transport step for G:
//   (1/dt)[rho^n G^{n+1} - rho^{n-1} G^n] + div[rho^n G^n u^n]
//     + rho_u u_f |grad G|^n = 0,
// with |grad G| = N_f . grad G rewritten as div(G N_f) - G div N_f, N_f the
// per-face sign of the discrete gradient of G^n. Both convection operators
// are explicit MUSCL: minmod slopes for the material part, superbee for the
// propagation part, which keeps the slowly moving G contact a few cells
// wide. Under the enforced CFL condition every face value stays in the hull
// of its neighbours and the update is a convex combination, so G remains in
// [0,1]. Requires ws.mass_flux at level n.
inline void g_transport_step(const Mesh1D& mesh, const Boundaries& bnd, FlowState& st,
                             double dt, const GFieldParams& par, StepWorkspace& ws) {
    const int n = mesh.n_cells;

    // Front normal: sign of the jump of G^n across each interior face, with
    // a dead zone so flat regions do not propagate.
    ws.front_normal[0] = ws.front_normal[n] = 0.0;
    for (int f = 1; f < n; ++f) {
        const double d = st.g[f] - st.g[f - 1];
        ws.front_normal[f] = std::abs(d) <= 1e-14 ? 0.0 : (d > 0.0 ? 1.0 : -1.0);
    }

    // Joint CFL: per cell, material outflow plus the propagation speed once
    // per active face (the G div N part doubles the coefficient where the
    // normal flips sign). The bounds proof needs the sum below 1/2.
    double cfl = 0.0;
    for (int k = 0; k < n; ++k) {
        double outgoing = positive_part(ws.mass_flux[k + 1]) + negative_part(ws.mass_flux[k]);
        if (ws.front_normal[k] != 0.0) outgoing += par.rho_u * par.u_f;
        if (ws.front_normal[k + 1] != 0.0) outgoing += par.rho_u * par.u_f;
        cfl = std::max(cfl, dt * outgoing / (st.rho_prev[k] * mesh.width[k]));
    }
    if (cfl > 0.5)
        throw cfl_error("G transport: convection number " + std::to_string(cfl) + " exceeds 1/2",
                        0.5 * dt);

    muscl_face_values(mesh, st.g, ws.mass_flux, bnd.left.g, bnd.right.g, ws.face_q);
    std::vector<double>& prop_q = ws.scratch; // face values of G against N_f
    limited_face_values(mesh, st.g, ws.front_normal, bnd.left.g, bnd.right.g, Limiter::superbee,
                        prop_q);

    for (int k = 0; k < n; ++k) {
        const double c = par.rho_u * par.u_f / mesh.width[k];
        const double n_left = ws.front_normal[k];
        const double n_right = ws.front_normal[k + 1];
        // rho_u u_f [ N_r G_r - N_l G_l - G_K (N_r - N_l) ] / h_K.
        const double propagation =
            c * (n_right * prop_q[k + 1] - n_left * prop_q[k] - st.g[k] * (n_right - n_left));
        const double g_new =
            dt / st.rho[k] *
            (st.rho_prev[k] / dt * st.g[k] -
             explicit_convection_div(mesh, ws.mass_flux, ws.face_q, k) - propagation);
        if (g_new < -1e-9 || g_new > 1.0 + 1e-9)
            throw consistency_error("G transport: G left [0,1] at cell " + std::to_string(k));
        ws.sol[k] = std::clamp(g_new, 0.0, 1.0);
    }
    std::copy(ws.sol.begin(), ws.sol.begin() + n, st.g.begin());
}

// Flame-velocity formulation: the G transport runs first, then the shared
// chemistry/energy/EOS/mass steps with the G-gated rate in place of the
// Arrhenius closure.
class GFieldStepper {
public:
    GFieldStepper(Mesh1D mesh, SimulationConfig cfg)
        : mesh_(std::move(mesh)), cfg_(std::move(cfg)) {
        cfg_.validate();
        const ExteriorState fresh =
            ExteriorState::from_mixture(cfg_.y0, cfg_.theta0, cfg_.species, cfg_.p_th);
        bnd_ = Boundaries{fresh, fresh};
        params_ = GFieldParams{cfg_.u_f, cfg_.delta,
                               cfg_.rho_u > 0.0 ? cfg_.rho_u : fresh.rho};
        params_.validate();
        ws_.resize(mesh_.n_cells);
    }

    void advance(FlowState& st) { advance(st, cfg_.dt); }

    void advance(FlowState& st, double dt) {
        if (!st.has_g()) throw config_error("gfield: state carries no G field");
        compute_mass_flux(mesh_, st, bnd_, ws_.mass_flux);
        g_transport_step(mesh_, bnd_, st, dt, params_, ws_);
        fill_gated_sink(st);
        chemistry_step(mesh_, cfg_.species, bnd_, st, dt, ws_);
        energy_step(mesh_, cfg_.species, bnd_, st, dt, cfg_.lambda, ws_);
        eos_step(cfg_.species, cfg_.p_th, st);
        mass_step(mesh_, bnd_, st, dt);
        st.t += dt;
        st.validate();
    }

    // Implicit-in-y_F linearization of the gated rate: the active branch of
    // eta is written as r_K y_F^{n+1}/(nu_F W_F) with the branch ratio r_K
    // frozen at level n (r = 1 when the fuel limits, else the oxidant/fuel
    // ratio), giving the sink coefficient k_K = (u_f/delta) gate r_K.
    void fill_gated_sink(const FlowState& st) {
        const auto& sp = cfg_.species;
        const double nu_w_fuel = sp.nu_fuel * sp.molar_mass[kFuel];
        const double nu_w_ox = sp.nu_oxidant * sp.molar_mass[kOxidant];
        for (int k = 0; k < mesh_.n_cells; ++k) {
            const double gate = st.g[k] < 0.5 ? 0.5 - st.g[k] : 0.0;
            const double fuel_moles = st.y[kFuel][k] / nu_w_fuel;
            const double ox_moles = st.y[kOxidant][k] / nu_w_ox;
            const double ratio =
                (fuel_moles <= ox_moles || fuel_moles <= 0.0) ? 1.0 : ox_moles / fuel_moles;
            ws_.sink[k] = params_.u_f / params_.delta * gate * ratio;
        }
    }

    const Mesh1D& mesh() const { return mesh_; }
    const SimulationConfig& config() const { return cfg_; }
    const GFieldParams& params() const { return params_; }
    const Boundaries& boundaries() const { return bnd_; }
    StepWorkspace& workspace() { return ws_; }

private:
    Mesh1D mesh_;
    SimulationConfig cfg_;
    Boundaries bnd_;
    GFieldParams params_;
    StepWorkspace ws_;
};

} // namespace dustflame
