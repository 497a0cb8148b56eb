#pragma once

#include <cmath>

#include "dustflame/config.hpp"
#include "dustflame/solver_core.hpp"

namespace dustflame {

// Arrhenius closure omega = A y_F y_O exp(-Ta/theta); vanishes with either
// reactant by the product form.
inline double arrhenius_rate(double y_fuel, double y_oxidant, double theta, double a,
                             double ta) {
    return a * y_fuel * y_oxidant * std::exp(-ta / theta);
}

// omega_F = -nu_F W_F omega, omega_O = -nu_O W_O omega, omega_P balances
// them exactly (the table guarantees nu_P W_P equals the reactant mass),
// omega_N = 0. Order: F, O, P, N.
inline std::array<double, kNumSpecies> species_reaction_rates(double omega,
                                                              const SpeciesTable& sp) {
    const double m_fuel = sp.nu_fuel * sp.molar_mass[kFuel] * omega;
    const double m_ox = sp.nu_oxidant * sp.molar_mass[kOxidant] * omega;
    return {-m_fuel, -m_ox, m_fuel + m_ox, 0.0};
}

// Four-step fractional-step scheme for the primitive formulation:
// chemistry, energy, equation of state, mass balance. The reaction sink is
// implicit in y_F with y_O and theta frozen at level n, which keeps the
// chemistry matrix an M-matrix and y_F nonnegative.
class PrimitiveStepper {
public:
    PrimitiveStepper(Mesh1D mesh, SimulationConfig cfg)
        : mesh_(std::move(mesh)), cfg_(std::move(cfg)) {
        cfg_.validate();
        const ExteriorState fresh =
            ExteriorState::from_mixture(cfg_.y0, cfg_.theta0, cfg_.species, cfg_.p_th);
        bnd_ = Boundaries{fresh, fresh};
        ws_.resize(mesh_.n_cells);
    }

    void advance(FlowState& st) { advance(st, cfg_.dt); }

    void advance(FlowState& st, double dt) {
        compute_mass_flux(mesh_, st, bnd_, ws_.mass_flux);
        fill_arrhenius_sink(st);
        chemistry_step(mesh_, cfg_.species, bnd_, st, dt, ws_);
        energy_step(mesh_, cfg_.species, bnd_, st, dt, cfg_.lambda, ws_);
        eos_step(cfg_.species, cfg_.p_th, st);
        mass_step(mesh_, bnd_, st, dt);
        st.t += dt;
        st.validate();
    }

    // Sink coefficient k_K = nu_F W_F A y_O^n exp(-Ta/theta^n), so that
    // omega_F^{n+1} = -k_K y_F^{n+1}.
    void fill_arrhenius_sink(const FlowState& st) {
        const double nu_w_fuel = cfg_.species.nu_fuel * cfg_.species.molar_mass[kFuel];
        for (int k = 0; k < mesh_.n_cells; ++k)
            ws_.sink[k] = nu_w_fuel * cfg_.arrhenius_a * st.y[kOxidant][k] *
                          std::exp(-cfg_.arrhenius_ta / st.theta[k]);
    }

    const Mesh1D& mesh() const { return mesh_; }
    const SimulationConfig& config() const { return cfg_; }
    const Boundaries& boundaries() const { return bnd_; }
    StepWorkspace& workspace() { return ws_; }

private:
    Mesh1D mesh_;
    SimulationConfig cfg_;
    Boundaries bnd_;
    StepWorkspace ws_;
};

} // namespace dustflame
