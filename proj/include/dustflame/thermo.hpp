#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "dustflame/errors.hpp"
#include "dustflame/species.hpp"

namespace dustflame {

struct MixtureSample {
    std::array<double, kNumSpecies> y{};
    double theta = 0.0; // K
};

// Mixture of perfect gases plus an incompressible solid fuel phase:
//   rho = 1 / [ (R theta / P_th) * sum_{i=O,P,N} y_i/W_i + y_F/rho_F ].
inline double eos_density(const std::array<double, kNumSpecies>& y, double theta,
                          const SpeciesTable& sp, double p_th) {
    if (!(theta > 0.0)) throw solver_error("eos: nonpositive temperature");
    if (!(p_th > 0.0)) throw config_error("eos: thermodynamic pressure must be > 0");
    const double gas = y[kOxidant] / sp.molar_mass[kOxidant] +
                       y[kProduct] / sp.molar_mass[kProduct] +
                       y[kNeutral] / sp.molar_mass[kNeutral];
    const double specific_volume =
        sp.gas_constant * theta / p_th * gas + y[kFuel] / sp.rho_fuel;
    if (!(specific_volume > 0.0)) throw solver_error("eos: vanishing specific volume");
    return 1.0 / specific_volume;
}

inline double eos_density(const MixtureSample& s, const SpeciesTable& sp, double p_th) {
    return eos_density(s.y, s.theta, sp, p_th);
}

// Reduced variable z = (s y_F + 1 - y_O) / (1 + s) with s = nu_O W_O / (nu_F W_F).
// z satisfies a source-free balance, so it replaces the oxidant equation.
inline double reduced_z(double y_fuel, double y_oxidant, const SpeciesTable& sp) {
    const double s = sp.stoich_mass_ratio();
    return (s * y_fuel + 1.0 - y_oxidant) / (1.0 + s);
}

// Inverse map: y_O = 1 + s y_F - (1 + s) z. The scheme guarantees the result
// lies in [0,1] up to roundoff; a larger excursion is a solver defect.
inline double y_oxidant_from_z(double z, double y_fuel, const SpeciesTable& sp,
                               double tol = 1e-9) {
    const double s = sp.stoich_mass_ratio();
    const double y_ox = 1.0 + s * y_fuel - (1.0 + s) * z;
    if (y_ox < -tol || y_ox > 1.0 + tol)
        throw consistency_error("y_O reconstructed from z is out of bounds");
    return std::clamp(y_ox, 0.0, 1.0);
}

inline double mixture_cp(const std::array<double, kNumSpecies>& y, const SpeciesTable& sp) {
    return y[kFuel] * sp.cp[kFuel] + y[kOxidant] * sp.cp[kOxidant] +
           y[kProduct] * sp.cp[kProduct] + y[kNeutral] * sp.cp[kNeutral];
}

struct AdiabaticState {
    std::array<double, kNumSpecies> y{}; // complete-combustion composition
    double theta = 0.0;                  // K
};

// Complete-combustion burnt state at constant pressure: the limiting reactant
// is fully consumed, the other one reduced by stoichiometry, and the burnt
// temperature solves the total-enthalpy balance
//   sum_i y_i^u (cp_i theta_u + dh_i) = sum_i y_i^b (cp_i theta_b + dh_i).
inline AdiabaticState adiabatic_flame_temperature(const MixtureSample& unburnt,
                                                  const SpeciesTable& sp) {
    const auto& y = unburnt.y;
    // Reaction extent limited by whichever reactant runs out first (mol/kg).
    const double extent = std::min(y[kFuel] / (sp.nu_fuel * sp.molar_mass[kFuel]),
                                   y[kOxidant] / (sp.nu_oxidant * sp.molar_mass[kOxidant]));

    AdiabaticState burnt;
    burnt.y[kFuel] = y[kFuel] - extent * sp.nu_fuel * sp.molar_mass[kFuel];
    burnt.y[kOxidant] = y[kOxidant] - extent * sp.nu_oxidant * sp.molar_mass[kOxidant];
    burnt.y[kProduct] = y[kProduct] + extent * sp.reactant_mass();
    burnt.y[kNeutral] = y[kNeutral];
    for (double& v : burnt.y) v = std::clamp(v, 0.0, 1.0);

    double h_unburnt = 0.0, cp_burnt = 0.0, dh_burnt = 0.0;
    for (int i = 0; i < kNumSpecies; ++i) {
        h_unburnt += y[i] * (sp.cp[i] * unburnt.theta + sp.dh_formation[i]);
        cp_burnt += burnt.y[i] * sp.cp[i];
        dh_burnt += burnt.y[i] * sp.dh_formation[i];
    }
    burnt.theta = (h_unburnt - dh_burnt) / cp_burnt;
    if (!(burnt.theta > 0.0))
        throw solver_error("adiabatic temperature is nonpositive (endothermic data)");
    return burnt;
}

} // namespace dustflame
