#pragma once

#include <array>
#include <cmath>
#include <string>

#include "dustflame/errors.hpp"

namespace dustflame {

inline constexpr double kGasConstant = 8.31451; // J K^-1 mol^-1

// Fixed four-species system: solid fuel F, gaseous oxidant O, product P,
// neutral gas N, reacting as nu_F F + nu_O O + N -> nu_P P + N.
enum SpeciesIndex : int { kFuel = 0, kOxidant = 1, kProduct = 2, kNeutral = 3 };
inline constexpr int kNumSpecies = 4;

struct SpeciesTable {
    std::array<std::string, kNumSpecies> name{"F", "O", "P", "N"};
    std::array<double, kNumSpecies> molar_mass{};   // kg/mol
    std::array<double, kNumSpecies> cp{};           // J kg^-1 K^-1
    std::array<double, kNumSpecies> dh_formation{}; // J/kg, referenced at 0 K
    double nu_fuel = 0.0;
    double nu_oxidant = 0.0;
    double nu_product = 0.0;
    double rho_fuel = 0.0; // kg/m^3, solid fuel density
    double gas_constant = kGasConstant;

    SpeciesTable(std::array<double, kNumSpecies> molar_mass_,
                 double nu_fuel_, double nu_oxidant_, double nu_product_,
                 std::array<double, kNumSpecies> cp_,
                 std::array<double, kNumSpecies> dh_formation_,
                 double rho_fuel_)
        : molar_mass(molar_mass_), cp(cp_), dh_formation(dh_formation_),
          nu_fuel(nu_fuel_), nu_oxidant(nu_oxidant_), nu_product(nu_product_),
          rho_fuel(rho_fuel_) {
        validate();
    }

    // Mass of reactants consumed per mole of reaction, kg/mol.
    double reactant_mass() const {
        return nu_fuel * molar_mass[kFuel] + nu_oxidant * molar_mass[kOxidant];
    }

    // s = nu_O W_O / (nu_F W_F), the stoichiometric mass ratio used by the
    // reduced variable z.
    double stoich_mass_ratio() const {
        return nu_oxidant * molar_mass[kOxidant] / (nu_fuel * molar_mass[kFuel]);
    }

    void validate() const {
        for (int i = 0; i < kNumSpecies; ++i) {
            if (!(molar_mass[i] > 0.0))
                throw config_error("species table: molar mass of " + name[i] + " must be > 0");
            if (!(cp[i] > 0.0))
                throw config_error("species table: cp of " + name[i] + " must be > 0");
        }
        if (!(nu_fuel > 0.0) || !(nu_oxidant > 0.0) || !(nu_product > 0.0))
            throw config_error("species table: stoichiometric coefficients must be > 0");
        if (!(rho_fuel > 0.0))
            throw config_error("species table: solid fuel density must be > 0");
        // The reaction must conserve mass: nu_F W_F + nu_O W_O = nu_P W_P.
        const double lhs = reactant_mass();
        const double rhs = nu_product * molar_mass[kProduct];
        if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
            throw config_error("species table: reaction does not conserve mass "
                               "(nu_F W_F + nu_O W_O != nu_P W_P)");
    }
};

// Data set of the reference configuration: equal molar masses 20 g/mol,
// F + O + N -> 2P + N, exothermic formation enthalpies, solid fuel at
// 100 kg/m^3.
inline SpeciesTable reference_species_table() {
    return SpeciesTable({0.02, 0.02, 0.02, 0.02}, 1.0, 1.0, 2.0,
                        {1.0e3, 2.0e3, 4.0e3, 3.0e3},
                        {1.0e6, -2.0e6, -4.0e6, 3.0e6}, 100.0);
}

} // namespace dustflame
