#pragma once

#include <array>
#include <cmath>
#include <string>

#include "dustflame/errors.hpp"
#include "dustflame/species.hpp"

namespace dustflame {

enum class Model { primitive, flame_velocity };

inline const char* model_name(Model m) {
    return m == Model::primitive ? "primitive" : "flame-velocity";
}

// One simulation: domain, time stepping, initial/ignition data, closure
// parameters. Values not set by the input file keep the defaults of the
// reference configuration (see io.hpp for the key list and preset).
struct SimulationConfig {
    Model model = Model::primitive;

    // Domain and stepping.
    double x_left = 0.0;
    double x_right = 0.1; // m
    int n_cells = 2048;
    double dt = 1.0e-5;  // s
    double t_end = 0.06; // s

    // Thermodynamics and transport.
    double p_th = 101325.0; // Pa, fixed by the initial state
    double lambda = 0.005;  // W m^-1 K^-1

    // Uniform initial mixture.
    std::array<double, kNumSpecies> y0{0.4, 0.4, 0.0, 0.2};
    double theta0 = 300.0; // K

    // Ignition: a thin zone at the left boundary. The primitive model raises
    // the temperature there; the flame-velocity model sets G = 0 there.
    int ignition_cells = 2;
    double ignition_theta = 1500.0; // K

    // Arrhenius closure of the primitive model.
    double arrhenius_a = 1.0e4;
    double arrhenius_ta = 900.0; // K

    // Flame-velocity closure. rho_u == 0 means "use the initial density".
    double u_f = 0.0;     // m/s
    double delta = 1e-4;  // m
    double rho_u = 0.0;   // kg/m^3

    // Output.
    int snapshot_every = 100;
    std::string out_dir = "out";

    SpeciesTable species = reference_species_table();

    void validate() const {
        if (!(x_right > x_left)) throw config_error("config: x_right must exceed x_left");
        if (n_cells < 3) throw config_error("config: n_cells must be at least 3");
        if (!(dt > 0.0)) throw config_error("config: dt must be > 0");
        if (!(t_end >= 0.0)) throw config_error("config: t_end must be >= 0");
        if (!(p_th > 0.0)) throw config_error("config: P_th must be > 0");
        if (!(lambda >= 0.0)) throw config_error("config: lambda must be >= 0");
        double sum = 0.0;
        for (double v : y0) {
            if (v < 0.0 || v > 1.0)
                throw config_error("config: initial mass fractions must lie in [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw config_error("config: initial mass fractions must sum to 1");
        if (!(theta0 > 0.0)) throw config_error("config: theta0 must be > 0");
        if (ignition_cells < 0 || ignition_cells >= n_cells)
            throw config_error("config: ignition_cells must lie in [0, n_cells)");
        if (!(ignition_theta > 0.0)) throw config_error("config: ignition_theta must be > 0");
        if (!(arrhenius_a >= 0.0)) throw config_error("config: arrhenius_A must be >= 0");
        if (!(arrhenius_ta >= 0.0)) throw config_error("config: arrhenius_Ta must be >= 0");
        if (!(u_f >= 0.0)) throw config_error("config: u_f must be >= 0");
        if (model == Model::flame_velocity && !(delta > 0.0))
            throw config_error("config: delta must be > 0 for the flame-velocity model");
        if (!(rho_u >= 0.0)) throw config_error("config: rho_u must be >= 0");
        if (snapshot_every < 1) throw config_error("config: snapshot_every must be >= 1");
        species.validate();
    }
};

} // namespace dustflame
