#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "dustflame/convection.hpp"
#include "dustflame/errors.hpp"
#include "dustflame/mesh.hpp"
#include "dustflame/species.hpp"
#include "dustflame/state.hpp"
#include "dustflame/thermo.hpp"
#include "dustflame/tridiag.hpp"

namespace dustflame {

// State seen by an inflow boundary face.
struct ExteriorState {
    std::array<double, kNumSpecies> y{};
    double z = 0.0;
    double theta = 0.0;
    double g = 1.0;
    double rho = 0.0;
    double cp = 0.0;

    static ExteriorState from_mixture(const std::array<double, kNumSpecies>& y, double theta,
                                      const SpeciesTable& sp, double p_th) {
        ExteriorState ext;
        ext.y = y;
        ext.z = reduced_z(y[kFuel], y[kOxidant], sp);
        ext.theta = theta;
        ext.rho = eos_density(y, theta, sp, p_th);
        ext.cp = mixture_cp(y, sp);
        return ext;
    }
};

// Left face is the closed symmetry plane of the ignition (u = 0, no fluxes);
// the right face is open: upwind convection, vanishing diffusion flux, and
// the exterior state supplies values if the flow ever enters there.
struct Boundaries {
    ExteriorState left, right;
};

struct StepWorkspace {
    std::vector<double> mass_flux; // per face, F^n = rho^n u^n upwinded by sign(u)
    std::vector<double> cp_flux;   // per face, F * cp of the upwind updated mixture
    std::array<std::vector<double>, kNumSpecies> y_old;
    std::vector<double> theta_old;
    std::vector<double> sink;  // per cell, implicit fuel sink coefficient k >= 0
    std::vector<double> omega; // per cell, reaction rate at the new level
    std::vector<double> face_q;
    std::vector<double> front_normal; // per face, N_f in {-1,0,+1}
    std::vector<double> scratch;
    TridiagSystem sys;
    std::vector<double> sol;

    void resize(int n) {
        mass_flux.assign(n + 1, 0.0);
        cp_flux.assign(n + 1, 0.0);
        for (auto& v : y_old) v.assign(n, 0.0);
        theta_old.assign(n, 0.0);
        sink.assign(n, 0.0);
        omega.assign(n, 0.0);
        face_q.assign(n + 1, 0.0);
        front_normal.assign(n + 1, 0.0);
        scratch.assign(n, 0.0);
        sys.resize(n);
        sol.assign(n, 0.0);
    }
};

// F^n_sigma = rho^n_sigma u^n_sigma with the face density taken from the
// upstream cell (mean of the neighbours when u = 0, exterior on inflow).
inline void compute_mass_flux(const Mesh1D& mesh, const FlowState& st, const Boundaries& bnd,
                              std::vector<double>& flux) {
    const int n = mesh.n_cells;
    flux.resize(n + 1);
    flux[0] = st.u[0] > 0.0   ? st.u[0] * bnd.left.rho
              : st.u[0] < 0.0 ? st.u[0] * st.rho[0]
                              : 0.0;
    for (int f = 1; f < n; ++f) {
        const double u = st.u[f];
        if (u > 0.0)
            flux[f] = u * st.rho[f - 1];
        else if (u < 0.0)
            flux[f] = u * st.rho[f];
        else
            flux[f] = 0.0;
    }
    flux[n] = st.u[n] > 0.0   ? st.u[n] * st.rho[n - 1]
              : st.u[n] < 0.0 ? st.u[n] * bnd.right.rho
                              : 0.0;
}

namespace detail {

// Solve one implicit transported-scalar equation
//   (1/dt) [rho^n q^{n+1} - rho^{n-1} q_old] + div[rho^n q^{n+1} u^n] + sink q^{n+1} = 0
// and write the solution over q. The time pairing with the shifted density
// plus upwind fluxes makes the matrix an M-matrix, so q^{n+1} stays within
// the bounds of (q_old, inflow values).
inline void solve_transport(const Mesh1D& mesh, const FlowState& st, double dt,
                            std::span<const double> sink, double q_in_left, double q_in_right,
                            StepWorkspace& ws, std::vector<double>& q) {
    const int n = mesh.n_cells;
    ws.sys.resize(n);
    for (int k = 0; k < n; ++k) {
        const ConvectionRow row =
            upwind_convection_row(mesh, ws.mass_flux, k, q_in_left, q_in_right);
        ws.sys.lower[k] = row.lower;
        ws.sys.upper[k] = row.upper;
        ws.sys.diag[k] = st.rho[k] / dt + row.diag + (sink.empty() ? 0.0 : sink[k]);
        ws.sys.rhs[k] = st.rho_prev[k] / dt * q[k] + row.rhs;
    }
    solve_tridiagonal(ws.sys, ws.sol);
    q = ws.sol;
}

inline double checked_fraction(double v, const char* what) {
    if (v < -1e-9 || v > 1.0 + 1e-9)
        throw consistency_error(std::string("chemistry step: ") + what + " left [0,1]");
    return std::clamp(v, 0.0, 1.0);
}

} // namespace detail

// Chemistry step: implicit transport of y_N and z with no source, of y_F
// with the reaction sink ws.sink (implicit in y_F, frozen otherwise), then
// y_O recovered from z and y_F, and y_P closing the sum to one. Fills
// ws.omega with the reaction rate at the new level and ws.y_old with the
// old fractions. Requires ws.mass_flux at level n.
inline void chemistry_step(const Mesh1D& mesh, const SpeciesTable& sp, const Boundaries& bnd,
                           FlowState& st, double dt, StepWorkspace& ws) {
    const int n = mesh.n_cells;
    for (int i = 0; i < kNumSpecies; ++i) ws.y_old[i] = st.y[i];

    detail::solve_transport(mesh, st, dt, {}, bnd.left.y[kNeutral], bnd.right.y[kNeutral], ws,
                            st.y[kNeutral]);
    detail::solve_transport(mesh, st, dt, {}, bnd.left.z, bnd.right.z, ws, st.z);
    detail::solve_transport(mesh, st, dt, ws.sink, bnd.left.y[kFuel], bnd.right.y[kFuel], ws,
                            st.y[kFuel]);

    const double nu_w_fuel = sp.nu_fuel * sp.molar_mass[kFuel];
    for (int k = 0; k < n; ++k) {
        st.y[kFuel][k] = detail::checked_fraction(st.y[kFuel][k], "y_F");
        ws.omega[k] = ws.sink[k] * st.y[kFuel][k] / nu_w_fuel;
        st.y[kNeutral][k] = detail::checked_fraction(st.y[kNeutral][k], "y_N");
        st.z[k] = detail::checked_fraction(st.z[k], "z");
        st.y[kOxidant][k] = y_oxidant_from_z(st.z[k], st.y[kFuel][k], sp);
        const double y_p = 1.0 - st.y[kFuel][k] - st.y[kOxidant][k] - st.y[kNeutral][k];
        st.y[kProduct][k] = detail::checked_fraction(y_p, "y_P");
    }
}

// Energy step: one implicit solve for theta^{n+1} with cp-weighted
// convection of the updated species, two-point diffusion fluxes (zero at
// both boundaries) and the heat release of ws.omega. Fills ws.theta_old.
inline void energy_step(const Mesh1D& mesh, const SpeciesTable& sp, const Boundaries& bnd,
                        FlowState& st, double dt, double lambda, StepWorkspace& ws) {
    const int n = mesh.n_cells;
    ws.theta_old = st.theta;

    // Heat released per unit reaction rate: -sum_i dh_i omega_i / omega.
    const double nu_w_fuel = sp.nu_fuel * sp.molar_mass[kFuel];
    const double nu_w_ox = sp.nu_oxidant * sp.molar_mass[kOxidant];
    const double heat_per_rate = nu_w_fuel * sp.dh_formation[kFuel] +
                                 nu_w_ox * sp.dh_formation[kOxidant] -
                                 (nu_w_fuel + nu_w_ox) * sp.dh_formation[kProduct];

    auto cell_cp = [&](const std::array<std::vector<double>, kNumSpecies>& y, int k) {
        return y[kFuel][k] * sp.cp[kFuel] + y[kOxidant][k] * sp.cp[kOxidant] +
               y[kProduct][k] * sp.cp[kProduct] + y[kNeutral][k] * sp.cp[kNeutral];
    };

    ws.cp_flux[0] = ws.mass_flux[0] * (ws.mass_flux[0] > 0.0 ? bnd.left.cp : cell_cp(st.y, 0));
    for (int f = 1; f < n; ++f) {
        const double F = ws.mass_flux[f];
        ws.cp_flux[f] = F * cell_cp(st.y, F > 0.0 ? f - 1 : f);
    }
    ws.cp_flux[n] =
        ws.mass_flux[n] * (ws.mass_flux[n] < 0.0 ? bnd.right.cp : cell_cp(st.y, n - 1));

    ws.sys.resize(n);
    for (int k = 0; k < n; ++k) {
        const ConvectionRow row =
            upwind_convection_row(mesh, ws.cp_flux, k, bnd.left.theta, bnd.right.theta);
        double diag = st.rho[k] / dt * cell_cp(st.y, k) + row.diag;
        double lower = row.lower, upper = row.upper;
        if (k > 0) {
            const double d = lambda / (mesh.width[k] * mesh.center_distance(k - 1));
            diag += d;
            lower -= d;
        }
        if (k + 1 < n) {
            const double d = lambda / (mesh.width[k] * mesh.center_distance(k));
            diag += d;
            upper -= d;
        }
        ws.sys.lower[k] = lower;
        ws.sys.upper[k] = upper;
        ws.sys.diag[k] = diag;
        ws.sys.rhs[k] = st.rho_prev[k] / dt * cell_cp(ws.y_old, k) * ws.theta_old[k] +
                        heat_per_rate * ws.omega[k] + row.rhs;
    }
    solve_tridiagonal(ws.sys, ws.sol);
    for (int k = 0; k < n; ++k) {
        if (!(ws.sol[k] > 0.0))
            throw solver_error("energy step: nonpositive temperature at cell " +
                               std::to_string(k));
        st.theta[k] = ws.sol[k];
    }
}

// Equation-of-state step: rho^{n+1} from the updated composition and
// temperature; the old density moves to rho_prev.
inline void eos_step(const SpeciesTable& sp, double p_th, FlowState& st) {
    std::swap(st.rho, st.rho_prev);
    const int n = st.n_cells();
    std::array<double, kNumSpecies> y;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < kNumSpecies; ++i) y[i] = st.y[i][k];
        st.rho[k] = eos_density(y, st.theta[k], sp, p_th);
    }
}

// Mass balance step: with the left face closed, the discrete mass balance
// determines every face flux by a left-to-right sweep, and the velocity
// follows by dividing with the upwind face density. After this step the
// residual (rho^{n+1}-rho^n)/dt + div[rho^{n+1} u^{n+1}] vanishes to
// roundoff in every cell.
inline void mass_step(const Mesh1D& mesh, const Boundaries& bnd, FlowState& st, double dt) {
    const int n = mesh.n_cells;
    double flux = 0.0; // closed left boundary
    st.u[0] = 0.0;
    for (int k = 0; k < n; ++k) {
        flux -= mesh.width[k] * (st.rho[k] - st.rho_prev[k]) / dt;
        double rho_face;
        if (flux > 0.0)
            rho_face = st.rho[k];
        else if (flux < 0.0)
            rho_face = (k + 1 < n) ? st.rho[k + 1] : bnd.right.rho;
        else
            rho_face = (k + 1 < n) ? 0.5 * (st.rho[k] + st.rho[k + 1]) : st.rho[k];
        if (!(rho_face > 0.0))
            throw solver_error("mass step: vanishing face density at face " +
                               std::to_string(k + 1));
        st.u[k + 1] = flux / rho_face;
    }
}

} // namespace dustflame
