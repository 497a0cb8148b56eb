// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Criteria 2-5 and 8-9 share the reference travelling-wave runs.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dustflame/runner.hpp"
#include "dustflame/tridiag.hpp"

using namespace dustflame;

namespace {

struct Gate {
    int failures = 0;
    void check(int id, const std::string& name, bool pass, const std::string& details) {
        std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                    details.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::filesystem::path work_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "dustflame_acceptance" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------- criterion 1

// Random admissible configuration: bounded domain, exothermic reference-like
// species table, time step small enough that the frozen-coefficient reaction
// linearizations stay admissible.
SimulationConfig random_config(std::mt19937& rng, bool gfield) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SimulationConfig cfg;
    cfg.model = gfield ? Model::flame_velocity : Model::primitive;
    cfg.n_cells = 32 + static_cast<int>(unit(rng) * 96);
    cfg.x_left = 0.0;
    cfg.x_right = 0.01 + 0.09 * unit(rng);
    double sum = 0.0;
    for (double& v : cfg.y0) sum += (v = 0.05 + unit(rng));
    for (double& v : cfg.y0) v /= sum;
    cfg.theta0 = 280.0 + 600.0 * unit(rng);
    cfg.ignition_cells = 1 + static_cast<int>(unit(rng) * 3);
    cfg.ignition_theta = 1000.0 + 1000.0 * unit(rng);
    cfg.lambda = 0.001 + 0.02 * unit(rng);
    cfg.arrhenius_a = 1e3 + 2e4 * unit(rng);
    cfg.arrhenius_ta = 400.0 + 1600.0 * unit(rng);
    cfg.u_f = 0.005 + 0.1 * unit(rng);
    const double h = (cfg.x_right - cfg.x_left) / cfg.n_cells;
    cfg.delta = std::max(2.0 * h, 1e-4 + 5e-4 * unit(rng));
    cfg.dt = std::min(1e-5 * (0.5 + unit(rng)), 0.02 * h / 0.05);
    cfg.validate();
    return cfg;
}

void criterion_bounds(Gate& gate) {
    std::mt19937 rng(20240901);
    int violations = 0;
    std::string first;
    for (int trial = 0; trial < 50; ++trial) {
        const bool gfield = trial % 2 == 1;
        const SimulationConfig cfg = random_config(rng, gfield);
        const Mesh1D mesh = make_uniform_mesh(cfg.x_left, cfg.x_right, cfg.n_cells);
        FlowState st = initial_state(cfg, cfg.species, mesh);
        double dt = cfg.dt;
        try {
            if (gfield) {
                GFieldStepper stepper(mesh, cfg);
                for (int s = 0; s < 200; ++s) {
                    try {
                        stepper.advance(st, dt);
                    } catch (const cfl_error&) {
                        dt *= 0.5;
                        rescale_density_history(st, 0.5);
                        --s;
                    }
                }
            } else {
                PrimitiveStepper stepper(mesh, cfg);
                for (int s = 0; s < 200; ++s) stepper.advance(st, dt);
            }
            // Strict bounds on the stored fields, beyond the per-step checks.
            for (int k = 0; k < cfg.n_cells; ++k) {
                double sum = 0.0;
                for (int i = 0; i < kNumSpecies; ++i) {
                    if (st.y[i][k] < 0.0 || st.y[i][k] > 1.0) throw consistency_error("y bounds");
                    sum += st.y[i][k];
                }
                if (std::abs(sum - 1.0) > 1e-12) throw consistency_error("y sum");
                if (!(st.theta[k] > 0.0)) throw consistency_error("theta");
                if (!(st.rho[k] > 0.0)) throw consistency_error("rho");
                if (st.has_g() && (st.g[k] < 0.0 || st.g[k] > 1.0))
                    throw consistency_error("G bounds");
            }
        } catch (const std::exception& e) {
            ++violations;
            if (first.empty()) first = "trial " + std::to_string(trial) + ": " + e.what();
        }
    }
    gate.check(1, "bounds preserved on 50 random configs x 200 steps",
               violations == 0,
               violations == 0 ? "zero violations" : std::to_string(violations) +
                                                         " violating runs; first: " + first);
}

// ------------------------------------------------------- criteria 2-5 (+8,9)

struct ReferenceRun {
    RunResult run;
    double max_yn_drift = 0.0;
    double max_z_drift = 0.0;
};

ReferenceRun reference_primitive_run(int n_cells, const std::filesystem::path& out) {
    SimulationConfig cfg = preset_config();
    cfg.model = Model::primitive;
    cfg.n_cells = n_cells;
    cfg.out_dir = out.string();
    ReferenceRun ref;
    ref.run = run_simulation(cfg, [&](const FlowState& st, int) {
        for (int k = 0; k < st.n_cells(); ++k) {
            ref.max_yn_drift = std::max(ref.max_yn_drift, std::abs(st.y[kNeutral][k] - 0.2));
            ref.max_z_drift = std::max(ref.max_z_drift, std::abs(st.z[k] - 0.5));
        }
    });
    return ref;
}

// ---------------------------------------------------------------- criterion 6

double g_front_speed_error(int n_cells) {
    SimulationConfig cfg;
    cfg.model = Model::flame_velocity;
    cfg.x_right = 1.0;
    cfg.n_cells = n_cells;
    cfg.u_f = 0.5;
    cfg.rho_u = 1.0;
    cfg.delta = 1e-3;
    cfg.dt = 1.5e-3 * (512.0 / n_cells);
    const Mesh1D mesh = make_uniform_mesh(cfg.x_left, cfg.x_right, cfg.n_cells);
    GFieldStepper stepper(mesh, cfg);
    FlowState st = initial_state(cfg, cfg.species, mesh);
    st.rho.assign(n_cells, 2.0); // frozen rho = 2 rho_u
    st.rho_prev = st.rho;
    for (int k = 0; k < n_cells; ++k) st.g[k] = mesh.center[k] < 0.25 ? 0.0 : 1.0;

    StepWorkspace& ws = stepper.workspace();
    std::vector<double> ts, xs;
    const int steps = static_cast<int>(0.35 * n_cells);
    for (int s = 0; s < steps; ++s) {
        compute_mass_flux(mesh, st, stepper.boundaries(), ws.mass_flux);
        g_transport_step(mesh, stepper.boundaries(), st, cfg.dt, stepper.params(), ws);
        ts.push_back((s + 1) * cfg.dt);
        xs.push_back(front_position(mesh.center, st.g, 0.5));
    }
    const double expected = cfg.rho_u / 2.0 * cfg.u_f;
    return std::abs(wave_speed(ts, xs).u_p - expected) / expected;
}

// ---------------------------------------------------------------- criterion 10

std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

void criterion_oracles(Gate& gate) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_solve = 0.0;

    // Tridiagonal vs dense on the scheme's own transport rows, meshes <= 8.
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(unit(rng) * 6);
        SimulationConfig cfg;
        cfg.n_cells = n;
        cfg.x_right = 0.01 * n;
        cfg.dt = 1e-4;
        cfg.ignition_cells = 0;
        const Mesh1D mesh = make_uniform_mesh(cfg.x_left, cfg.x_right, n);
        PrimitiveStepper stepper(mesh, cfg);
        FlowState st = initial_state(cfg, cfg.species, mesh);
        for (int f = 1; f <= n; ++f) st.u[f] = unit(rng) - 0.5;
        for (int k = 0; k < n; ++k) {
            st.rho[k] = 0.5 + unit(rng);
            st.rho_prev[k] = 0.5 + unit(rng);
        }
        StepWorkspace& ws = stepper.workspace();
        compute_mass_flux(mesh, st, stepper.boundaries(), ws.mass_flux);
        stepper.fill_arrhenius_sink(st);

        TridiagSystem sys;
        sys.resize(n);
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        for (int k = 0; k < n; ++k) {
            const ConvectionRow row = upwind_convection_row(mesh, ws.mass_flux, k, 0.2, 0.2);
            sys.lower[k] = row.lower;
            sys.upper[k] = row.upper;
            sys.diag[k] = st.rho[k] / cfg.dt + ws.sink[k] + row.diag;
            sys.rhs[k] = st.rho_prev[k] / cfg.dt * st.y[kFuel][k] + row.rhs;
            a[k][k] = sys.diag[k];
            if (k > 0) a[k][k - 1] = sys.lower[k];
            if (k + 1 < n) a[k][k + 1] = sys.upper[k];
        }
        const std::vector<double> rhs = sys.rhs;
        std::vector<double> x;
        solve_tridiagonal(sys, x);
        const std::vector<double> oracle = dense_solve(a, rhs);
        for (int k = 0; k < n; ++k)
            worst_solve = std::max(worst_solve, std::abs(x[k] - oracle[k]));
    }

    // Mass-balance residual after mass_step on random states.
    double worst_resid = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 10;
        SimulationConfig cfg;
        cfg.n_cells = n;
        cfg.dt = 1e-4;
        cfg.ignition_cells = 0;
        const Mesh1D mesh = make_uniform_mesh(0.0, 0.1, n);
        PrimitiveStepper stepper(mesh, cfg);
        FlowState st = initial_state(cfg, cfg.species, mesh);
        for (int k = 0; k < n; ++k) {
            st.rho[k] = 0.3 + unit(rng);
            st.rho_prev[k] = 0.3 + unit(rng);
        }
        mass_step(mesh, stepper.boundaries(), st, cfg.dt);
        for (int k = 0; k < n; ++k) {
            double f_left = 0.0, f_right = 0.0;
            if (k > 0) f_left = st.u[k] * (st.u[k] > 0.0 ? st.rho[k - 1] : st.rho[k]);
            if (k + 1 <= n)
                f_right = st.u[k + 1] * (st.u[k + 1] > 0.0
                                             ? st.rho[k]
                                             : (k + 1 < n ? st.rho[k + 1]
                                                          : stepper.boundaries().right.rho));
            const double resid = (st.rho[k] - st.rho_prev[k]) / cfg.dt +
                                 (f_right - f_left) / mesh.width[k];
            const double scale = std::abs(st.rho[k] - st.rho_prev[k]) / cfg.dt;
            worst_resid = std::max(worst_resid, std::abs(resid) / std::max(scale, 1e-30));
        }
    }

    gate.check(10, "tridiagonal vs dense oracle and discrete mass residual",
               worst_solve <= 1e-12 && worst_resid <= 1e-12,
               "max solve difference " + fmt(worst_solve) + ", max relative residual " +
                   fmt(worst_resid));
}

} // namespace

int main() {
    Gate gate;

    criterion_bounds(gate);

    // Shared reference runs of the preset configuration.
    const ReferenceRun ref = reference_primitive_run(2048, work_dir("ref2048"));
    const WaveReport& rep = ref.run.report;

    gate.check(2, "y_N and z constant in time and space",
               ref.max_yn_drift <= 1e-10 && ref.max_z_drift <= 1e-10,
               "max |y_N - 0.2| = " + fmt(ref.max_yn_drift) +
                   ", max |z - 0.5| = " + fmt(ref.max_z_drift));

    std::printf("note: the reference mixture already reacts at 300 K (volumetric rate 79.7), so"
                " the fresh zone burns in place on a ~0.1 s scale (final fresh state: y_F = %.3f,"
                " theta = %.0f K at t = %.2f s) while the front advances at ~%.3f m/s; criteria"
                " 3-5 and 8-9 measure this regime.\n",
                ref.run.state.y[kFuel].back(), ref.run.state.theta.back(), ref.run.state.t,
                rep.fit.u_p);

    gate.check(3, "travelling wave: linear front trajectory and steady profile",
               rep.fit.fit_quality >= 0.999 && rep.steady_linf_yf <= 1e-3,
               "fit quality " + fmt(rep.fit.fit_quality) + " (u_p = " + fmt(rep.fit.u_p) +
                   " m/s), aligned snapshot Linf(yF) = " + fmt(rep.steady_linf_yf));

    {
        const bool ok = rep.plateaus_valid &&
                        rep.plateaus.y_burnt[kFuel] <= 1e-3 &&
                        rep.plateaus.y_burnt[kOxidant] <= 1e-3 &&
                        std::abs(rep.plateaus.y_burnt[kProduct] - 0.8) <= 1e-3 &&
                        std::abs(rep.plateaus.theta_b - rep.theta_adiabatic) /
                                rep.theta_adiabatic <=
                            0.01;
        gate.check(4, "burnt plateau matches complete combustion and the adiabatic oracle", ok,
                   rep.plateaus_valid
                       ? "y_F = " + fmt(rep.plateaus.y_burnt[kFuel]) + ", y_O = " +
                             fmt(rep.plateaus.y_burnt[kOxidant]) + ", y_P = " +
                             fmt(rep.plateaus.y_burnt[kProduct]) + ", theta_b = " +
                             fmt(rep.plateaus.theta_b) + " vs oracle " +
                             fmt(rep.theta_adiabatic)
                       : "plateaus unavailable: " + rep.failure);
    }

    {
        bool ok = false;
        std::string details = "jump data unavailable: " + rep.failure;
        if (rep.jump_valid) {
            const double u_p_jump = rep.plateaus.rho_u * rep.plateaus.u_u /
                                    (rep.plateaus.rho_u - rep.plateaus.rho_b);
            const double up_err = std::abs(rep.fit.u_p - u_p_jump) / std::abs(u_p_jump);
            ok = up_err <= 0.02 && rep.jump.discrepancy <= 0.02;
            details = "u_p fit " + fmt(rep.fit.u_p) + " vs jump " + fmt(u_p_jump) +
                      " (error " + fmt(up_err) + "), u_f forms differ by " +
                      fmt(rep.jump.discrepancy);
        }
        gate.check(5, "jump-condition consistency of u_p and u_f", ok, details);
    }

    {
        const double err512 = g_front_speed_error(512);
        const double err1024 = g_front_speed_error(1024);
        gate.check(6, "G-front speed matches (rho_u/rho) u_f and converges",
                   err512 <= 0.05 && err1024 <= err512,
                   "relative error " + fmt(err512) + " at 512 cells, " + fmt(err1024) +
                       " at 1024 cells");
    }

    // Flame-velocity runs with the extracted u_f, for criteria 7 and 8; the
    // delta = 1e-4 case is repeated on 1024 cells to report the model's own
    // grid convergence alongside criterion 9.
    double g_up_2048 = 0.0, g_up_1024 = 0.0;
    {
        bool ok7 = false, ok8 = false;
        std::string d7 = "reference run unusable: " + rep.failure, d8 = d7;
        const std::optional<double> u_f = extract_flame_velocity(rep, preset_config());
        const std::string u_f_origin =
            rep.jump_valid ? "jump extraction"
                           : "u_p with oracle densities (plateaus unusable: " + rep.failure + ")";
        if (u_f) {
            SimulationConfig base = preset_config();
            base.model = Model::flame_velocity;
            base.u_f = *u_f;
            base.t_end = 0.5;
            base.snapshot_every = 10000;

            SimulationConfig g1 = base;
            g1.delta = 1e-4;
            g1.out_dir = work_dir("gfield_d1").string();
            const RunResult run1 = run_simulation(g1);

            SimulationConfig g2 = base;
            g2.delta = 2e-4;
            g2.out_dir = work_dir("gfield_d2").string();
            const RunResult run2 = run_simulation(g2);

            SimulationConfig g3 = g1;
            g3.n_cells = 1024;
            g3.out_dir = work_dir("gfield_d1_coarse").string();
            g_up_2048 = run1.report.fit.u_p;
            g_up_1024 = run_simulation(g3).report.fit.u_p;

            const double ratio = run2.report.thickness_yf / run1.report.thickness_yf;
            ok7 = ratio >= 1.6 && ratio <= 2.4;
            d7 = "thickness " + fmt(run1.report.thickness_yf) + " m at delta 1e-4, " +
                 fmt(run2.report.thickness_yf) + " m at 2e-4, ratio " + fmt(ratio);

            const ProfileMetrics myf = compare_profiles(run1.mesh, run1.state, ref.run.mesh,
                                                        ref.run.state, FrontField::y_fuel);
            const ProfileMetrics mth = compare_profiles(run1.mesh, run1.state, ref.run.mesh,
                                                        ref.run.state, FrontField::theta);
            const double theta_rel = mth.linf / rep.theta_adiabatic;
            ok8 = myf.linf <= 0.1 && theta_rel <= 0.1;
            d8 = "Linf(yF) = " + fmt(myf.linf) + ", Linf(theta)/theta_ad = " + fmt(theta_rel) +
                 " (u_f = " + fmt(*u_f) + " m/s via " + u_f_origin + ")";
        }
        gate.check(7, "combustion-zone thickness scales with delta", ok7, d7);
        gate.check(8, "cross-model profile agreement at delta = 1e-4 m", ok8, d8);
    }

    {
        const ReferenceRun ref1024 = reference_primitive_run(1024, work_dir("ref1024"));
        const double change =
            std::abs(ref1024.run.report.fit.u_p - rep.fit.u_p) / std::abs(rep.fit.u_p);
        std::string extra;
        if (g_up_2048 > 0.0 && g_up_1024 > 0.0)
            extra = "; flame-velocity model for comparison: " + fmt(g_up_1024) + " vs " +
                    fmt(g_up_2048) + ", change " +
                    fmt(std::abs(g_up_1024 - g_up_2048) / g_up_2048);
        gate.check(9, "grid convergence of u_p from 1024 to 2048 cells", change <= 0.03,
                   "u_p = " + fmt(ref1024.run.report.fit.u_p) + " (1024) vs " +
                       fmt(rep.fit.u_p) + " (2048), change " + fmt(change) + extra);
    }

    criterion_oracles(gate);

    if (gate.failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", gate.failures);
    return 1;
}
