#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "dustflame/diagnostics.hpp"
#include "dustflame/gfield_solver.hpp"
#include "dustflame/io.hpp"
#include "dustflame/primitive_solver.hpp"
#include "dustflame/thermo.hpp"

namespace dustflame {

struct RunResult {
    Mesh1D mesh;
    FlowState state;
    WaveReport report;
    RunManifest manifest;
};

// Called after every accepted step; used by tests to observe the solution.
using StepObserver = std::function<void(const FlowState&, int step)>;

namespace detail {

// Plateau sampling geometry, as fractions of the domain length: the margin
// kept clear of the front and of the boundaries, and the window width. The
// margin grows with the measured combustion-zone thickness (the reaction
// tail must not leak into the burnt window) and shrinks near the left
// boundary so a young front still leaves a burnt window between itself and
// the ignition zone.
inline constexpr double kPlateauMarginFraction = 0.03;
inline constexpr double kPlateauWidthFraction = 0.05;

inline double plateau_margin(const Mesh1D& mesh, double front, double thickness) {
    const double length = mesh.x_right - mesh.x_left;
    double margin = kPlateauMarginFraction * length;
    if (thickness > 0.0 && std::isfinite(thickness)) margin = std::max(margin, 3.5 * thickness);
    margin = std::min(margin, (front - mesh.x_left) / 3.0);
    margin = std::min(margin, (mesh.x_right - front) / 3.0);
    return std::max(margin, 2.5 * length / mesh.n_cells);
}

inline void finalize_report(const Mesh1D& mesh, const SimulationConfig& cfg,
                            const FlowState& final_state,
                            const std::optional<FlowState>& mid_state, WaveReport& rep) {
    const MixtureSample fresh{cfg.y0, cfg.theta0};
    if (fresh.y[kFuel] > 0.0 && fresh.y[kOxidant] > 0.0)
        rep.theta_adiabatic = adiabatic_flame_temperature(fresh, cfg.species).theta;

    // Each measurement stands on its own; the first failure is reported but
    // later ones are still attempted.
    auto record = [&rep](const diagnostics_error& e) {
        if (rep.failure.empty()) rep.failure = e.what();
    };
    try {
        rep.fit = wave_speed(rep.sample_t, rep.sample_x);
    } catch (const diagnostics_error& e) {
        record(e);
    }
    try {
        const double front = front_position(mesh, final_state, rep.tracked_field);
        rep.thickness_yf = transition_thickness(mesh.center, final_state.y[kFuel]);
        const double margin = plateau_margin(mesh, front, rep.thickness_yf);
        rep.plateaus = plateau_states(mesh, final_state, front, margin,
                                      kPlateauWidthFraction * (mesh.x_right - mesh.x_left));
        rep.plateaus_valid = true;
        rep.jump = flame_velocity_from_jump(rep.fit.u_p, rep.plateaus.u_u, rep.plateaus.rho_u,
                                            rep.plateaus.rho_b);
        rep.jump_valid = true;
    } catch (const diagnostics_error& e) {
        record(e);
    }
    try {
        if (!mid_state) throw diagnostics_error("run too short to check steadiness");
        const ProfileMetrics drift =
            compare_profiles(mesh, final_state, mesh, *mid_state, FrontField::y_fuel);
        rep.steady_linf_yf = drift.linf;
        rep.steady = drift.linf < 1e-3 && rep.plateaus_valid;
        if (!rep.steady && rep.failure.empty()) rep.failure = "profile drift above tolerance";
    } catch (const diagnostics_error& e) {
        rep.steady = false;
        record(e);
    }
}

} // namespace detail

// Advances the configured model to t_end, writing snapshots, the front
// trajectory, the wave report and a manifest into cfg.out_dir. Output is a
// pure function of the configuration. If the explicit part of the
// flame-velocity transport refuses the time step, the step is retried with
// dt halved (permanently) and a warning goes to stderr.
inline RunResult run_simulation(const SimulationConfig& cfg, const StepObserver& observer = {}) {
    cfg.validate();
    RunResult result;
    result.mesh = make_uniform_mesh(cfg.x_left, cfg.x_right, cfg.n_cells);
    result.state = initial_state(cfg, cfg.species, result.mesh);

    std::variant<PrimitiveStepper, GFieldStepper> stepper =
        cfg.model == Model::primitive
            ? std::variant<PrimitiveStepper, GFieldStepper>(
                  std::in_place_type<PrimitiveStepper>, result.mesh, cfg)
            : std::variant<PrimitiveStepper, GFieldStepper>(std::in_place_type<GFieldStepper>,
                                                            result.mesh, cfg);

    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);
    result.manifest.command = "run";
    result.manifest.config_echo = config_echo(cfg);

    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(out / name, content);
        result.manifest.add(name, content);
    };
    emit("resolved.cfg", result.manifest.config_echo);
    emit("snap_0.csv", snapshot_csv(result.mesh, result.state));

    WaveReport& rep = result.report;
    rep.tracked_field = cfg.model == Model::primitive ? FrontField::theta : FrontField::g;

    std::optional<FlowState> mid_state;
    double dt = cfg.dt;
    int halvings = 0;
    int step = 0;
    const double t_mid = 0.9 * cfg.t_end;
    if (cfg.t_end == 0.0) mid_state = result.state;

    while (result.state.t < cfg.t_end - 0.5 * dt) {
        try {
            std::visit([&](auto& s) { s.advance(result.state, dt); }, stepper);
        } catch (const cfl_error& e) {
            if (++halvings > 40) throw solver_error("time step collapsed while halving");
            dt *= 0.5;
            rescale_density_history(result.state, 0.5);
            std::cerr << "warning: step " << step + 1 << " refused (" << e.what()
                      << "); continuing with dt = " << dt << "\n";
            continue;
        }
        ++step;
        try {
            const double xf = front_position(result.mesh, result.state, rep.tracked_field);
            rep.sample_t.push_back(result.state.t);
            rep.sample_x.push_back(xf);
            rep.front_tracked = true;
        } catch (const diagnostics_error&) {
        }
        if (!mid_state && result.state.t >= t_mid) mid_state = result.state;
        if (step % cfg.snapshot_every == 0)
            emit("snap_" + std::to_string(step) + ".csv", snapshot_csv(result.mesh, result.state));
        if (observer) observer(result.state, step);
    }
    if (step % cfg.snapshot_every != 0 || step == 0)
        emit("snap_" + std::to_string(step) + ".csv", snapshot_csv(result.mesh, result.state));

    if (cfg.t_end == 0.0)
        rep.failure = "no time steps taken";
    else
        detail::finalize_report(result.mesh, cfg, result.state, mid_state, rep);

    std::string front_csv = "t,x_front\n";
    for (std::size_t i = 0; i < rep.sample_t.size(); ++i)
        front_csv += format_double(rep.sample_t[i]) + "," + format_double(rep.sample_x[i]) + "\n";
    emit("front.csv", front_csv);
    emit("report.txt", report_text(rep));
    emit("report.csv", report_csv(rep));
    write_file(out / "manifest.json", result.manifest.to_json());
    return result;
}

// ---- comparison of two runs ----

struct CompareRow {
    std::string field;
    ProfileMetrics metrics;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    bool within_thresholds = true;
    std::string csv;
};

namespace detail {

inline std::filesystem::path last_snapshot(const std::filesystem::path& dir) {
    const std::regex pat("snap_([0-9]+)\\.csv");
    long best = -1;
    std::filesystem::path best_path;
    if (!std::filesystem::is_directory(dir))
        throw config_error("compare: " + dir.string() + " is not a directory");
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pat)) {
            const long s = std::stol(m[1]);
            if (s > best) {
                best = s;
                best_path = entry.path();
            }
        }
    }
    if (best < 0) throw config_error("compare: no snapshots in " + dir.string());
    return best_path;
}

} // namespace detail

// Aligned-profile metrics between the latest snapshots of two run
// directories, one row per field. linf_max, when set, marks the result as
// out of thresholds if any field exceeds it.
inline CompareResult compare_command(const std::filesystem::path& dir_a,
                                     const std::filesystem::path& dir_b,
                                     const std::vector<std::string>& fields,
                                     std::optional<double> linf_max = {}) {
    const Snapshot a = read_snapshot_csv(detail::last_snapshot(dir_a));
    const Snapshot b = read_snapshot_csv(detail::last_snapshot(dir_b));

    CompareResult res;
    res.csv = "field,linf,l2,thickness_a,thickness_b,thickness_ratio\n";
    for (const auto& f : fields) {
        CompareRow row;
        row.field = f;
        row.metrics = compare_profiles(a.column("x"), a.column(f), b.column("x"), b.column(f));
        if (linf_max && row.metrics.linf > *linf_max) res.within_thresholds = false;
        res.csv += f + "," + format_double(row.metrics.linf) + "," +
                   format_double(row.metrics.l2) + "," + format_double(row.metrics.thickness_a) +
                   "," + format_double(row.metrics.thickness_b) + "," +
                   format_double(row.metrics.thickness_ratio) + "\n";
        res.rows.push_back(std::move(row));
    }
    return res;
}

// ---- delta sweep ----

struct SweepEntry {
    double delta = 0.0;
    std::string dir;
    WaveReport report;
    ProfileMetrics vs_reference_yf;
    ProfileMetrics vs_reference_theta;
};

struct SweepResult {
    RunResult reference;
    std::vector<SweepEntry> entries;
    std::string csv;
};

// Flame velocity to inject into the flame-velocity model. Prefers the
// jump-condition value of the reference report; when the reference has no
// usable plateaus, the fitted u_p is combined with the exact fresh density
// and the adiabatic burnt density (u_f = u_p rho_b / rho_u follows from the
// jump relations with u_b = 0).
inline std::optional<double> extract_flame_velocity(const WaveReport& rep,
                                                    const SimulationConfig& cfg) {
    if (rep.jump_valid && rep.jump.u_f_jump > 0.0) return rep.jump.u_f_jump;
    if (!(rep.fit.u_p > 0.0)) return std::nullopt;
    const MixtureSample fresh{cfg.y0, cfg.theta0};
    if (!(fresh.y[kFuel] > 0.0 && fresh.y[kOxidant] > 0.0)) return std::nullopt;
    const AdiabaticState burnt = adiabatic_flame_temperature(fresh, cfg.species);
    const double rho_b = eos_density(burnt.y, burnt.theta, cfg.species, cfg.p_th);
    const double rho_u = eos_density(cfg.y0, cfg.theta0, cfg.species, cfg.p_th);
    return rep.fit.u_p * rho_b / rho_u;
}

// One primitive reference run, then one flame-velocity run per delta with
// the flame velocity and unburnt density extracted from the reference. The
// member runs are independent and execute concurrently.
inline SweepResult sweep_command(const SimulationConfig& base,
                                 const std::vector<double>& deltas,
                                 const std::filesystem::path& out_dir) {
    SimulationConfig ref_cfg = base;
    ref_cfg.model = Model::primitive;
    ref_cfg.out_dir = (out_dir / "reference").string();

    SweepResult result;
    result.reference = run_simulation(ref_cfg);
    const WaveReport& ref = result.reference.report;
    const std::optional<double> u_f = extract_flame_velocity(ref, ref_cfg);
    if (!u_f)
        throw solver_error("sweep: reference run did not produce a usable wave (" + ref.failure +
                           ")");
    if (!ref.jump_valid)
        std::cerr << "warning: reference plateaus unusable (" << ref.failure
                  << "); u_f derived from the fitted u_p and the adiabatic densities\n";

    std::vector<std::future<RunResult>> futures;
    std::vector<SimulationConfig> cfgs;
    for (const double delta : deltas) {
        SimulationConfig cfg = base;
        cfg.model = Model::flame_velocity;
        cfg.delta = delta;
        cfg.u_f = *u_f;
        cfg.rho_u = ref.jump_valid ? ref.plateaus.rho_u : 0.0; // 0 = initial density
        char tag[32];
        std::snprintf(tag, sizeof(tag), "delta_%.6g", delta);
        cfg.out_dir = (out_dir / tag).string();
        cfgs.push_back(cfg);
    }
    futures.reserve(cfgs.size());
    for (const auto& cfg : cfgs)
        futures.push_back(std::async(std::launch::async, [cfg] { return run_simulation(cfg); }));

    result.csv = "delta,u_f_injected,u_p,thickness_yF,steady,linf_yF_vs_ref,linf_theta_vs_ref\n";
    for (std::size_t i = 0; i < futures.size(); ++i) {
        RunResult run = futures[i].get();
        SweepEntry entry;
        entry.delta = deltas[i];
        entry.dir = cfgs[i].out_dir;
        entry.report = run.report;
        entry.vs_reference_yf = compare_profiles(run.mesh, run.state, result.reference.mesh,
                                                 result.reference.state, FrontField::y_fuel);
        entry.vs_reference_theta = compare_profiles(run.mesh, run.state, result.reference.mesh,
                                                    result.reference.state, FrontField::theta);
        result.csv += format_double(entry.delta) + "," + format_double(cfgs[i].u_f) + "," +
                      format_double(entry.report.fit.u_p) + "," +
                      format_double(entry.report.thickness_yf) + "," +
                      (entry.report.steady ? "1" : "0") + "," +
                      format_double(entry.vs_reference_yf.linf) + "," +
                      format_double(entry.vs_reference_theta.linf) + "\n";
        result.entries.push_back(std::move(entry));
    }
    write_file(out_dir / "sweep.csv", result.csv);
    return result;
}

} // namespace dustflame
