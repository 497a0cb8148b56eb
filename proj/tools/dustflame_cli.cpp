#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dustflame/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitThreshold = 4;

std::vector<double> parse_delta_list(const std::string& list) {
    std::vector<double> deltas;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos);
        if (!item.empty()) {
            char* end = nullptr;
            const double d = std::strtod(item.c_str(), &end);
            if (end != item.c_str() + item.size() || !(d > 0.0))
                throw dustflame::config_error("sweep: bad delta '" + item + "'");
            deltas.push_back(d);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (deltas.empty()) throw dustflame::config_error("sweep: empty delta list");
    return deltas;
}

void print_report_summary(const dustflame::WaveReport& rep) {
    std::cout << "steady: " << (rep.steady ? "yes" : "no");
    if (!rep.failure.empty()) std::cout << " (" << rep.failure << ")";
    std::cout << "\nu_p = " << rep.fit.u_p << " m/s (fit quality " << rep.fit.fit_quality << ")\n";
    if (rep.jump_valid)
        std::cout << "u_f = " << rep.jump.u_f_jump << " m/s (jump), " << rep.jump.u_f_translation
                  << " m/s (translation), discrepancy " << rep.jump.discrepancy << "\n";
    if (rep.plateaus_valid)
        std::cout << "plateaus: rho_u = " << rep.plateaus.rho_u << ", u_u = " << rep.plateaus.u_u
                  << ", rho_b = " << rep.plateaus.rho_b << ", theta_b = " << rep.plateaus.theta_b
                  << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D laminar dust-cloud combustion solver (primitive and "
                 "flame-velocity formulations)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir_override;
    auto* run = app.add_subcommand("run", "run one simulation from a config file");
    run->add_option("config", config_path, "key = value configuration file")->required();
    run->add_option("--out-dir", out_dir_override, "override the configured output directory");

    std::string dir_a, dir_b, compare_out;
    std::vector<std::string> fields{"yF", "theta"};
    double linf_max = -1.0;
    auto* cmp = app.add_subcommand("compare",
                                   "aligned-profile metrics between the last snapshots of two runs");
    cmp->add_option("run_a", dir_a, "first run directory")->required();
    cmp->add_option("run_b", dir_b, "second run directory")->required();
    cmp->add_option("--field", fields, "snapshot columns to compare (default: yF theta)");
    cmp->add_option("--linf-max", linf_max, "fail (exit 4) if any L-inf difference exceeds this");
    cmp->add_option("--out", compare_out, "also write the comparison CSV here");

    std::string sweep_config, delta_list, sweep_out = "sweep";
    auto* swp = app.add_subcommand("sweep",
                                   "primitive reference run, then one flame-velocity run per delta");
    swp->add_option("config", sweep_config, "base configuration file")->required();
    swp->add_option("--deltas", delta_list, "comma-separated list of delta values in meters")
        ->required();
    swp->add_option("--out-dir", sweep_out, "sweep output directory (default: sweep)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            dustflame::SimulationConfig cfg = dustflame::load_config(config_path);
            if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
            const dustflame::RunResult result = dustflame::run_simulation(cfg);
            std::cout << "run finished at t = " << result.state.t << " s, output in "
                      << cfg.out_dir << "\n";
            print_report_summary(result.report);
            return kExitOk;
        }
        if (*cmp) {
            const auto result = dustflame::compare_command(
                dir_a, dir_b, fields,
                linf_max >= 0.0 ? std::optional<double>(linf_max) : std::nullopt);
            std::cout << result.csv;
            if (!compare_out.empty()) dustflame::write_file(compare_out, result.csv);
            if (!result.within_thresholds) {
                std::cerr << "comparison thresholds exceeded\n";
                return kExitThreshold;
            }
            return kExitOk;
        }
        if (*swp) {
            const dustflame::SimulationConfig base = dustflame::load_config(sweep_config);
            const auto deltas = parse_delta_list(delta_list);
            const auto result = dustflame::sweep_command(base, deltas, sweep_out);
            std::cout << result.csv;
            std::cout << "sweep output in " << sweep_out << "\n";
            return kExitOk;
        }
    } catch (const dustflame::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dustflame::solver_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const dustflame::diagnostics_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
