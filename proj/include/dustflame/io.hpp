#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dustflame/config.hpp"
#include "dustflame/diagnostics.hpp"
#include "dustflame/errors.hpp"
#include "dustflame/mesh.hpp"
#include "dustflame/state.hpp"

namespace dustflame {

// All values are printed with 17 significant digits so that files
// round-trip doubles exactly.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view v, int line) {
    const std::string tmp(v);
    char* end = nullptr;
    const double d = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || tmp.empty())
        throw config_error("config line " + std::to_string(line) + ": expected a number, got '" +
                           tmp + "'");
    return d;
}

inline int parse_int(std::string_view v, int line) {
    const double d = parse_double(v, line);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw config_error("config line " + std::to_string(line) + ": expected an integer");
    return i;
}

} // namespace detail

// The reference configuration: the stoichiometric dust/air-like mixture,
// Arrhenius constants and transport data of the data set this solver is
// validated against, on a 0.1 m closed/open domain.
inline SimulationConfig preset_config() {
    SimulationConfig cfg; // defaults in config.hpp are the preset values
    return cfg;
}

inline constexpr const char* kPresetName = "paper-sec4";

// Flat `key = value` text, '#' comments. Unknown and duplicate keys are
// rejected with their line number. A preset line, when present, must come
// first so that later lines override it.
inline SimulationConfig parse_config(const std::string& text) {
    SimulationConfig cfg;
    bool model_set = false;
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool first_entry = true;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw config_error("config line " + std::to_string(line) + ": expected key = value");
        const std::string key{detail::trim(s.substr(0, eq))};
        const std::string_view val = detail::trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw config_error("config line " + std::to_string(line) + ": empty key or value");
        if (auto [it, inserted] = seen.emplace(key, line); !inserted)
            throw config_error("config line " + std::to_string(line) + ": duplicate key '" + key +
                               "' (first on line " + std::to_string(it->second) + ")");

        if (key == "preset") {
            if (!first_entry)
                throw config_error("config line " + std::to_string(line) +
                                   ": preset must be the first entry");
            if (val != kPresetName)
                throw config_error("config line " + std::to_string(line) + ": unknown preset '" +
                                   std::string(val) + "'");
            cfg = preset_config();
            model_set = true;
        } else if (key == "model") {
            if (val == "primitive")
                cfg.model = Model::primitive;
            else if (val == "flame-velocity")
                cfg.model = Model::flame_velocity;
            else
                throw config_error("config line " + std::to_string(line) +
                                   ": model must be 'primitive' or 'flame-velocity'");
            model_set = true;
        } else if (key == "x_left") {
            cfg.x_left = detail::parse_double(val, line);
        } else if (key == "x_right") {
            cfg.x_right = detail::parse_double(val, line);
        } else if (key == "n_cells") {
            cfg.n_cells = detail::parse_int(val, line);
        } else if (key == "dt") {
            cfg.dt = detail::parse_double(val, line);
        } else if (key == "t_end") {
            cfg.t_end = detail::parse_double(val, line);
        } else if (key == "P_th") {
            cfg.p_th = detail::parse_double(val, line);
        } else if (key == "lambda") {
            cfg.lambda = detail::parse_double(val, line);
        } else if (key == "yF0") {
            cfg.y0[kFuel] = detail::parse_double(val, line);
        } else if (key == "yO0") {
            cfg.y0[kOxidant] = detail::parse_double(val, line);
        } else if (key == "yP0") {
            cfg.y0[kProduct] = detail::parse_double(val, line);
        } else if (key == "yN0") {
            cfg.y0[kNeutral] = detail::parse_double(val, line);
        } else if (key == "theta0") {
            cfg.theta0 = detail::parse_double(val, line);
        } else if (key == "ignition_cells") {
            cfg.ignition_cells = detail::parse_int(val, line);
        } else if (key == "ignition_theta") {
            cfg.ignition_theta = detail::parse_double(val, line);
        } else if (key == "u_f") {
            cfg.u_f = detail::parse_double(val, line);
        } else if (key == "delta") {
            cfg.delta = detail::parse_double(val, line);
        } else if (key == "rho_u") {
            cfg.rho_u = detail::parse_double(val, line);
        } else if (key == "arrhenius_A") {
            cfg.arrhenius_a = detail::parse_double(val, line);
        } else if (key == "arrhenius_Ta") {
            cfg.arrhenius_ta = detail::parse_double(val, line);
        } else if (key == "snapshot_every") {
            cfg.snapshot_every = detail::parse_int(val, line);
        } else if (key == "out_dir") {
            cfg.out_dir = std::string(val);
        } else {
            throw config_error("config line " + std::to_string(line) + ": unknown key '" + key +
                               "'");
        }
        first_entry = false;
    }
    if (!model_set) throw config_error("config: missing required key 'model'");
    cfg.validate();
    return cfg;
}

inline SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// Full resolved key set; feeding this text back through parse_config
// reproduces the run exactly.
inline std::string config_echo(const SimulationConfig& cfg) {
    std::ostringstream out;
    out << "model = " << model_name(cfg.model) << '\n'
        << "x_left = " << format_double(cfg.x_left) << '\n'
        << "x_right = " << format_double(cfg.x_right) << '\n'
        << "n_cells = " << cfg.n_cells << '\n'
        << "dt = " << format_double(cfg.dt) << '\n'
        << "t_end = " << format_double(cfg.t_end) << '\n'
        << "P_th = " << format_double(cfg.p_th) << '\n'
        << "lambda = " << format_double(cfg.lambda) << '\n'
        << "yF0 = " << format_double(cfg.y0[kFuel]) << '\n'
        << "yO0 = " << format_double(cfg.y0[kOxidant]) << '\n'
        << "yP0 = " << format_double(cfg.y0[kProduct]) << '\n'
        << "yN0 = " << format_double(cfg.y0[kNeutral]) << '\n'
        << "theta0 = " << format_double(cfg.theta0) << '\n'
        << "ignition_cells = " << cfg.ignition_cells << '\n'
        << "ignition_theta = " << format_double(cfg.ignition_theta) << '\n'
        << "u_f = " << format_double(cfg.u_f) << '\n'
        << "delta = " << format_double(cfg.delta) << '\n'
        << "rho_u = " << format_double(cfg.rho_u) << '\n'
        << "arrhenius_A = " << format_double(cfg.arrhenius_a) << '\n'
        << "arrhenius_Ta = " << format_double(cfg.arrhenius_ta) << '\n'
        << "snapshot_every = " << cfg.snapshot_every << '\n'
        << "out_dir = " << cfg.out_dir << '\n';
    return out.str();
}

// ---- snapshots ----

inline std::string snapshot_csv(const Mesh1D& mesh, const FlowState& st) {
    std::ostringstream out;
    out << "x,rho,u,yF,yO,yP,yN,z,theta";
    if (st.has_g()) out << ",G";
    out << '\n';
    for (int k = 0; k < mesh.n_cells; ++k) {
        const double u_center = 0.5 * (st.u[k] + st.u[k + 1]);
        out << format_double(mesh.center[k]) << ',' << format_double(st.rho[k]) << ','
            << format_double(u_center) << ',' << format_double(st.y[kFuel][k]) << ','
            << format_double(st.y[kOxidant][k]) << ',' << format_double(st.y[kProduct][k]) << ','
            << format_double(st.y[kNeutral][k]) << ',' << format_double(st.z[k]) << ','
            << format_double(st.theta[k]);
        if (st.has_g()) out << ',' << format_double(st.g[k]);
        out << '\n';
    }
    return out.str();
}

struct Snapshot {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; // one vector per column

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return data[i];
        throw config_error("snapshot: missing column '" + name + "'");
    }
    bool has_column(const std::string& name) const {
        for (const auto& c : columns)
            if (c == name) return true;
        return false;
    }
};

inline Snapshot read_snapshot_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open snapshot " + path.string());
    Snapshot snap;
    std::string line;
    if (!std::getline(in, line)) throw config_error("snapshot " + path.string() + " is empty");
    std::istringstream head(line);
    for (std::string c; std::getline(head, c, ',');) snap.columns.push_back(c);
    snap.data.resize(snap.columns.size());
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            if (col >= snap.columns.size())
                throw config_error("snapshot " + path.string() + " row " + std::to_string(row) +
                                   ": too many cells");
            snap.data[col++].push_back(detail::parse_double(cell, row));
        }
        if (col != snap.columns.size())
            throw config_error("snapshot " + path.string() + " row " + std::to_string(row) +
                               ": too few cells");
    }
    return snap;
}

// ---- full-fidelity state files (exact round trip) ----

inline std::string serialize_state(const FlowState& st) {
    std::ostringstream out;
    const int n = st.n_cells();
    out << "dustflame-state 1\n";
    out << "t " << format_double(st.t) << '\n';
    out << "n_cells " << n << '\n';
    out << "has_g " << (st.has_g() ? 1 : 0) << '\n';
    auto dump = [&](const char* name, const std::vector<double>& v) {
        out << name;
        for (double x : v) out << ' ' << format_double(x);
        out << '\n';
    };
    dump("rho", st.rho);
    dump("rho_prev", st.rho_prev);
    dump("yF", st.y[kFuel]);
    dump("yO", st.y[kOxidant]);
    dump("yP", st.y[kProduct]);
    dump("yN", st.y[kNeutral]);
    dump("z", st.z);
    dump("theta", st.theta);
    dump("u", st.u);
    if (st.has_g()) dump("g", st.g);
    return out.str();
}

inline FlowState deserialize_state(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "dustflame-state" || version != 1)
        throw config_error("state file: bad header");
    FlowState st;
    std::string key;
    int n = 0, has_g = 0;
    in >> key >> st.t;
    in >> key >> n;
    in >> key >> has_g;
    if (n <= 0) throw config_error("state file: bad cell count");
    auto read_vec = [&](const char* name, std::vector<double>& v, int count) {
        in >> key;
        if (key != name) throw config_error("state file: expected field " + std::string(name));
        v.resize(count);
        for (double& x : v)
            if (!(in >> x)) throw config_error("state file: truncated field " + key);
    };
    read_vec("rho", st.rho, n);
    read_vec("rho_prev", st.rho_prev, n);
    read_vec("yF", st.y[kFuel], n);
    read_vec("yO", st.y[kOxidant], n);
    read_vec("yP", st.y[kProduct], n);
    read_vec("yN", st.y[kNeutral], n);
    read_vec("z", st.z, n);
    read_vec("theta", st.theta, n);
    read_vec("u", st.u, n + 1);
    if (has_g) read_vec("g", st.g, n);
    return st;
}

// ---- wave report ----

inline std::vector<std::pair<std::string, std::string>> report_fields(const WaveReport& r) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("steady", r.steady ? "1" : "0");
    kv.emplace_back("front_field", front_field_name(r.tracked_field));
    kv.emplace_back("front_samples", std::to_string(r.sample_t.size()));
    kv.emplace_back("u_p", format_double(r.fit.u_p));
    kv.emplace_back("fit_quality", format_double(r.fit.fit_quality));
    kv.emplace_back("rho_u", format_double(r.plateaus.rho_u));
    kv.emplace_back("u_u", format_double(r.plateaus.u_u));
    kv.emplace_back("rho_b", format_double(r.plateaus.rho_b));
    kv.emplace_back("u_b", format_double(r.plateaus.u_b));
    kv.emplace_back("theta_b", format_double(r.plateaus.theta_b));
    kv.emplace_back("theta_adiabatic", format_double(r.theta_adiabatic));
    kv.emplace_back("y_burnt_F", format_double(r.plateaus.y_burnt[kFuel]));
    kv.emplace_back("y_burnt_O", format_double(r.plateaus.y_burnt[kOxidant]));
    kv.emplace_back("y_burnt_P", format_double(r.plateaus.y_burnt[kProduct]));
    kv.emplace_back("y_burnt_N", format_double(r.plateaus.y_burnt[kNeutral]));
    kv.emplace_back("u_f_jump", format_double(r.jump.u_f_jump));
    kv.emplace_back("u_f_translation", format_double(r.jump.u_f_translation));
    kv.emplace_back("u_f_discrepancy", format_double(r.jump.discrepancy));
    kv.emplace_back("thickness_yF", format_double(r.thickness_yf));
    kv.emplace_back("steady_linf_yF", format_double(r.steady_linf_yf));
    kv.emplace_back("failure", r.failure.empty() ? "none" : r.failure);
    return kv;
}

inline std::string report_text(const WaveReport& r) {
    std::ostringstream out;
    for (const auto& [k, v] : report_fields(r)) out << k << " = " << v << '\n';
    return out.str();
}

inline std::string report_csv(const WaveReport& r) {
    const auto kv = report_fields(r);
    std::ostringstream out;
    for (std::size_t i = 0; i < kv.size(); ++i) out << kv[i].first << (i + 1 < kv.size() ? ',' : '\n');
    for (std::size_t i = 0; i < kv.size(); ++i) out << kv[i].second << (i + 1 < kv.size() ? ',' : '\n');
    return out.str();
}

// ---- run manifest ----

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Lists every file a run produced, with checksums, plus the resolved
// configuration echo that replays the run.
struct RunManifest {
    std::string command;
    std::string config_echo;
    std::vector<std::pair<std::string, std::uint64_t>> files; // name -> fnv1a64

    void add(const std::string& name, std::string_view content) {
        files.emplace_back(name, fnv1a64(content));
    }

    std::string to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["config"] = config_echo;
        auto arr = nlohmann::json::array();
        for (const auto& [name, sum] : files) {
            char hex[20];
            std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(sum));
            arr.push_back({{"name", name}, {"fnv1a64", hex}});
        }
        j["files"] = arr;
        return j.dump(2) + "\n";
    }
};

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw config_error("short write to " + path.string());
}

} // namespace dustflame
