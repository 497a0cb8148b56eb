#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dustflame/errors.hpp"
#include "dustflame/mesh.hpp"
#include "dustflame/state.hpp"

namespace dustflame {

enum class FrontField { theta, y_fuel, g };

inline const char* front_field_name(FrontField f) {
    switch (f) {
        case FrontField::theta: return "theta";
        case FrontField::y_fuel: return "yF";
        default: return "G";
    }
}

inline const std::vector<double>& front_field_values(const FlowState& st, FrontField f) {
    switch (f) {
        case FrontField::theta: return st.theta;
        case FrontField::y_fuel: return st.y[kFuel];
        default:
            if (!st.has_g()) throw diagnostics_error("front: state has no G field");
            return st.g;
    }
}

// Default tracking level: the 0.5 contour for G, the midpoint between the
// extreme values for theta and y_F.
inline double default_front_level(const FlowState& st, FrontField f) {
    if (f == FrontField::g) return 0.5;
    const auto& v = front_field_values(st, f);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return 0.5 * (*lo + *hi);
}

// Position where the profile crosses the level, by linear interpolation
// between the bracketing cell centers. The profile must cross exactly once.
inline double front_position(std::span<const double> centers, std::span<const double> values,
                             double level) {
    const int n = static_cast<int>(values.size());
    std::optional<double> crossing;
    for (int k = 0; k + 1 < n; ++k) {
        const double a = values[k] - level;
        const double b = values[k + 1] - level;
        double x;
        if (a == 0.0) {
            if (k > 0 && values[k - 1] == level) continue; // inside a flat run at the level
            x = centers[k];
        } else if (a * b < 0.0) {
            x = centers[k] + (centers[k + 1] - centers[k]) * a / (a - b);
        } else {
            continue;
        }
        if (crossing) throw diagnostics_error("front: profile crosses the level more than once");
        crossing = x;
    }
    if (values[n - 1] == level && !(n > 1 && values[n - 2] == level)) {
        if (crossing) throw diagnostics_error("front: profile crosses the level more than once");
        crossing = centers[n - 1];
    }
    if (!crossing) throw diagnostics_error("front: profile does not cross the level");
    return *crossing;
}

inline double front_position(const Mesh1D& mesh, const FlowState& st, FrontField field) {
    const auto& v = front_field_values(st, field);
    return front_position(mesh.center, v, default_front_level(st, field));
}

struct SpeedFit {
    double u_p = 0.0;       // m/s
    double fit_quality = 0.0; // coefficient of determination
    int samples_used = 0;
};

// Least-squares line through the front trajectory after discarding the
// leading transient (first drop_fraction of the samples).
inline SpeedFit wave_speed(std::span<const double> t, std::span<const double> x,
                           double drop_fraction = 0.2) {
    if (t.size() != x.size()) throw diagnostics_error("wave speed: size mismatch");
    const std::size_t first = static_cast<std::size_t>(drop_fraction * t.size());
    const std::size_t m = t.size() - first;
    if (m < 10) throw diagnostics_error("wave speed: need at least 10 samples after the transient");

    double tm = 0.0, xm = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        tm += t[i];
        xm += x[i];
    }
    tm /= m;
    xm /= m;
    double stt = 0.0, stx = 0.0, sxx = 0.0;
    for (std::size_t i = first; i < t.size(); ++i) {
        stt += (t[i] - tm) * (t[i] - tm);
        stx += (t[i] - tm) * (x[i] - xm);
        sxx += (x[i] - xm) * (x[i] - xm);
    }
    if (!(stt > 0.0)) throw diagnostics_error("wave speed: degenerate time samples");
    SpeedFit fit;
    fit.u_p = stx / stt;
    const double ss_res = sxx - fit.u_p * stx;
    fit.fit_quality = sxx > 0.0 ? std::max(0.0, 1.0 - ss_res / sxx) : 1.0;
    fit.samples_used = static_cast<int>(m);
    return fit;
}

struct PlateauStates {
    double rho_b = 0.0, u_b = 0.0;   // burnt side (left of the front)
    double rho_u = 0.0, u_u = 0.0;   // unburnt side (right of the front)
    std::array<double, kNumSpecies> y_burnt{};
    double theta_b = 0.0;
};

namespace detail {

struct Window {
    int begin = 0, end = 0; // cell range [begin, end)
};

inline double window_mean(std::span<const double> v, Window w) {
    double s = 0.0;
    for (int k = w.begin; k < w.end; ++k) s += v[k];
    return s / (w.end - w.begin);
}

inline void check_flat(std::span<const double> rho, Window w, const char* side) {
    double lo = std::numeric_limits<double>::max(), hi = -lo, mean = 0.0;
    for (int k = w.begin; k < w.end; ++k) {
        lo = std::min(lo, rho[k]);
        hi = std::max(hi, rho[k]);
        mean += rho[k];
    }
    mean /= (w.end - w.begin);
    if (hi - lo > 1e-3 * mean)
        throw diagnostics_error(std::string("plateau: ") + side + " side is not flat");
}

} // namespace detail

// Averages over the flat regions more than `margin` away from the front on
// both sides. Each window is at most `width` wide (unlimited when width = 0)
// so the samples stay representative of the near-front state; the window
// also keeps `margin` clear of the domain boundaries, which excludes the
// ignition leftover. Throws if either window is missing or the density
// varies by more than 0.1% there.
inline PlateauStates plateau_states(const Mesh1D& mesh, const FlowState& st, double front,
                                    double margin, double width = 0.0) {
    const int n = mesh.n_cells;
    const double span = width > 0.0 ? width : mesh.x_right - mesh.x_left;
    const double burnt_lo = std::max(mesh.x_left + margin, front - margin - span);
    const double burnt_hi = front - margin;
    const double unburnt_lo = front + margin;
    const double unburnt_hi = std::min(mesh.x_right - margin, front + margin + span);
    detail::Window burnt, unburnt;
    burnt.begin = n;
    unburnt.begin = n;
    for (int k = 0; k < n; ++k) {
        if (mesh.center[k] >= burnt_lo && mesh.center[k] <= burnt_hi)
            burnt.begin = std::min(burnt.begin, k), burnt.end = k + 1;
        if (mesh.center[k] >= unburnt_lo && mesh.center[k] <= unburnt_hi)
            unburnt.begin = std::min(unburnt.begin, k), unburnt.end = k + 1;
    }
    if (burnt.end - burnt.begin < 2 || unburnt.end - unburnt.begin < 2)
        throw diagnostics_error("plateau: margins leave no room on one side of the front");
    detail::check_flat(st.rho, burnt, "burnt");
    detail::check_flat(st.rho, unburnt, "unburnt");

    PlateauStates p;
    p.rho_b = detail::window_mean(st.rho, burnt);
    p.rho_u = detail::window_mean(st.rho, unburnt);
    p.theta_b = detail::window_mean(st.theta, burnt);
    for (int i = 0; i < kNumSpecies; ++i) p.y_burnt[i] = detail::window_mean(st.y[i], burnt);
    // Face velocities: average the faces interior to each window.
    auto mean_u = [&](detail::Window w) {
        double s = 0.0;
        int c = 0;
        for (int f = w.begin + 1; f < w.end; ++f, ++c) s += st.u[f];
        return c > 0 ? s / c : st.u[w.begin];
    };
    p.u_b = mean_u(burnt);
    p.u_u = mean_u(unburnt);
    return p;
}

struct JumpVelocities {
    double u_f_jump = 0.0;        // u_u rho_b / (rho_u - rho_b)
    double u_f_translation = 0.0; // u_p - u_u
    double discrepancy = 0.0;     // relative difference of the two
};

// Flame velocity from the mass-balance jump conditions across the steady
// front, (rho_u - rho_b) u_p = rho_u u_u - rho_b u_b with u_b = 0.
inline JumpVelocities flame_velocity_from_jump(double u_p, double u_u, double rho_u,
                                               double rho_b) {
    if (rho_u == rho_b)
        throw diagnostics_error("jump conditions: no density jump across the front");
    JumpVelocities jv;
    jv.u_f_jump = u_u * rho_b / (rho_u - rho_b);
    jv.u_f_translation = u_p - u_u;
    const double scale = std::max(std::abs(jv.u_f_jump), std::abs(jv.u_f_translation));
    jv.discrepancy = scale > 0.0 ? std::abs(jv.u_f_jump - jv.u_f_translation) / scale : 0.0;
    return jv;
}

struct ProfileMetrics {
    double linf = 0.0;
    double l2 = 0.0; // root mean square
    double thickness_a = 0.0;
    double thickness_b = 0.0;
    double thickness_ratio = 1.0; // b over a
};

namespace detail {

inline double interpolate(std::span<const double> x, std::span<const double> f, double xq) {
    // x is strictly increasing; xq must lie inside [x.front(), x.back()].
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t hi = std::clamp<std::size_t>(it - x.begin(), 1, x.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (xq - x[lo]) / (x[hi] - x[lo]);
    return f[lo] + w * (f[hi] - f[lo]);
}

// Width of the 10%-90% transition between the extreme values of a monotone
// front profile.
inline double transition_thickness(std::span<const double> x, std::span<const double> f) {
    const auto [lo_it, hi_it] = std::minmax_element(f.begin(), f.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) return 0.0;
    const double x10 = front_position(x, f, lo + 0.1 * (hi - lo));
    const double x90 = front_position(x, f, lo + 0.9 * (hi - lo));
    return std::abs(x90 - x10);
}

} // namespace detail

// Aligns profile b with profile a by translating it so the front positions
// (midpoint-level crossings) coincide, resamples b onto a's cell centers,
// and reports the pointwise difference over the overlap together with the
// 10%-90% transition thicknesses.
inline ProfileMetrics compare_profiles(std::span<const double> xa, std::span<const double> fa,
                                       std::span<const double> xb, std::span<const double> fb) {
    auto mid_level = [](std::span<const double> f) {
        const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
        return 0.5 * (*lo + *hi);
    };
    const double shift = front_position(xa, fa, mid_level(fa)) -
                         front_position(xb, fb, mid_level(fb));

    ProfileMetrics m;
    double sum2 = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < xa.size(); ++i) {
        const double xq = xa[i] - shift; // position in b's frame
        if (xq < xb.front() || xq > xb.back()) continue;
        const double diff = std::abs(fa[i] - detail::interpolate(xb, fb, xq));
        m.linf = std::max(m.linf, diff);
        sum2 += diff * diff;
        ++count;
    }
    if (count == 0) throw diagnostics_error("profile comparison: no overlap after alignment");
    m.l2 = std::sqrt(sum2 / count);
    m.thickness_a = detail::transition_thickness(xa, fa);
    m.thickness_b = detail::transition_thickness(xb, fb);
    m.thickness_ratio = m.thickness_a > 0.0 ? m.thickness_b / m.thickness_a
                                            : (m.thickness_b > 0.0 ? 0.0 : 1.0);
    return m;
}

inline ProfileMetrics compare_profiles(const Mesh1D& mesh_a, const FlowState& a,
                                       const Mesh1D& mesh_b, const FlowState& b,
                                       FrontField field) {
    return compare_profiles(mesh_a.center, front_field_values(a, field), mesh_b.center,
                            front_field_values(b, field));
}

// Everything the travelling-wave experiment extracts from one run.
struct WaveReport {
    std::vector<double> sample_t, sample_x; // front trajectory
    bool front_tracked = false;
    FrontField tracked_field = FrontField::theta;

    bool steady = false;
    double steady_linf_yf = std::numeric_limits<double>::quiet_NaN();

    SpeedFit fit;
    PlateauStates plateaus;
    bool plateaus_valid = false;
    JumpVelocities jump;
    bool jump_valid = false;
    double thickness_yf = std::numeric_limits<double>::quiet_NaN();
    double theta_adiabatic = std::numeric_limits<double>::quiet_NaN();
    std::string failure; // why the report is incomplete, empty if steady
};

} // namespace dustflame
