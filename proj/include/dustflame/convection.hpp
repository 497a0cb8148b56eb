#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dustflame/mesh.hpp"

namespace dustflame {

inline double positive_part(double v) { return v > 0.0 ? v : 0.0; }
inline double negative_part(double v) { return v < 0.0 ? -v : 0.0; }

inline double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

// Superbee slope: the most compressive TVD choice; keeps slowly moving
// contacts a few cells wide.
inline double superbee(double a, double b) {
    const double s1 = minmod(2.0 * a, b);
    const double s2 = minmod(a, 2.0 * b);
    return std::abs(s1) > std::abs(s2) ? s1 : s2;
}

enum class Limiter { minmod, superbee };

inline double limited_slope(Limiter lim, double a, double b) {
    return lim == Limiter::minmod ? minmod(a, b) : superbee(a, b);
}

// Contribution of div[F q]_K to row K of an implicit system, with the face
// value of q taken upstream of the mass flux F. Together with the time term
// this yields an M-matrix row: nonnegative diagonal, nonpositive
// off-diagonals. rhs collects the known inflow boundary part.
struct ConvectionRow {
    double lower = 0.0, diag = 0.0, upper = 0.0;
    double rhs = 0.0;
};

inline ConvectionRow upwind_convection_row(const Mesh1D& mesh, std::span<const double> flux,
                                           int cell, double q_in_left = 0.0,
                                           double q_in_right = 0.0) {
    const int n = mesh.n_cells;
    const double inv_h = 1.0 / mesh.width[cell];
    const double f_left = flux[cell];
    const double f_right = flux[cell + 1];

    ConvectionRow row;
    // Outgoing flux through the right face.
    row.diag += inv_h * positive_part(f_right);
    if (cell + 1 < n)
        row.upper -= inv_h * negative_part(f_right);
    else
        row.rhs += inv_h * negative_part(f_right) * q_in_right;
    // Incoming flux through the left face.
    row.diag += inv_h * negative_part(f_left);
    if (cell > 0)
        row.lower -= inv_h * positive_part(f_left);
    else
        row.rhs += inv_h * positive_part(f_left) * q_in_left;
    return row;
}

// Limited upwind (MUSCL) face values of a scalar q for the given face mass
// fluxes. Boundary faces fall back to first order; inflow faces take the
// prescribed exterior value.
inline void limited_face_values(const Mesh1D& mesh, std::span<const double> q,
                                std::span<const double> flux, double q_in_left,
                                double q_in_right, Limiter lim, std::vector<double>& face_q) {
    const int n = mesh.n_cells;
    face_q.resize(n + 1);

    face_q[0] = flux[0] > 0.0 ? q_in_left : q[0];
    face_q[n] = flux[n] < 0.0 ? q_in_right : q[n - 1];

    for (int f = 1; f < n; ++f) {
        const int left = f - 1, right = f;
        if (flux[f] >= 0.0) {
            double slope = 0.0;
            if (left > 0)
                slope = limited_slope(lim,
                                      (q[left] - q[left - 1]) / mesh.center_distance(left - 1),
                                      (q[right] - q[left]) / mesh.center_distance(left));
            face_q[f] = q[left] + 0.5 * mesh.width[left] * slope;
        } else {
            double slope = 0.0;
            if (right + 1 < n)
                slope = limited_slope(lim, (q[right] - q[left]) / mesh.center_distance(left),
                                      (q[right + 1] - q[right]) / mesh.center_distance(right));
            face_q[f] = q[right] - 0.5 * mesh.width[right] * slope;
        }
    }
}

inline void muscl_face_values(const Mesh1D& mesh, std::span<const double> q,
                              std::span<const double> flux, double q_in_left,
                              double q_in_right, std::vector<double>& face_q) {
    limited_face_values(mesh, q, flux, q_in_left, q_in_right, Limiter::minmod, face_q);
}

// div[F q]_K from precomputed face values.
inline double explicit_convection_div(const Mesh1D& mesh, std::span<const double> flux,
                                      std::span<const double> face_q, int cell) {
    return (flux[cell + 1] * face_q[cell + 1] - flux[cell] * face_q[cell]) / mesh.width[cell];
}

// Largest cell convection number dt * (outgoing flux) / (rho_prev h); the
// explicit MUSCL update preserves bounds for values up to 1/2.
inline double convection_cfl(const Mesh1D& mesh, std::span<const double> flux,
                             std::span<const double> rho_prev, double dt) {
    double worst = 0.0;
    for (int k = 0; k < mesh.n_cells; ++k) {
        const double outgoing = positive_part(flux[k + 1]) + negative_part(flux[k]);
        worst = std::max(worst, dt * outgoing / (rho_prev[k] * mesh.width[k]));
    }
    return worst;
}

} // namespace dustflame
