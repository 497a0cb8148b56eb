#pragma once

#include <vector>

#include "dustflame/errors.hpp"

namespace dustflame {

// 1D staggered mesh: scalars live in cells, velocities on faces.
// Face i is the left face of cell i; face n_cells is the right boundary.
struct Mesh1D {
    double x_left = 0.0;
    double x_right = 0.0;
    int n_cells = 0;
    std::vector<double> face;   // n_cells + 1 positions
    std::vector<double> center; // n_cells positions
    std::vector<double> width;  // n_cells widths h_K

    Mesh1D() = default;

    explicit Mesh1D(std::vector<double> face_positions) : face(std::move(face_positions)) {
        n_cells = static_cast<int>(face.size()) - 1;
        if (n_cells < 3) throw config_error("mesh: need at least 3 cells");
        x_left = face.front();
        x_right = face.back();
        center.resize(n_cells);
        width.resize(n_cells);
        for (int i = 0; i < n_cells; ++i) {
            width[i] = face[i + 1] - face[i];
            if (!(width[i] > 0.0)) throw config_error("mesh: cell widths must be > 0");
            center[i] = 0.5 * (face[i] + face[i + 1]);
        }
    }

    // Distance between the centers of cells i and i+1 (two-point diffusion flux).
    double center_distance(int i) const { return center[i + 1] - center[i]; }
};

inline Mesh1D make_uniform_mesh(double x_left, double x_right, int n_cells) {
    if (!(x_right > x_left)) throw config_error("mesh: x_right must exceed x_left");
    if (n_cells < 3) throw config_error("mesh: need at least 3 cells");
    std::vector<double> faces(n_cells + 1);
    const double h = (x_right - x_left) / n_cells;
    for (int i = 0; i <= n_cells; ++i) faces[i] = x_left + h * i;
    faces[n_cells] = x_right; // exact right endpoint
    return Mesh1D(std::move(faces));
}

} // namespace dustflame
