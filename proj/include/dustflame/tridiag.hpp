#pragma once

#include <cmath>
#include <vector>

#include "dustflame/errors.hpp"

namespace dustflame {

// Tridiagonal system: lower[k] couples row k to k-1, upper[k] to k+1
// (lower[0] and upper[n-1] are ignored). All 1D stencils of the scheme are
// tridiagonal, so a direct Thomas elimination is exact and O(n).
struct TridiagSystem {
    std::vector<double> lower, diag, upper, rhs;

    void resize(int n) {
        lower.assign(n, 0.0);
        diag.assign(n, 0.0);
        upper.assign(n, 0.0);
        rhs.assign(n, 0.0);
    }
    int size() const { return static_cast<int>(diag.size()); }
};

// Thomas algorithm without pivoting; the scheme's matrices are strictly
// diagonally dominant M-matrices. Overwrites the system buffers.
inline void solve_tridiagonal(TridiagSystem& sys, std::vector<double>& x) {
    const int n = sys.size();
    x.resize(n);
    double piv = sys.diag[0];
    if (!(std::abs(piv) > 0.0)) throw solver_error("tridiagonal solve: zero pivot at row 0");
    x[0] = sys.rhs[0] / piv;
    // sys.upper is reused to store the elimination factors.
    for (int k = 1; k < n; ++k) {
        sys.upper[k - 1] /= piv;
        piv = sys.diag[k] - sys.lower[k] * sys.upper[k - 1];
        if (!(std::abs(piv) > 0.0))
            throw solver_error("tridiagonal solve: zero pivot at row " + std::to_string(k));
        x[k] = (sys.rhs[k] - sys.lower[k] * x[k - 1]) / piv;
    }
    for (int k = n - 2; k >= 0; --k) x[k] -= sys.upper[k] * x[k + 1];
}

} // namespace dustflame
