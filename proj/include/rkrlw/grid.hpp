#pragma once

namespace rkrlw {

/// Uniform 1-D grid on [x_left, x_right] with M cells plus one fictitious
/// node beyond each end, so stored node indices run i = -1 .. M+1.
///
/// Node positions are always computed as x_left + i*h (never by repeated
/// addition), so they carry no cumulative rounding drift.
struct Grid {
    double x_left = 0.0;
    double x_right = 1.0;
    int M = 8;
    double h = 0.125;

    double node(int i) const { return x_left + i * h; }
    int min_index() const { return -1; }
    int max_index() const { return M + 1; }
    int node_count() const { return M + 3; }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Builds the uniform grid with spacing h = (x_right - x_left) / M.
/// Requires x_left < x_right and M >= 8 (the widest stencil spans i +- 3
/// and needs interior room between the clamped end bands).
Grid build_grid(double x_left, double x_right, int M);

}  // namespace rkrlw
