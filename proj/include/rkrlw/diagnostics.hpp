#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rkrlw/mesh_fn.hpp"

namespace rkrlw {

struct EnergyRecord {
    double time = 0.0;   // midpoint time t = (n + 1/2) * tau
    double energy = 0.0;
};

struct ErrorReport {
    double time = 0.0;
    double l2_error = 0.0;
    double max_error = 0.0;
};

/// Discrete energy of the pair (U^n, U^{n+1}):
///   (||U^{n+1}||^2 + ||U^n||^2)/2 + alpha*(||U^{n+1}_x||^2 + ||U^n_x||^2)/2
///   + lambda*(||U^{n+1}_xx~||^2 + ||U^n_xx~||^2)/2.
/// The same functional evaluated on a single state twice reports the
/// continuous energy of that state.
double discrete_energy(const MeshFn& u_n, const MeshFn& u_np1, double alpha, double lambda);

/// L2 and max norms of U - exact(x, t) over the interior nodes 1 .. M-1.
ErrorReport error_report(const MeshFn& u, const std::function<double(double, double)>& exact,
                         double t);

/// max_n |E^n - E^0| / |E^0|; zero for an identically zero series.
/// Throws on an empty series.
double drift(std::span<const EnergyRecord> series);

}  // namespace rkrlw
