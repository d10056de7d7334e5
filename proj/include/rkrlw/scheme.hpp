#pragma once

#include <utility>
#include <vector>

#include "rkrlw/banded.hpp"
#include "rkrlw/diagnostics.hpp"
#include "rkrlw/mesh_fn.hpp"

namespace rkrlw {

/// Coefficients of  u_t + a u_x + b u^m u_x + c u_xxx - alpha u_xxt
///                  + lambda u_xxxxt - nu u_xxxxx = 0.
struct SchemeParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha = 1.0;   // > 0
    double lambda = 1.0;  // > 0
    double nu = 0.0;
    int m = 1;            // nonlinearity power, >= 1
};

/// Throws std::invalid_argument unless alpha > 0, lambda > 0, m >= 1.
void validate(const SchemeParams& p);

struct TimeGrid {
    double tau = 0.0;
    long N = 0;
    double T = 0.0;  // = N * tau
};

void validate(const TimeGrid& tg);

struct SimState {
    long n = 0;       // index of u_curr
    MeshFn u_prev;    // U^{n-1}
    MeshFn u_curr;    // U^n
};

struct BootstrapReport {
    int iterations = 0;
    double residual = 0.0;  // last max-norm update
};

struct BootstrapResult {
    MeshFn u1;
    int iterations = 0;
    double residual = 0.0;
};

struct SimOutput {
    std::vector<std::pair<double, MeshFn>> snapshots;
    std::vector<EnergyRecord> energy;  // one record per step, n = 0 .. N-1
    BootstrapReport bootstrap;
};

/// Matrix of the implicit half of the three-level step: with W = U^{n+1}
/// unknown on the interior indices i = 2 .. M-2,
///   (1/(2 tau)) (I - alpha*Second + lambda*Fourth) W
///   + (1/2) (a*Central + c*Third - nu*Fifth) W
///   + (b / (2(m+2))) (P * Central(W) + Central(P * W)),   P = (U^n)^m.
/// Rows/columns for the clamped indices are eliminated through their zeros;
/// the result has kl = ku = 3.
BandedMatrix assemble_lhs(const MeshFn& u_n, const SchemeParams& p, double tau);

/// Right-hand side of the same step: the mirrored operators applied to
/// U^{n-1} with the advective and nonlinear signs flipped.
Eigen::VectorXd assemble_rhs(const MeshFn& u_prev, const MeshFn& u_n, const SchemeParams& p,
                             double tau);

/// One three-level step U^{n+1} from (U^{n-1}, U^n); requires s.n >= 1.
/// The result is clamped back into the boundary subspace.
MeshFn three_level_step(const SimState& s, const SchemeParams& p, double tau);

/// Max-norm of the three-level scheme equation over the interior indices
/// when (u_prev, u_curr, u_next) are inserted; the direct check that a step
/// actually satisfies its defining equation.
double scheme_residual(const MeshFn& u_prev, const MeshFn& u_curr, const MeshFn& u_next,
                       const SchemeParams& p, double tau);

/// First step U^1 from the nonlinear Crank-Nicolson system, resolved by
/// frozen-coefficient (Picard) iteration: the nonlinear field
/// ((V^k + U^0)/2)^m is frozen, the banded system is solved for V^{k+1},
/// and the loop stops when ||V^{k+1} - V^k||_inf < tol. Throws
/// NoConvergenceError past max_iter.
BootstrapResult bootstrap_crank_nicolson(const MeshFn& u0, const SchemeParams& p, double tau,
                                         double tol = 1e-12, int max_iter = 50);

/// Full simulation: one bootstrap, then N-1 three-level steps. Records the
/// discrete energy E^n for every n = 0 .. N-1 at midpoint times and a
/// snapshot every `snapshot_stride` steps (plus the initial and final
/// states; stride <= 0 keeps only those two).
SimOutput run(const MeshFn& u0, const SchemeParams& p, const TimeGrid& tg, long snapshot_stride,
              double bootstrap_tol = 1e-12, int bootstrap_max_iter = 50);

}  // namespace rkrlw
