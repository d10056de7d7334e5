#pragma once

#include <array>

#include "rkrlw/mesh_fn.hpp"
#include "rkrlw/scheme.hpp"

namespace rkrlw {

enum class WaveKind { Solitary, Periodic, Complex };
enum class RootBranch { Plus, Minus };

/// Travelling-wave parameters from the cosine ansatz u = A cos^eta(B xi),
/// xi = x - v t, reduced to algebra on (eta, B^2, v, A).
struct AnsatzSolution {
    double eta = 0.0;                       // -4/m
    std::array<double, 2> bsq_roots{};      // {plus, minus} roots for B^2
    RootBranch branch = RootBranch::Minus;  // which root was chosen
    double bsq = 0.0;                       // chosen root
    WaveKind kind = WaveKind::Solitary;     // sign of bsq
    double b0 = 0.0;                        // sqrt(-bsq) on the solitary branch
    double v = 0.0;                         // wave speed
    double amplitude = 0.0;                 // A
};

/// Solves the ansatz algebra for the chosen branch:
///   eta  = -4/m,
///   B^2  = [(lambda a + nu) q +- sqrt(disc)] / [(lambda c - nu alpha) eta^2 (eta-2)^2],
///          q = eta^2 - 2 eta + 2,
///   v    = -(2 nu B^2 q + c) / (2 lambda B^2 q + alpha),
///   A    = [ (m+1)/b * B^4 eta (eta-1)(eta-2)(eta-3) (lambda v + nu) ]^{1/m}.
/// B^2 < 0 gives the solitary branch, B^2 > 0 the periodic one. Throws
/// AnsatzError for a degenerate denominator (lambda c = nu alpha), a
/// negative discriminant (complex parameters, unsupported), a velocity
/// pole, or an even-m amplitude with a negative bracket. Odd m takes the
/// signed real m-th root.
AnsatzSolution solve_ansatz(const SchemeParams& p, RootBranch branch);

/// Both roots of the B^2 quadratic, {plus, minus}.
std::array<double, 2> ansatz_bsq_roots(const SchemeParams& p);

/// Picks whichever branch has the negative (solitary) B^2 root; throws
/// AnsatzError when both or neither qualify.
RootBranch auto_branch(const SchemeParams& p);

/// u(x, t) = A sech^{4/m}(B0 (x - v t)). Solitary kind only.
/// (The ansatz exponent eta = -4/m enters as sech^{-eta}; the printed form
/// with sech^{+eta} is inconsistent with both worked examples and with the
/// identity cos^{eta}(i z) = sech^{-eta}(z).)
double eval_solitary(const AnsatzSolution& s, double x, double t);

/// Residuals of the three ansatz equations at (eta, B^2, v, A), each
/// normalized by the largest term magnitude in its equation.
std::array<double, 3> residual_oracle(const AnsatzSolution& s, const SchemeParams& p);

/// Samples the solitary wave at t = 0 on the grid and clamps the boundary
/// entries to zero. Solitary kind only.
MeshFn initial_condition(const AnsatzSolution& s, const Grid& g);

/// max(|u(x_left, 0)|, |u(x_right, 0)|): above ~1e-8 the domain is too
/// small for the decayed-tail boundary conditions to be meaningful.
double boundary_sample_magnitude(const AnsatzSolution& s, const Grid& g);

}  // namespace rkrlw
