#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rkrlw/mesh_fn.hpp"
#include "rkrlw/scheme.hpp"

namespace rkrlw {

struct CheckResult {
    std::string name;
    double worst = 0.0;      // worst normalized residual seen
    double tolerance = 0.0;  // pass when worst <= tolerance
    bool passed = false;
    int trials = 0;
};

/// Random element of the boundary-clamped subspace, interior values U(-1, 1).
MeshFn random_mesh_fn(const Grid& g, std::mt19937_64& rng);

/// |(du, u)| / (||u|| * ||du|| + eps) - the normalized skew residual used by
/// the Lemma-2 checks. Feeding it a miscoded antisymmetric stencil makes the
/// suite fail loudly, which is the point.
double skew_residual(const MeshFn& du, const MeshFn& u);

/// Worst skew residual of `derivative` over `trials` random mesh functions.
double worst_skew_residual(const Grid& g, std::mt19937_64& rng, int trials,
                           const std::function<MeshFn(const MeshFn&)>& derivative);

/// The randomized invariant checks behind `property-check`:
/// summation-by-parts and skew identities, the shifted-stencil norm
/// identity, the central-vs-forward norm inequality, the nonlinear-term
/// skew identity, dense-oracle equivalence of the three-level step on
/// small grids, and the ansatz residuals for both worked examples.
std::vector<CheckResult> run_property_suite(std::uint64_t seed);

}  // namespace rkrlw
