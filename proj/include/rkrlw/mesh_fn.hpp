#pragma once

#include <Eigen/Dense>
#include <cassert>

#include "rkrlw/grid.hpp"

namespace rkrlw {

/// Mesh function on a Grid, stored at nodes i = -1 .. M+1.
///
/// Solution states live in the subspace with
/// U_{-1} = U_0 = U_1 = U_{M-1} = U_M = U_{M+1} = 0 (homogeneous boundary
/// values up to second differences, plus the two fictitious nodes); call
/// zero_boundary() to force membership. Difference-operator results use the
/// same container but are in general nonzero at the first and last interior
/// nodes, and they must stay that way: zeroing them breaks the
/// summation-by-parts identities and the discrete energy balance.
class MeshFn {
public:
    MeshFn() = default;
    explicit MeshFn(const Grid& g)
        : grid_(g), values_(Eigen::VectorXd::Zero(g.node_count())) {}
    MeshFn(const Grid& g, Eigen::VectorXd values) : grid_(g), values_(std::move(values)) {
        assert(values_.size() == grid_.node_count());
    }

    const Grid& grid() const { return grid_; }

    double operator()(int i) const {
        assert(i >= -1 && i <= grid_.M + 1);
        return values_[i + 1];
    }
    double& operator()(int i) {
        assert(i >= -1 && i <= grid_.M + 1);
        return values_[i + 1];
    }

    const Eigen::VectorXd& values() const { return values_; }
    Eigen::VectorXd& values() { return values_; }

    /// Forces the six clamped entries (i = -1, 0, 1, M-1, M, M+1) to zero.
    void zero_boundary();
    bool has_zero_boundary(double tol = 0.0) const;

private:
    Grid grid_;
    Eigen::VectorXd values_;
};

/// The composite difference operators of the scheme. All are built from the
/// forward (x), backward (x~), and central (x^) first differences:
///   Forward   (U_{i+1} - U_i) / h
///   Backward  (U_i - U_{i-1}) / h
///   Central   (U_{i+1} - U_{i-1}) / (2h)
///   Second    (U_{i+1} - 2U_i + U_{i-1}) / h^2
///   Third     (U_{i+2} - 2U_{i+1} + 2U_{i-1} - U_{i-2}) / (2h^3)
///   Fourth    (U_{i+2} - 4U_{i+1} + 6U_i - 4U_{i-1} + U_{i-2}) / h^4
///   Fifth     (U_{i+3} - 4U_{i+2} + 5U_{i+1} - 5U_{i-1} + 4U_{i-2} - U_{i-3}) / (2h^5)
enum class DiffOp { Forward, Backward, Central, Second, Third, Fourth, Fifth };

/// Evaluates the stencil at every index where it fits inside -1 .. M+1 and
/// writes zero elsewhere. The output is returned raw (see MeshFn docs).
MeshFn apply_diff(DiffOp op, const MeshFn& u);

/// (U, V) = h * sum_{i=1}^{M-1} U_i V_i. Throws on grid mismatch.
double inner_product(const MeshFn& u, const MeshFn& v);

/// sqrt(h * sum_i V_i^2) over every stored node. For functions with zero
/// clamped entries this equals sqrt((V, V)); for raw operator outputs it
/// also counts the end values an interior-only sum would drop, which is
/// what makes ||U_xx|| == ||U_xx~|| and the energy identities exact.
double norm_l2(const MeshFn& u);

/// max_{1 <= i <= M-1} |U_i|.
double norm_max(const MeshFn& u);

/// Pointwise integer power u_i^m, m >= 0.
MeshFn pointwise_pow(const MeshFn& u, int m);

MeshFn pointwise_product(const MeshFn& u, const MeshFn& v);

MeshFn operator+(const MeshFn& a, const MeshFn& b);
MeshFn operator-(const MeshFn& a, const MeshFn& b);
MeshFn operator-(const MeshFn& a);
MeshFn operator*(double s, const MeshFn& a);
MeshFn operator*(const MeshFn& a, double s);

/// Samples f at every stored node (no boundary forcing).
template <class F>
MeshFn sample(const Grid& g, F&& f) {
    MeshFn out(g);
    for (int i = g.min_index(); i <= g.max_index(); ++i) out(i) = f(g.node(i));
    return out;
}

}  // namespace rkrlw
