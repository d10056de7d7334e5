#include "rkrlw/mesh_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rkrlw {

void MeshFn::zero_boundary() {
    const int M = grid_.M;
    for (int i : {-1, 0, 1, M - 1, M, M + 1}) (*this)(i) = 0.0;
}

bool MeshFn::has_zero_boundary(double tol) const {
    const int M = grid_.M;
    for (int i : {-1, 0, 1, M - 1, M, M + 1}) {
        if (std::abs((*this)(i)) > tol) return false;
    }
    return true;
}

namespace {

struct Stencil {
    int lo;            // leftmost offset
    int width;         // number of taps
    double coeff[7];   // tap weights, offsets lo .. lo + width - 1
    int power;         // power of h in the denominator
    double factor;     // 2 for the centered odd-order stencils, else 1

    double denom(double h) const {
        double d = factor;
        for (int k = 0; k < power; ++k) d *= h;
        return d;
    }
};

Stencil stencil_for(DiffOp op) {
    switch (op) {
        case DiffOp::Forward:  return {0, 2, {-1, 1}, 1, 1};
        case DiffOp::Backward: return {-1, 2, {-1, 1}, 1, 1};
        case DiffOp::Central:  return {-1, 3, {-1, 0, 1}, 1, 2};
        case DiffOp::Second:   return {-1, 3, {1, -2, 1}, 2, 1};
        case DiffOp::Third:    return {-2, 5, {-1, 2, 0, -2, 1}, 3, 2};
        case DiffOp::Fourth:   return {-2, 5, {1, -4, 6, -4, 1}, 4, 1};
        case DiffOp::Fifth:    return {-3, 7, {-1, 4, -5, 0, 5, -4, 1}, 5, 2};
    }
    throw std::invalid_argument("unknown difference operator");
}

}  // namespace

MeshFn apply_diff(DiffOp op, const MeshFn& u) {
    const Grid& g = u.grid();
    const Stencil s = stencil_for(op);
    const double scale = 1.0 / s.denom(g.h);
    const int hi = s.lo + s.width - 1;
    const int first = std::max(g.min_index(), g.min_index() - s.lo);
    const int last = std::min(g.max_index(), g.max_index() - hi);

    MeshFn out(g);
    for (int i = first; i <= last; ++i) {
        double acc = 0.0;
        for (int k = 0; k < s.width; ++k) acc += s.coeff[k] * u(i + s.lo + k);
        out(i) = acc * scale;
    }
    return out;
}

double inner_product(const MeshFn& u, const MeshFn& v) {
    if (u.grid() != v.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    const int M = u.grid().M;
    // interior nodes i = 1 .. M-1 sit at storage offsets 2 .. M
    return u.grid().h * u.values().segment(2, M - 1).dot(v.values().segment(2, M - 1));
}

double norm_l2(const MeshFn& u) {
    return std::sqrt(u.grid().h * u.values().squaredNorm());
}

double norm_max(const MeshFn& u) {
    const int M = u.grid().M;
    return u.values().segment(2, M - 1).cwiseAbs().maxCoeff();
}

MeshFn pointwise_pow(const MeshFn& u, int m) {
    if (m < 0) throw std::invalid_argument("pointwise_pow: negative exponent");
    MeshFn out(u.grid());
    auto& ov = out.values();
    const auto& uv = u.values();
    for (Eigen::Index k = 0; k < uv.size(); ++k) {
        double p = 1.0;
        for (int j = 0; j < m; ++j) p *= uv[k];
        ov[k] = p;
    }
    return out;
}

MeshFn pointwise_product(const MeshFn& u, const MeshFn& v) {
    if (u.grid() != v.grid()) throw std::invalid_argument("pointwise_product: grid mismatch");
    return {u.grid(), (u.values().array() * v.values().array()).matrix()};
}

namespace {
void require_same_grid(const MeshFn& a, const MeshFn& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("mesh function grid mismatch");
}
}  // namespace

MeshFn operator+(const MeshFn& a, const MeshFn& b) {
    require_same_grid(a, b);
    return {a.grid(), a.values() + b.values()};
}

MeshFn operator-(const MeshFn& a, const MeshFn& b) {
    require_same_grid(a, b);
    return {a.grid(), a.values() - b.values()};
}

MeshFn operator-(const MeshFn& a) { return {a.grid(), -a.values()}; }

MeshFn operator*(double s, const MeshFn& a) { return {a.grid(), s * a.values()}; }

MeshFn operator*(const MeshFn& a, double s) { return s * a; }

}  // namespace rkrlw
