#include "rkrlw/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace rkrlw {

double discrete_energy(const MeshFn& u_n, const MeshFn& u_np1, double alpha, double lambda) {
    if (u_n.grid() != u_np1.grid()) throw std::invalid_argument("discrete_energy: grid mismatch");

    auto sq = [](double x) { return x * x; };
    auto half_sum = [&](DiffOp op) {
        return 0.5 * (sq(norm_l2(apply_diff(op, u_np1))) + sq(norm_l2(apply_diff(op, u_n))));
    };
    const double l2 = 0.5 * (sq(norm_l2(u_np1)) + sq(norm_l2(u_n)));
    return l2 + alpha * half_sum(DiffOp::Forward) + lambda * half_sum(DiffOp::Second);
}

ErrorReport error_report(const MeshFn& u, const std::function<double(double, double)>& exact,
                         double t) {
    const Grid& g = u.grid();
    double sum_sq = 0.0;
    double worst = 0.0;
    for (int i = 1; i <= g.M - 1; ++i) {
        const double e = u(i) - exact(g.node(i), t);
        sum_sq += e * e;
        worst = std::max(worst, std::abs(e));
    }
    return {t, std::sqrt(g.h * sum_sq), worst};
}

double drift(std::span<const EnergyRecord> series) {
    if (series.empty()) throw std::invalid_argument("drift: empty energy series");
    const double e0 = series.front().energy;
    double worst = 0.0;
    for (const auto& rec : series) worst = std::max(worst, std::abs(rec.energy - e0));
    if (worst == 0.0) return 0.0;  // covers the all-zero series
    return worst / std::abs(e0);
}

}  // namespace rkrlw
