#include "rkrlw/property_suite.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rkrlw/exact_solutions.hpp"

namespace rkrlw {

MeshFn random_mesh_fn(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    MeshFn u(g);
    for (int i = 2; i <= g.M - 2; ++i) u(i) = dist(rng);
    return u;
}

double skew_residual(const MeshFn& du, const MeshFn& u) {
    const double scale = norm_l2(u) * norm_l2(du);
    return std::abs(inner_product(du, u)) / (scale + 1e-300);
}

double worst_skew_residual(const Grid& g, std::mt19937_64& rng, int trials,
                           const std::function<MeshFn(const MeshFn&)>& derivative) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const MeshFn u = random_mesh_fn(g, rng);
        worst = std::max(worst, skew_residual(derivative(u), u));
    }
    return worst;
}

namespace {

// ---------------------------------------------------------------------------
// Dense reference for the three-level step, written from the operator
// definitions alone so it shares no code with the banded assembly. Builds
// (M+3) x (M+3) one-step operator matrices acting on full node vectors,
// restricts them to the interior unknowns, and solves densely.

Eigen::MatrixXd dense_operator(const Grid& g, const std::vector<std::pair<int, double>>& taps,
                               double denom) {
    const int n = g.node_count();
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n, n);
    for (int row = 0; row < n; ++row) {
        bool fits = true;
        for (const auto& [off, w] : taps) {
            (void)w;
            if (row + off < 0 || row + off >= n) fits = false;
        }
        if (!fits) continue;
        for (const auto& [off, w] : taps) op(row, row + off) += w / denom;
    }
    return op;
}

struct DenseOps {
    Eigen::MatrixXd central, second, third, fourth, fifth;
};

DenseOps dense_ops(const Grid& g) {
    const double h = g.h;
    DenseOps ops;
    ops.central = dense_operator(g, {{-1, -1}, {1, 1}}, 2 * h);
    ops.second = dense_operator(g, {{-1, 1}, {0, -2}, {1, 1}}, h * h);
    ops.third = dense_operator(g, {{-2, -1}, {-1, 2}, {1, -2}, {2, 1}}, 2 * h * h * h);
    ops.fourth = dense_operator(g, {{-2, 1}, {-1, -4}, {0, 6}, {1, -4}, {2, 1}}, h * h * h * h);
    ops.fifth = dense_operator(g, {{-3, -1}, {-2, 4}, {-1, -5}, {1, 5}, {2, -4}, {3, 1}},
                               2 * h * h * h * h * h);
    return ops;
}

MeshFn dense_three_level_step(const MeshFn& u_prev, const MeshFn& u_curr, const SchemeParams& p,
                              double tau) {
    const Grid& g = u_curr.grid();
    const int n = g.node_count();
    const DenseOps ops = dense_ops(g);

    Eigen::VectorXd pw(n);
    for (int k = 0; k < n; ++k) {
        double v = 1.0;
        for (int j = 0; j < p.m; ++j) v *= u_curr.values()[k];
        pw[k] = v;
    }
    const Eigen::MatrixXd pdiag = pw.asDiagonal();

    const Eigen::MatrixXd time_part =
        (Eigen::MatrixXd::Identity(n, n) - p.alpha * ops.second + p.lambda * ops.fourth) /
        (2.0 * tau);
    const Eigen::MatrixXd space_part =
        0.5 * (p.a * ops.central + p.c * ops.third - p.nu * ops.fifth);
    const Eigen::MatrixXd nonlin =
        p.b / (2.0 * (p.m + 2)) * (pdiag * ops.central + ops.central * pdiag);

    const Eigen::MatrixXd lhs_full = time_part + space_part + nonlin;
    const Eigen::VectorXd rhs_full = (time_part - space_part - nonlin) * u_prev.values();

    // unknowns are grid indices 2 .. M-2, i.e. storage 3 .. M-1
    const int nu_cnt = g.M - 3;
    Eigen::MatrixXd lhs(nu_cnt, nu_cnt);
    Eigen::VectorXd rhs(nu_cnt);
    for (int r = 0; r < nu_cnt; ++r) {
        rhs[r] = rhs_full[r + 3];
        for (int c = 0; c < nu_cnt; ++c) lhs(r, c) = lhs_full(r + 3, c + 3);
    }
    const Eigen::VectorXd w = Eigen::PartialPivLU<Eigen::MatrixXd>(lhs).solve(rhs);

    MeshFn next(g);
    for (int k = 0; k < nu_cnt; ++k) next(k + 2) = w[k];
    return next;
}

// ---------------------------------------------------------------------------

struct SuiteBuilder {
    std::mt19937_64 rng;
    std::vector<CheckResult> results;

    void add(const std::string& name, double worst, double tol, int trials) {
        results.push_back({name, worst, tol, worst <= tol, trials});
    }
};

double rel_gap(double lhs, double rhs, double scale) {
    return std::abs(lhs - rhs) / (scale + 1e-300);
}

void check_summation_by_parts(SuiteBuilder& sb, const std::vector<Grid>& grids, int trials) {
    double w_central = 0.0, w_forward = 0.0, w_second = 0.0, w_fourth = 0.0;
    int done = 0;
    for (int t = 0; t < trials; ++t) {
        const Grid& g = grids[t % grids.size()];
        MeshFn u = random_mesh_fn(g, sb.rng);
        MeshFn v = random_mesh_fn(g, sb.rng);

        const MeshFn ux = apply_diff(DiffOp::Forward, u);
        const MeshFn vx = apply_diff(DiffOp::Forward, v);
        const MeshFn uxh = apply_diff(DiffOp::Central, u);
        const MeshFn vxh = apply_diff(DiffOp::Central, v);
        const MeshFn vxb = apply_diff(DiffOp::Backward, v);
        const MeshFn uxx = apply_diff(DiffOp::Second, u);
        const MeshFn ufour = apply_diff(DiffOp::Fourth, u);

        const double nu2 = norm_l2(u), nv2 = norm_l2(v);
        w_central = std::max(w_central, rel_gap(inner_product(uxh, v), -inner_product(u, vxh),
                                                norm_l2(uxh) * nv2 + nu2 * norm_l2(vxh)));
        w_forward = std::max(w_forward, rel_gap(inner_product(ux, v), -inner_product(u, vxb),
                                                norm_l2(ux) * nv2 + nu2 * norm_l2(vxb)));
        w_second = std::max(w_second, rel_gap(inner_product(uxx, v), -inner_product(ux, vx),
                                              norm_l2(uxx) * nv2 + norm_l2(ux) * norm_l2(vx)));
        const double nsecond = norm_l2(uxx);
        w_fourth = std::max(w_fourth, rel_gap(inner_product(u, ufour), nsecond * nsecond,
                                              nu2 * norm_l2(ufour) + nsecond * nsecond));
        ++done;
    }
    sb.add("sbp_central_pair", w_central, 1e-12, done);
    sb.add("sbp_forward_backward_pair", w_forward, 1e-12, done);
    sb.add("sbp_second_vs_first", w_second, 1e-12, done);
    sb.add("sbp_fourth_vs_second_norm", w_fourth, 1e-12, done);
}

void check_skew_identities(SuiteBuilder& sb, const std::vector<Grid>& grids, int trials) {
    const struct {
        const char* name;
        DiffOp op;
    } cases[] = {{"skew_central", DiffOp::Central},
                 {"skew_third", DiffOp::Third},
                 {"skew_fifth", DiffOp::Fifth}};
    for (const auto& cs : cases) {
        double worst = 0.0;
        for (size_t k = 0; k < grids.size(); ++k) {
            worst = std::max(
                worst, worst_skew_residual(grids[k], sb.rng,
                                           trials / static_cast<int>(grids.size()) + 1,
                                           [&](const MeshFn& u) { return apply_diff(cs.op, u); }));
        }
        sb.add(cs.name, worst, 1e-12, trials);
    }
}

void check_norm_identity(SuiteBuilder& sb, const std::vector<Grid>& grids, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Grid& g = grids[t % grids.size()];
        const MeshFn u = random_mesh_fn(g, sb.rng);
        MeshFn uxx = apply_diff(DiffOp::Forward, u);
        uxx = apply_diff(DiffOp::Forward, uxx);
        const double a = norm_l2(uxx);
        const double b = norm_l2(apply_diff(DiffOp::Second, u));
        worst = std::max(worst, std::abs(a - b) / (b + 1e-300));
    }
    sb.add("norm_identity_xx_vs_xxbar", worst, 1e-14, trials);
}

void check_norm_inequality(SuiteBuilder& sb, const std::vector<Grid>& grids, int trials) {
    double worst = 0.0;  // positive when the inequality is violated
    for (int t = 0; t < trials; ++t) {
        const Grid& g = grids[t % grids.size()];
        const MeshFn u = random_mesh_fn(g, sb.rng);
        const double central = norm_l2(apply_diff(DiffOp::Central, u));
        const double forward = norm_l2(apply_diff(DiffOp::Forward, u));
        worst = std::max(worst, (central - forward) / (forward + 1e-300));
    }
    sb.add("central_norm_le_forward_norm", worst, 1e-15, trials);
}

void check_nonlinear_skew(SuiteBuilder& sb, const std::vector<Grid>& grids, int trials) {
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Grid& g = grids[t % grids.size()];
        const int m = 1 + t % 4;
        const MeshFn u = random_mesh_fn(g, sb.rng);
        const MeshFn v = random_mesh_fn(g, sb.rng);
        const MeshFn p = pointwise_pow(u, m);
        const MeshFn term = pointwise_product(p, apply_diff(DiffOp::Central, v)) +
                            apply_diff(DiffOp::Central, pointwise_product(p, v));
        const double scale = norm_l2(term) * norm_l2(v) + 1e-300;
        worst = std::max(worst, std::abs(inner_product(term, v)) / scale);
    }
    sb.add("nonlinear_term_skew", worst, 1e-12, trials);
}

void check_dense_step_equivalence(SuiteBuilder& sb, int trials) {
    const SchemeParams base{1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 1};
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int M = (t % 2 == 0) ? 12 : 16;
        const Grid g = build_grid(-1.0, 1.0, M);
        SchemeParams p = base;
        p.m = 1 + t % 2;
        const double tau = 0.05;
        MeshFn u_prev = random_mesh_fn(g, sb.rng);
        MeshFn u_curr = random_mesh_fn(g, sb.rng);
        const MeshFn banded = three_level_step({1, u_prev, u_curr}, p, tau);
        const MeshFn dense = dense_three_level_step(u_prev, u_curr, p, tau);
        worst = std::max(worst, norm_max(banded - dense) / (norm_max(dense) + 1e-300));
    }
    sb.add("dense_oracle_step_equivalence", worst, 1e-11, trials);
}

void check_ansatz_residuals(SuiteBuilder& sb) {
    const SchemeParams ex1{1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2};
    const SchemeParams ex2{1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 4};
    double worst = 0.0;
    for (const auto& p : {ex1, ex2}) {
        const AnsatzSolution sol = solve_ansatz(p, RootBranch::Minus);
        for (double r : residual_oracle(sol, p)) worst = std::max(worst, r);
    }
    sb.add("ansatz_equation_residuals", worst, 1e-13, 2);
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
    SuiteBuilder sb;
    sb.rng.seed(seed);
    const std::vector<Grid> grids = {build_grid(0.0, 1.0, 8), build_grid(-2.0, 3.0, 17),
                                     build_grid(-1.0, 1.0, 64)};
    check_summation_by_parts(sb, grids, 200);
    check_skew_identities(sb, grids, 200);
    check_norm_identity(sb, grids, 200);
    check_norm_inequality(sb, grids, 200);
    check_nonlinear_skew(sb, grids, 200);
    check_dense_step_equivalence(sb, 8);
    check_ansatz_residuals(sb);
    return sb.results;
}

}  // namespace rkrlw
