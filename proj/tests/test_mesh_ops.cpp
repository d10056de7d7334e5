#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rkrlw/mesh_fn.hpp"
#include "rkrlw/property_suite.hpp"

using namespace rkrlw;

namespace {

// C^7 bump with compact support [-1, 1]: (1 - x^2)^8, handled as a plain
// polynomial so its derivatives are exact.
struct Poly {
    std::vector<double> c;  // c[k] * x^k

    double operator()(double x) const {
        double acc = 0.0;
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
    Poly derivative() const {
        Poly d;
        for (size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * static_cast<double>(k));
        return d;
    }
};

Poly bump_poly() {
    // (1 - x^2)^8 = sum_k C(8,k) (-1)^k x^{2k}
    Poly p;
    p.c.assign(17, 0.0);
    double binom = 1.0;
    for (int k = 0; k <= 8; ++k) {
        p.c[static_cast<size_t>(2 * k)] = (k % 2 == 0 ? binom : -binom);
        binom = binom * (8 - k) / (k + 1);
    }
    return p;
}

double bump_value(const Poly& p, double x) { return std::abs(x) < 1.0 ? p(x) : 0.0; }

// Max interior error of `op` against the exact derivative, measured where the
// stencil is consistent: forward/backward are second order at the half-index
// midpoints, the centered composites at the nodes themselves.
double diff_error(DiffOp op, int M) {
    const Grid g = build_grid(-2.0, 2.0, M);
    const Poly p = bump_poly();
    MeshFn u = sample(g, [&](double x) { return bump_value(p, x); });
    u.zero_boundary();  // support is well inside, entries there are already 0

    int order = 0;
    double shift = 0.0;
    switch (op) {
        case DiffOp::Forward: order = 1; shift = 0.5; break;
        case DiffOp::Backward: order = 1; shift = -0.5; break;
        case DiffOp::Central: order = 1; break;
        case DiffOp::Second: order = 2; break;
        case DiffOp::Third: order = 3; break;
        case DiffOp::Fourth: order = 4; break;
        case DiffOp::Fifth: order = 5; break;
    }
    Poly target = p;
    for (int k = 0; k < order; ++k) target = target.derivative();

    const MeshFn du = apply_diff(op, u);
    double worst = 0.0;
    for (int i = 4; i <= g.M - 4; ++i) {
        const double x = g.node(i) + shift * g.h;
        if (std::abs(x) >= 1.0) continue;
        worst = std::max(worst, std::abs(du(i) - target(x)));
    }
    return worst;
}

}  // namespace

TEST_CASE("build_grid basic spacing and nodes") {
    const Grid g = build_grid(-40.0, 200.0, 240);
    CHECK(g.h == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.node(0) == doctest::Approx(-40.0));
    CHECK(g.node(240) == doctest::Approx(200.0));
    CHECK(g.node(-1) == doctest::Approx(-41.0));
    CHECK(g.node_count() == 243);

    const Grid fine = build_grid(-40.0, 240.0, 2800);
    CHECK(fine.h == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("build_grid rejects bad domains") {
    CHECK_THROWS_AS(build_grid(0.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2.0, 1.0, 16), std::invalid_argument);
}

TEST_CASE("grid nodes are affine in the index") {
    const Grid g = build_grid(-1.0, 1.0, 3000000);
    // x_i = x_left + i*h exactly; cumulative addition would drift by ~1e-10
    CHECK(g.node(3000000) == g.x_left + 3000000 * g.h);
}

TEST_CASE("impulse stencils") {
    const int j = 11;

    SUBCASE("central, h = 0.5") {
        const Grid g = build_grid(0.0, 12.0, 24);
        MeshFn u(g);
        u(j) = 1.0;
        const MeshFn du = apply_diff(DiffOp::Central, u);
        for (int i = -1; i <= g.M + 1; ++i) {
            if (i == j - 1) CHECK(du(i) == doctest::Approx(1.0));
            else if (i == j + 1) CHECK(du(i) == doctest::Approx(-1.0));
            else CHECK(du(i) == 0.0);
        }
    }
    SUBCASE("fourth, h = 1") {
        const Grid g = build_grid(0.0, 24.0, 24);
        MeshFn u(g);
        u(j) = 1.0;
        const MeshFn du = apply_diff(DiffOp::Fourth, u);
        const double expected[] = {1.0, -4.0, 6.0, -4.0, 1.0};
        for (int d = -2; d <= 2; ++d) CHECK(du(j + d) == expected[d + 2]);
        CHECK(du(j + 3) == 0.0);
        CHECK(du(j - 3) == 0.0);
    }
}

TEST_CASE("stencil consistency orders are at least two") {
    for (DiffOp op : {DiffOp::Forward, DiffOp::Backward, DiffOp::Central, DiffOp::Second,
                      DiffOp::Third, DiffOp::Fourth, DiffOp::Fifth}) {
        CAPTURE(static_cast<int>(op));
        const double coarse = diff_error(op, 400);
        const double fine = diff_error(op, 800);
        const double order = std::log2(coarse / fine);
        CHECK(order >= 1.9);
    }
}

TEST_CASE("inner product examples") {
    const Grid g = build_grid(0.0, 4.0, 16);
    MeshFn u(g), v(g);
    u(7) = 1.0;
    v(7) = 1.0;
    CHECK(inner_product(u, v) == doctest::Approx(0.25).epsilon(1e-15));

    MeshFn zero(g);
    std::mt19937_64 rng(7);
    const MeshFn w = random_mesh_fn(g, rng);
    CHECK(inner_product(w, zero) == 0.0);

    const Grid other = build_grid(0.0, 4.0, 20);
    CHECK_THROWS_AS(inner_product(u, MeshFn(other)), std::invalid_argument);
}

TEST_CASE("central difference is skew against the function itself") {
    std::mt19937_64 rng(11);
    const Grid g = build_grid(-3.0, 5.0, 40);
    for (int t = 0; t < 50; ++t) {
        const MeshFn u = random_mesh_fn(g, rng);
        const double n2 = norm_l2(u);
        CHECK(std::abs(inner_product(apply_diff(DiffOp::Central, u), u)) <= 1e-13 * n2 * n2);
    }
}

TEST_CASE("norms") {
    const Grid g = build_grid(0.0, 4.0, 100);
    MeshFn u(g);
    u(31) = 1.0;
    CHECK(norm_l2(u) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(norm_max(u) == 1.0);
    CHECK(norm_l2(MeshFn(g)) == 0.0);
    CHECK(norm_max(MeshFn(g)) == 0.0);
}

TEST_CASE("central norm never exceeds forward norm") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        const Grid g = build_grid(-1.0, 2.0, 8 + t % 60);
        const MeshFn u = random_mesh_fn(g, rng);
        CHECK(norm_l2(apply_diff(DiffOp::Central, u)) <=
              norm_l2(apply_diff(DiffOp::Forward, u)) * (1.0 + 1e-15));
    }
}

TEST_CASE("summation by parts identities") {
    std::mt19937_64 rng(17);
    const std::vector<Grid> grids = {build_grid(0.0, 1.0, 8), build_grid(-2.0, 2.0, 33),
                                     build_grid(0.0, 10.0, 100)};
    for (int t = 0; t < 200; ++t) {
        const Grid& g = grids[static_cast<size_t>(t) % grids.size()];
        const MeshFn u = random_mesh_fn(g, rng);
        const MeshFn v = random_mesh_fn(g, rng);

        const MeshFn ux = apply_diff(DiffOp::Forward, u);
        const MeshFn vx = apply_diff(DiffOp::Forward, v);
        const MeshFn uxh = apply_diff(DiffOp::Central, u);
        const MeshFn vxh = apply_diff(DiffOp::Central, v);
        const MeshFn vxb = apply_diff(DiffOp::Backward, v);
        const MeshFn uxx = apply_diff(DiffOp::Second, u);
        const MeshFn ufour = apply_diff(DiffOp::Fourth, u);

        const double scale = (1.0 + norm_l2(u)) * (1.0 + norm_l2(v)) / (g.h * g.h);
        CHECK(std::abs(inner_product(uxh, v) + inner_product(u, vxh)) <= 1e-12 * scale);
        CHECK(std::abs(inner_product(ux, v) + inner_product(u, vxb)) <= 1e-12 * scale);
        CHECK(std::abs(inner_product(uxx, v) + inner_product(ux, vx)) <= 1e-12 * scale);

        const double second_norm_sq = norm_l2(uxx) * norm_l2(uxx);
        CHECK(inner_product(u, ufour) ==
              doctest::Approx(second_norm_sq).epsilon(1e-12).scale(second_norm_sq));
    }
}

TEST_CASE("skew identities for the odd composite operators") {
    std::mt19937_64 rng(19);
    const Grid g = build_grid(-1.0, 1.0, 48);
    for (int t = 0; t < 200; ++t) {
        const MeshFn u = random_mesh_fn(g, rng);
        for (DiffOp op : {DiffOp::Central, DiffOp::Third, DiffOp::Fifth}) {
            const MeshFn du = apply_diff(op, u);
            CHECK(std::abs(inner_product(du, u)) <= 1e-12 * norm_l2(u) * norm_l2(du) + 1e-300);
        }
    }
}

TEST_CASE("norm identity: forward-twice equals second difference") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const Grid g = build_grid(-2.0, 1.0, 8 + t % 40);
        const MeshFn u = random_mesh_fn(g, rng);
        const MeshFn uxx = apply_diff(DiffOp::Forward, apply_diff(DiffOp::Forward, u));
        const double a = norm_l2(uxx);
        const double b = norm_l2(apply_diff(DiffOp::Second, u));
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
}

TEST_CASE("a miscoded antisymmetric stencil trips the skew check") {
    // hand-rolled third difference with one sign flipped
    auto broken_third = [](const MeshFn& u) {
        const Grid& g = u.grid();
        const double s = 1.0 / (2.0 * g.h * g.h * g.h);
        MeshFn out(g);
        for (int i = 1; i <= g.M - 1; ++i) {
            out(i) = (u(i + 2) - 2.0 * u(i + 1) + 2.0 * u(i - 1) + u(i - 2)) * s;
        }
        return out;
    };
    std::mt19937_64 rng(29);
    const Grid g = build_grid(-1.0, 1.0, 32);
    CHECK(worst_skew_residual(g, rng, 20, broken_third) > 1e-6);
    CHECK(worst_skew_residual(g, rng, 20, [](const MeshFn& u) {
              return apply_diff(DiffOp::Third, u);
          }) <= 1e-12);
}
