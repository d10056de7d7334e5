#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "rkrlw/banded.hpp"
#include "rkrlw/errors.hpp"
#include "rkrlw/exact_solutions.hpp"
#include "rkrlw/scheme.hpp"

using namespace rkrlw;

namespace {

Eigen::MatrixXd densify(const BandedMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.size(), a.size());
    for (int r = 0; r < a.size(); ++r)
        for (int c = 0; c < a.size(); ++c) d(r, c) = a(r, c);
    return d;
}

// dense Gaussian elimination via Eigen, the reference the banded path is
// checked against
Eigen::VectorXd dense_solve(const BandedMatrix& a, const Eigen::VectorXd& b) {
    return Eigen::FullPivLU<Eigen::MatrixXd>(densify(a)).solve(b);
}

}  // namespace

TEST_CASE("identity solve returns the right-hand side") {
    BandedMatrix a(3, 0, 0);
    for (int i = 0; i < 3; ++i) a.at(i, i) = 1.0;
    const BandedLU f = lu_factor(a);
    Eigen::Vector3d b(3.0, -1.0, 4.0);
    CHECK((solve(f, b) - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tridiagonal (-1, 2, -1) matches the dense reference") {
    const int n = 6;
    BandedMatrix a(n, 1, 1);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = 2.0;
        if (i > 0) a.at(i, i - 1) = -1.0;
        if (i + 1 < n) a.at(i, i + 1) = -1.0;
    }
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd x = solve(lu_factor(a), b);
    const Eigen::VectorXd ref = dense_solve(a, b);
    CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
}

TEST_CASE("zero matrix is singular") {
    BandedMatrix a(5, 2, 2);
    CHECK_THROWS_AS(lu_factor(a), SingularSystemError);
}

TEST_CASE("zero right-hand side gives the zero solution") {
    BandedMatrix a(4, 1, 1);
    for (int i = 0; i < 4; ++i) a.at(i, i) = 3.0 + i;
    a.at(1, 0) = 1.0;
    a.at(2, 3) = -2.0;
    const Eigen::VectorXd x = solve(lu_factor(a), Eigen::VectorXd::Zero(4));
    CHECK(x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
    BandedMatrix a(4, 1, 1);
    for (int i = 0; i < 4; ++i) a.at(i, i) = 1.0;
    const BandedLU f = lu_factor(a);
    CHECK_THROWS_AS(solve(f, Eigen::VectorXd::Zero(5)), std::invalid_argument);
}

TEST_CASE("band accessors") {
    BandedMatrix a(6, 2, 1);
    CHECK_THROWS_AS(a.at(0, 2), std::invalid_argument);  // outside the band
    CHECK(a(0, 2) == 0.0);                               // reads as zero
    CHECK_THROWS_AS(a(0, 7), std::invalid_argument);     // outside the matrix
    CHECK_THROWS_AS(BandedMatrix(4, 4, 1), std::invalid_argument);
    a.at(3, 1) = 5.0;
    CHECK(a(3, 1) == 5.0);
}

TEST_CASE("scheme matrix solves match the dense reference") {
    const Grid g = build_grid(-1.0, 1.0, 12);
    const SchemeParams p{1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 2};
    const AnsatzSolution sol = solve_ansatz(p, RootBranch::Minus);
    const MeshFn u = initial_condition(sol, g);  // small grid; values are just data here
    const BandedMatrix a = assemble_lhs(u, p, 0.05);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd b(a.size());
    for (int i = 0; i < a.size(); ++i) b[i] = dist(rng);

    const Eigen::VectorXd x = solve(lu_factor(a), b);
    const Eigen::VectorXd ref = dense_solve(a, b);
    CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + ref.cwiseAbs().maxCoeff()));
}

TEST_CASE("round trip on random diagonally dominant bands") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 8 + static_cast<int>(rng() % 193);
        BandedMatrix a(n, 3, 3);
        for (int r = 0; r < n; ++r) {
            double off = 0.0;
            for (int c = std::max(0, r - 3); c <= std::min(n - 1, r + 3); ++c) {
                if (c == r) continue;
                a.at(r, c) = dist(rng);
                off += std::abs(a(r, c));
            }
            a.at(r, r) = (off + 1.0) * (rng() % 2 == 0 ? 1.0 : -1.0);
        }
        Eigen::VectorXd x_true(n);
        for (int i = 0; i < n; ++i) x_true[i] = dist(rng);
        const Eigen::VectorXd x = solve(lu_factor(a), a.multiply(x_true));
        CHECK((x - x_true).cwiseAbs().maxCoeff() <=
              1e-10 * (1.0 + x_true.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("residual stays small after factor and solve") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int n = 64;
    BandedMatrix a(n, 3, 3);
    for (int r = 0; r < n; ++r) {
        for (int c = std::max(0, r - 3); c <= std::min(n - 1, r + 3); ++c) a.at(r, c) = dist(rng);
        a.at(r, r) += 8.0;
    }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = dist(rng);
    const Eigen::VectorXd x = solve(lu_factor(a), b);
    CHECK((a.multiply(x) - b).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + b.cwiseAbs().maxCoeff()));
}

TEST_CASE("factor and solve never touch the padding slots") {
    // corner slots of the band storage map to columns outside the matrix;
    // poison them and verify the solver neither reads nor writes them
    const int n = 10;
    BandedMatrix a(n, 3, 3);
    for (int r = 0; r < n; ++r) {
        for (int c = std::max(0, r - 3); c <= std::min(n - 1, r + 3); ++c) {
            a.at(r, c) = (r == c) ? 10.0 + r : 1.0 / (1.0 + r + c);
        }
    }
    const double canary = -777.25;
    auto& raw = a.band();
    int poisoned = 0;
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < raw.cols(); ++s) {
            const int c = r + static_cast<int>(s) - 3;
            if (c < 0 || c >= n) {
                raw(r, s) = canary;
                ++poisoned;
            }
        }
    }
    REQUIRE(poisoned > 0);

    const BandedLU f = lu_factor(a);
    Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
    const Eigen::VectorXd x = solve(f, b);
    const Eigen::VectorXd ref = dense_solve(a, b);
    CHECK((x - ref).cwiseAbs().maxCoeff() <= 1e-11 * ref.cwiseAbs().maxCoeff());

    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < raw.cols(); ++s) {
            const int c = r + static_cast<int>(s) - 3;
            if (c < 0 || c >= n) CHECK(raw(r, s) == canary);
        }
    }
}
