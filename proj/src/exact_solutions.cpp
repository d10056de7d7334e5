#include "rkrlw/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rkrlw/errors.hpp"

namespace rkrlw {

namespace {

double ipow(double x, int m) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= x;
    return p;
}

struct AnsatzAlgebra {
    double eta, q, r, den, disc;
    double s;  // lambda*a + nu
};

AnsatzAlgebra algebra(const SchemeParams& p) {
    validate(p);
    AnsatzAlgebra al;
    al.eta = -4.0 / p.m;
    al.q = al.eta * al.eta - 2.0 * al.eta + 2.0;
    al.r = al.eta * al.eta * (al.eta - 2.0) * (al.eta - 2.0);
    al.s = p.lambda * p.a + p.nu;
    const double lc_na = p.lambda * p.c - p.nu * p.alpha;
    if (std::abs(lc_na) <= 1e-14 * (std::abs(p.lambda * p.c) + std::abs(p.nu * p.alpha))) {
        throw AnsatzError(AnsatzError::Reason::DegenerateDenominator,
                          "degenerate denominator: lambda*c = nu*alpha leaves the wavenumber "
                          "equation without a quadratic term");
    }
    al.den = lc_na * al.r;
    al.disc = al.s * al.s * al.q * al.q + lc_na * (p.alpha * p.a + p.c) * al.r;
    if (al.disc < 0.0) {
        throw AnsatzError(AnsatzError::Reason::ComplexCase,
                          "negative discriminant: the travelling-wave parameters are complex "
                          "(unsupported)");
    }
    return al;
}

}  // namespace

std::array<double, 2> ansatz_bsq_roots(const SchemeParams& p) {
    const AnsatzAlgebra al = algebra(p);
    const double root = std::sqrt(al.disc);
    return {(al.s * al.q + root) / al.den, (al.s * al.q - root) / al.den};
}

RootBranch auto_branch(const SchemeParams& p) {
    const auto roots = ansatz_bsq_roots(p);
    const bool plus_solitary = roots[0] < 0.0;
    const bool minus_solitary = roots[1] < 0.0;
    if (plus_solitary == minus_solitary) {
        throw AnsatzError(AnsatzError::Reason::NoSolitaryRoot,
                          plus_solitary ? "both wavenumber roots are negative; pick a branch "
                                          "explicitly"
                                        : "neither wavenumber root is negative; no solitary "
                                          "branch exists for these coefficients");
    }
    return plus_solitary ? RootBranch::Plus : RootBranch::Minus;
}

AnsatzSolution solve_ansatz(const SchemeParams& p, RootBranch branch) {
    const AnsatzAlgebra al = algebra(p);
    AnsatzSolution sol;
    sol.eta = al.eta;
    sol.bsq_roots = ansatz_bsq_roots(p);
    sol.branch = branch;
    sol.bsq = branch == RootBranch::Plus ? sol.bsq_roots[0] : sol.bsq_roots[1];
    sol.kind = sol.bsq > 0.0 ? WaveKind::Periodic : WaveKind::Solitary;
    sol.b0 = sol.kind == WaveKind::Solitary ? std::sqrt(-sol.bsq) : 0.0;

    const double vden = 2.0 * p.lambda * sol.bsq * al.q + p.alpha;
    if (std::abs(vden) <= 1e-14 * (std::abs(2.0 * p.lambda * sol.bsq * al.q) + p.alpha)) {
        throw AnsatzError(AnsatzError::Reason::VelocityPole,
                          "velocity pole: 2*lambda*B^2*(eta^2-2*eta+2) + alpha vanishes");
    }
    sol.v = -(2.0 * p.nu * sol.bsq * al.q + p.c) / vden;

    if (p.b == 0.0) {
        throw AnsatzError(AnsatzError::Reason::AmplitudeUndefined,
                          "amplitude undefined: b = 0 removes the nonlinear balance");
    }
    const double poly = al.eta * (al.eta - 1.0) * (al.eta - 2.0) * (al.eta - 3.0);
    const double bracket =
        (p.m + 1.0) / p.b * sol.bsq * sol.bsq * poly * (p.lambda * sol.v + p.nu);
    if (bracket == 0.0) {
        sol.amplitude = 0.0;
    } else if (p.m % 2 == 0) {
        if (bracket < 0.0) {
            throw AnsatzError(AnsatzError::Reason::AmplitudeUndefined,
                              "amplitude undefined: even m needs a positive amplitude bracket, "
                              "got " + std::to_string(bracket));
        }
        sol.amplitude = std::pow(bracket, 1.0 / p.m);
    } else {
        sol.amplitude = std::copysign(std::pow(std::abs(bracket), 1.0 / p.m), bracket);
    }
    return sol;
}

double eval_solitary(const AnsatzSolution& s, double x, double t) {
    if (s.kind != WaveKind::Solitary) {
        throw AnsatzError(AnsatzError::Reason::WrongKind,
                          "eval_solitary: not a solitary-branch solution");
    }
    const double xi = x - s.v * t;
    const double sech = 1.0 / std::cosh(s.b0 * xi);
    return s.amplitude * std::pow(sech, -s.eta);
}

std::array<double, 3> residual_oracle(const AnsatzSolution& s, const SchemeParams& p) {
    const double eta = s.eta;
    const double bsq = s.bsq;
    const double b4 = bsq * bsq;
    const double v = s.v;
    const double amp = s.amplitude;
    const double lvnu = p.lambda * v + p.nu;
    const double vac = v * p.alpha + p.c;
    const double poly = eta * (eta - 1.0) * (eta - 2.0) * (eta - 3.0);

    auto normalized = [](std::initializer_list<double> terms) {
        double sum = 0.0, biggest = 0.0;
        for (double t : terms) {
            sum += t;
            biggest = std::max(biggest, std::abs(t));
        }
        return biggest == 0.0 ? 0.0 : std::abs(sum) / biggest;
    };

    const double r2 = normalized({p.b * ipow(amp, p.m + 1) / (p.m + 1.0), -amp * b4 * poly * lvnu});
    const double r3 = normalized({amp * bsq * vac * eta * (eta - 1.0),
                                  2.0 * amp * b4 * eta * (eta - 1.0) * (eta * eta - 2.0 * eta + 2.0) * lvnu});
    const double r4 = normalized(
        {(p.a - v) * amp, -amp * bsq * vac * eta * eta, -amp * b4 * eta * eta * eta * eta * lvnu});
    return {r2, r3, r4};
}

MeshFn initial_condition(const AnsatzSolution& s, const Grid& g) {
    if (s.kind != WaveKind::Solitary) {
        throw AnsatzError(AnsatzError::Reason::WrongKind,
                          "initial_condition: not a solitary-branch solution");
    }
    MeshFn u = sample(g, [&](double x) { return eval_solitary(s, x, 0.0); });
    u.zero_boundary();
    return u;
}

double boundary_sample_magnitude(const AnsatzSolution& s, const Grid& g) {
    return std::max(std::abs(eval_solitary(s, g.x_left, 0.0)),
                    std::abs(eval_solitary(s, g.x_right, 0.0)));
}

}  // namespace rkrlw
