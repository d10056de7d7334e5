#pragma once

#include <Eigen/Dense>
#include <vector>

namespace rkrlw {

/// Square matrix in band storage: kl sub-diagonals, ku super-diagonals.
/// Entry (r, c) with |c - r| inside the band lives at band()(r, c - r + kl).
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower_bandwidth() const { return kl_; }
    int upper_bandwidth() const { return ku_; }

    bool in_band(int r, int c) const {
        return r >= 0 && r < n_ && c >= 0 && c < n_ && c - r >= -kl_ && c - r <= ku_;
    }

    /// Reads entry (r, c); zero outside the band.
    double operator()(int r, int c) const;

    /// Mutable access to an in-band entry; throws outside the band.
    double& at(int r, int c);

    double max_abs() const { return band_.cwiseAbs().maxCoeff(); }

    /// Max absolute row sum.
    double inf_norm() const;

    /// Raw band storage, n x (kl + ku + 1). Slots whose column index falls
    /// outside the matrix are padding and are never read by the solver.
    const Eigen::MatrixXd& band() const { return band_; }
    Eigen::MatrixXd& band() { return band_; }

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;

private:
    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    Eigen::MatrixXd band_;
};

/// LU factorization of a BandedMatrix with partial pivoting. Row swaps can
/// fill up to kl extra super-diagonals, so the factor storage is widened to
/// kl + (kl + ku) + 1 columns. A copy of the original band is kept so that
/// solves can run one step of iterative refinement.
class BandedLU {
public:
    int size() const { return n_; }

    friend BandedLU lu_factor(const BandedMatrix& a);
    friend Eigen::VectorXd solve(const BandedLU& f, const Eigen::VectorXd& b);

private:
    BandedLU(int n, int kl, int ku, const BandedMatrix& a)
        : n_(n), kl_(kl), ku_(ku), factors_(Eigen::MatrixXd::Zero(n, 2 * kl + ku + 1)),
          pivots_(static_cast<size_t>(n), 0), original_(a) {}

    double& entry(int r, int c) { return factors_(r, c - r + kl_); }
    double entry(int r, int c) const { return factors_(r, c - r + kl_); }

    Eigen::VectorXd substitute(const Eigen::VectorXd& b) const;

    int n_;
    int kl_;
    int ku_;
    Eigen::MatrixXd factors_;
    std::vector<int> pivots_;
    BandedMatrix original_;
};

/// Factors A = P L U in band storage. Throws SingularSystemError when a
/// pivot falls below 1e-14 * max|A|, which signals a non-unique step.
BandedLU lu_factor(const BandedMatrix& a);

/// Solves A x = b from the factorization. Throws on dimension mismatch.
Eigen::VectorXd solve(const BandedLU& f, const Eigen::VectorXd& b);

}  // namespace rkrlw
