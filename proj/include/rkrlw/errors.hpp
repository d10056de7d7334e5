#pragma once

#include <stdexcept>
#include <string>

namespace rkrlw {

/// Numerical failure inside a solver (singular system, stalled iteration,
/// unusable travelling-wave parameters).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularSystemError : public SolverError {
public:
    SingularSystemError(int row, double pivot, double threshold)
        : SolverError("singular system: pivot " + std::to_string(pivot) +
                      " at row " + std::to_string(row) + " is below threshold " +
                      std::to_string(threshold)),
          row_(row) {}
    int row() const noexcept { return row_; }

private:
    int row_ = 0;
};

class NoConvergenceError : public SolverError {
public:
    NoConvergenceError(int iterations, double residual)
        : SolverError("fixed-point iteration did not converge after " +
                      std::to_string(iterations) + " iterations (last update " +
                      std::to_string(residual) + "); the time step is likely too large"),
          iterations_(iterations),
          residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_ = 0;
    double residual_ = 0.0;
};

class AnsatzError : public SolverError {
public:
    enum class Reason {
        DegenerateDenominator,
        ComplexCase,
        AmplitudeUndefined,
        VelocityPole,
        WrongKind,
        NoSolitaryRoot,
    };

    AnsatzError(Reason reason, const std::string& what)
        : SolverError(what), reason_(reason) {}
    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// Bad key/value in a run-configuration file or on the command line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rkrlw
