#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rkrlw/diagnostics.hpp"
#include "rkrlw/exact_solutions.hpp"
#include "rkrlw/scheme.hpp"

namespace rkrlw {

/// One experiment, parsed from a flat `key = value` config file.
/// Keys: x_left, x_right, M | h, tau | N, T, a, b, c, alpha, lambda, nu, m,
/// initial, branch, snapshot_stride, out_dir, bootstrap_tol,
/// bootstrap_max_iter. `#` starts a comment.
struct RunConfig {
    double x_left = 0.0;
    double x_right = 0.0;
    std::optional<int> M;
    std::optional<double> h;
    std::optional<double> tau;
    std::optional<long> N;
    double T = 0.0;
    SchemeParams params;
    std::string initial = "ansatz";         // "ansatz" or a solution CSV path
    std::optional<RootBranch> branch;       // absent = auto-select
    long snapshot_stride = 0;               // <= 0: initial and final only
    std::filesystem::path out_dir = "out";
    double bootstrap_tol = 1e-12;
    int bootstrap_max_iter = 50;

    Grid make_grid() const;
    /// Resolves tau/N against T. A non-integral T/tau is rounded to the
    /// nearest whole step count, so the effective final time is N*tau.
    TimeGrid make_time_grid() const;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Loads a solution_*.csv (columns x,u) back onto `g` as an initial state;
/// node positions must match the grid.
MeshFn load_solution_csv(const std::filesystem::path& path, const Grid& g);

struct SimulateSummary {
    std::filesystem::path out_dir;
    double e0 = 0.0;
    double drift = 0.0;
    BootstrapReport bootstrap;
    long steps = 0;
    std::optional<ErrorReport> final_error;  // present when the exact wave is known
    std::vector<std::filesystem::path> solution_files;
};

/// `simulate`: runs the configured experiment and writes solution_<t>.csv,
/// energy.csv and summary.txt into out_dir.
SimulateSummary run_simulate(const RunConfig& cfg, std::ostream* log = nullptr);

enum class RefinementAxis { Spatial, Temporal };

struct ConvergenceRow {
    double param = 0.0;  // h or tau
    double l2_error = 0.0;
    double max_error = 0.0;
    double l2_rate = 0.0;   // NaN on the first row
    double max_rate = 0.0;  // NaN on the first row
};

struct ConvergenceTable {
    RefinementAxis axis = RefinementAxis::Spatial;
    std::vector<ConvergenceRow> rows;
};

/// rate_k = log2(e_{k-1} / e_k) for a halved-parameter ladder; the first
/// entry has no rate and is returned as NaN.
std::vector<double> refinement_rates(const std::vector<double>& errors);

/// `converge`: one run per level (h values for the spatial axis, tau for
/// the temporal one), errors against the exact solitary wave at the final
/// time, rates between consecutive levels. Also writes
/// convergence_<axis>.csv into out_dir.
ConvergenceTable run_convergence(const RunConfig& cfg, RefinementAxis axis,
                                 const std::vector<double>& levels, std::ostream* log = nullptr);

struct ExactInfo {
    AnsatzSolution sol;
    std::array<double, 3> residuals{};
};

ExactInfo exact_info(const SchemeParams& p, std::optional<RootBranch> branch);

void print_exact_info(std::ostream& os, const ExactInfo& info);
void print_convergence(std::ostream& os, const ConvergenceTable& table);

}  // namespace rkrlw
