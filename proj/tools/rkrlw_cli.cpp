// Command-line harness: simulate | converge | exact-info | property-check.
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure,
// 3 property-suite failure.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>

#include "rkrlw/csv.hpp"
#include "rkrlw/errors.hpp"
#include "rkrlw/harness.hpp"
#include "rkrlw/property_suite.hpp"

namespace {

int do_simulate(const std::string& config_path) {
    const rkrlw::RunConfig cfg = rkrlw::parse_config_file(config_path);
    const rkrlw::SimulateSummary s = rkrlw::run_simulate(cfg, &std::cerr);
    std::cout << "wrote " << s.solution_files.size() << " solution files, energy.csv and "
              << "summary.txt to " << s.out_dir.string() << "\n"
              << "E0 = " << rkrlw::format_double(s.e0)
              << ", max relative energy drift = " << rkrlw::format_double(s.drift) << "\n";
    if (s.final_error) {
        std::cout << "error vs exact at T: l2 = " << rkrlw::format_double(s.final_error->l2_error)
                  << ", max = " << rkrlw::format_double(s.final_error->max_error) << "\n";
    }
    return 0;
}

int do_converge(const std::string& config_path, const std::string& axis,
                const std::vector<double>& levels) {
    const rkrlw::RunConfig cfg = rkrlw::parse_config_file(config_path);
    const auto ax = axis == "spatial" ? rkrlw::RefinementAxis::Spatial
                                      : rkrlw::RefinementAxis::Temporal;
    const rkrlw::ConvergenceTable table = rkrlw::run_convergence(cfg, ax, levels, &std::cerr);
    rkrlw::print_convergence(std::cout, table);
    return 0;
}

int do_exact_info(const std::string& config_path, const std::string& branch) {
    const rkrlw::RunConfig cfg = rkrlw::parse_config_file(config_path);
    std::optional<rkrlw::RootBranch> chosen = cfg.branch;
    if (branch == "plus") chosen = rkrlw::RootBranch::Plus;
    if (branch == "minus") chosen = rkrlw::RootBranch::Minus;
    rkrlw::print_exact_info(std::cout, rkrlw::exact_info(cfg.params, chosen));
    return 0;
}

int do_property_check(std::uint64_t seed) {
    const auto results = rkrlw::run_property_suite(seed);
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": worst residual "
                  << rkrlw::format_double(r.worst) << " (tolerance "
                  << rkrlw::format_double(r.tolerance) << ", " << r.trials << " trials)\n";
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conservative finite-difference solver for the generalized "
                 "Rosenau-Kawahara-RLW equation"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "run one experiment from a config file");
    simulate->add_option("config", config_path, "config file")->required();

    std::string axis;
    std::vector<double> levels;
    auto* converge = app.add_subcommand("converge", "mesh-refinement study against the exact wave");
    converge->add_option("config", config_path, "config file")->required();
    converge->add_option("--axis", axis, "spatial | temporal")
        ->required()
        ->check(CLI::IsMember({"spatial", "temporal"}));
    converge->add_option("--levels", levels, "comma-separated h or tau ladder")
        ->required()
        ->delimiter(',');

    std::string branch = "config";
    auto* exact = app.add_subcommand("exact-info", "travelling-wave parameters and residuals");
    exact->add_option("config", config_path, "config file")->required();
    exact->add_option("--branch", branch, "plus | minus")
        ->check(CLI::IsMember({"plus", "minus"}));

    std::uint64_t seed = 20240901ULL;
    auto* props = app.add_subcommand("property-check", "randomized invariant suites");
    props->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return do_simulate(config_path);
        if (converge->parsed()) return do_converge(config_path, axis, levels);
        if (exact->parsed()) return do_exact_info(config_path, branch);
        return do_property_check(seed);
    } catch (const rkrlw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const rkrlw::SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
