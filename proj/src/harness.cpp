#include "rkrlw/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "rkrlw/csv.hpp"
#include "rkrlw/errors.hpp"

namespace rkrlw {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    double v = 0.0;
    const char* begin = value.data();
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    }
    return v;
}

long parse_integer(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    const long n = std::lround(v);
    if (std::abs(v - static_cast<double>(n)) > 0.0) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    }
    return n;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        if (kv.count(key)) throw ConfigError("config key '" + key + "' given twice");
        kv[key] = value;
    }

    static const char* known[] = {"x_left", "x_right", "M", "h", "tau", "N", "T",
                                  "a", "b", "c", "alpha", "lambda", "nu", "m",
                                  "initial", "branch", "snapshot_stride", "out_dir",
                                  "bootstrap_tol", "bootstrap_max_iter"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(std::string("missing required key '") + key + "'");
        return it->second;
    };
    auto number = [&](const char* key) { return parse_number(key, require(key)); };

    RunConfig cfg;
    cfg.x_left = number("x_left");
    cfg.x_right = number("x_right");
    cfg.T = number("T");
    cfg.params.a = number("a");
    cfg.params.b = number("b");
    cfg.params.c = number("c");
    cfg.params.alpha = number("alpha");
    cfg.params.lambda = number("lambda");
    cfg.params.nu = number("nu");
    cfg.params.m = static_cast<int>(parse_integer("m", require("m")));

    if (kv.count("M") && kv.count("h")) throw ConfigError("give exactly one of 'M' and 'h'");
    if (kv.count("M")) cfg.M = static_cast<int>(parse_integer("M", kv["M"]));
    else if (kv.count("h")) cfg.h = parse_number("h", kv["h"]);
    else throw ConfigError("missing required key 'M' or 'h'");

    if (kv.count("tau") && kv.count("N")) throw ConfigError("give exactly one of 'tau' and 'N'");
    if (kv.count("tau")) cfg.tau = parse_number("tau", kv["tau"]);
    else if (kv.count("N")) cfg.N = parse_integer("N", kv["N"]);
    else throw ConfigError("missing required key 'tau' or 'N'");

    if (!(cfg.T > 0.0)) throw ConfigError("config key 'T': final time must be positive");

    if (kv.count("initial")) cfg.initial = kv["initial"];
    if (kv.count("branch")) {
        const std::string& b = kv["branch"];
        if (b == "plus") cfg.branch = RootBranch::Plus;
        else if (b == "minus") cfg.branch = RootBranch::Minus;
        else if (b == "auto") cfg.branch.reset();
        else throw ConfigError("config key 'branch': expected plus, minus or auto");
    }
    if (kv.count("snapshot_stride"))
        cfg.snapshot_stride = parse_integer("snapshot_stride", kv["snapshot_stride"]);
    if (kv.count("out_dir")) cfg.out_dir = kv["out_dir"];
    if (kv.count("bootstrap_tol")) cfg.bootstrap_tol = parse_number("bootstrap_tol", kv["bootstrap_tol"]);
    if (kv.count("bootstrap_max_iter"))
        cfg.bootstrap_max_iter =
            static_cast<int>(parse_integer("bootstrap_max_iter", kv["bootstrap_max_iter"]));
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

Grid RunConfig::make_grid() const {
    if (M) return build_grid(x_left, x_right, *M);
    const double length = x_right - x_left;
    if (!(*h > 0.0)) throw ConfigError("config key 'h': spacing must be positive");
    const long cells = std::lround(length / *h);
    if (cells < 1 || std::abs(static_cast<double>(cells) * *h - length) > 1e-9 * std::abs(length)) {
        throw ConfigError("config key 'h': spacing does not divide the domain evenly");
    }
    return build_grid(x_left, x_right, static_cast<int>(cells));
}

TimeGrid RunConfig::make_time_grid() const {
    double step = 0.0;
    long steps = 0;
    if (N) {
        steps = *N;
        if (steps < 1) throw ConfigError("config key 'N': need at least one step");
        step = T / static_cast<double>(steps);
    } else {
        step = *tau;
        if (!(step > 0.0)) throw ConfigError("config key 'tau': time step must be positive");
        steps = std::llround(T / step);  // nearest whole step count, ties away from zero
        if (steps < 1) throw ConfigError("config key 'tau': time step exceeds the final time");
    }
    TimeGrid tg{step, steps, static_cast<double>(steps) * step};
    validate(tg);
    return tg;
}

MeshFn load_solution_csv(const std::filesystem::path& path, const Grid& g) {
    const auto rows = read_csv(path);
    if (rows.size() != static_cast<size_t>(g.M + 1)) {
        throw ConfigError("'" + path.string() + "': expected " + std::to_string(g.M + 1) +
                          " rows of x,u for this grid, got " + std::to_string(rows.size()));
    }
    MeshFn u(g);
    for (int i = 0; i <= g.M; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (row.size() != 2) throw ConfigError("'" + path.string() + "': expected columns x,u");
        if (std::abs(row[0] - g.node(i)) > 1e-9 * (1.0 + std::abs(g.node(i)))) {
            throw ConfigError("'" + path.string() + "': node positions do not match the grid");
        }
        u(i) = row[1];
    }
    u.zero_boundary();
    return u;
}

namespace {

std::string time_label(double t) {
    std::ostringstream os;
    os << std::setprecision(6) << t;
    return os.str();
}

struct InitialState {
    MeshFn u0;
    std::optional<AnsatzSolution> wave;
};

InitialState make_initial(const RunConfig& cfg, const Grid& g, std::ostream* log) {
    if (cfg.initial == "ansatz") {
        const RootBranch branch = cfg.branch ? *cfg.branch : auto_branch(cfg.params);
        const AnsatzSolution sol = solve_ansatz(cfg.params, branch);
        if (sol.kind != WaveKind::Solitary) {
            throw AnsatzError(AnsatzError::Reason::WrongKind,
                              "the chosen branch is not solitary; initial sampling needs a "
                              "decaying wave");
        }
        const double edge = boundary_sample_magnitude(sol, g);
        if (edge > 1e-8 && log) {
            *log << "warning: initial wave magnitude " << format_double(edge)
                 << " at the domain edge exceeds 1e-8; the domain may be too small\n";
        }
        return {initial_condition(sol, g), sol};
    }
    return {load_solution_csv(cfg.initial, g), std::nullopt};
}

void write_solution_csv(const std::filesystem::path& path, const MeshFn& u) {
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(u.grid().M + 1));
    for (int i = 0; i <= u.grid().M; ++i) rows.push_back({u.grid().node(i), u(i)});
    write_csv(path, "x,u", rows);
}

}  // namespace

SimulateSummary run_simulate(const RunConfig& cfg, std::ostream* log) {
    const Grid g = cfg.make_grid();
    const TimeGrid tg = cfg.make_time_grid();
    validate(cfg.params);
    const InitialState init = make_initial(cfg, g, log);

    const SimOutput out = run(init.u0, cfg.params, tg, cfg.snapshot_stride, cfg.bootstrap_tol,
                              cfg.bootstrap_max_iter);

    std::filesystem::create_directories(cfg.out_dir);
    SimulateSummary summary;
    summary.out_dir = cfg.out_dir;
    summary.steps = tg.N;
    summary.bootstrap = out.bootstrap;
    summary.e0 = out.energy.front().energy;
    summary.drift = drift(out.energy);

    for (const auto& [t, u] : out.snapshots) {
        const auto path = cfg.out_dir / ("solution_" + time_label(t) + ".csv");
        write_solution_csv(path, u);
        summary.solution_files.push_back(path);
    }

    std::vector<std::vector<double>> energy_rows;
    energy_rows.reserve(out.energy.size());
    for (const auto& rec : out.energy) energy_rows.push_back({rec.time, rec.energy});
    write_csv(cfg.out_dir / "energy.csv", "t,E", energy_rows);

    if (init.wave) {
        const AnsatzSolution& sol = *init.wave;
        summary.final_error = error_report(
            out.snapshots.back().second,
            [&](double x, double t) { return eval_solitary(sol, x, t); }, tg.T);
    }

    std::ofstream sum(cfg.out_dir / "summary.txt");
    sum << "grid: M = " << g.M << ", h = " << format_double(g.h) << "\n"
        << "time: N = " << tg.N << ", tau = " << format_double(tg.tau)
        << ", T = " << format_double(tg.T) << "\n"
        << "bootstrap: " << out.bootstrap.iterations
        << " iterations, last update " << format_double(out.bootstrap.residual) << "\n"
        << "E0 = " << format_double(summary.e0) << "\n"
        << "max relative energy drift = " << format_double(summary.drift) << "\n";
    if (summary.final_error) {
        sum << "error vs exact at T: l2 = " << format_double(summary.final_error->l2_error)
            << ", max = " << format_double(summary.final_error->max_error) << "\n";
    }
    return summary;
}

std::vector<double> refinement_rates(const std::vector<double>& errors) {
    std::vector<double> rates(errors.size(), std::numeric_limits<double>::quiet_NaN());
    for (size_t k = 1; k < errors.size(); ++k) {
        rates[k] = std::log2(errors[k - 1] / errors[k]);
    }
    return rates;
}

ConvergenceTable run_convergence(const RunConfig& cfg, RefinementAxis axis,
                                 const std::vector<double>& levels, std::ostream* log) {
    if (levels.empty()) throw ConfigError("converge: need at least one level");
    if (cfg.initial != "ansatz") {
        throw ConfigError("converge: errors are measured against the exact solitary wave, so "
                          "'initial' must be 'ansatz'");
    }
    validate(cfg.params);
    const RootBranch branch = cfg.branch ? *cfg.branch : auto_branch(cfg.params);
    const AnsatzSolution sol = solve_ansatz(cfg.params, branch);
    auto exact = [&](double x, double t) { return eval_solitary(sol, x, t); };

    ConvergenceTable table;
    table.axis = axis;
    std::vector<double> l2_errors, max_errors;
    for (const double level : levels) {
        RunConfig local = cfg;
        local.snapshot_stride = 0;
        if (axis == RefinementAxis::Spatial) {
            local.M.reset();
            local.h = level;
        } else {
            local.N.reset();
            local.tau = level;
        }
        const Grid g = local.make_grid();
        const TimeGrid tg = local.make_time_grid();
        const MeshFn u0 = initial_condition(sol, g);
        const SimOutput out = run(u0, cfg.params, tg, 0, cfg.bootstrap_tol, cfg.bootstrap_max_iter);
        const ErrorReport err = error_report(out.snapshots.back().second, exact, tg.T);
        if (log) {
            *log << (axis == RefinementAxis::Spatial ? "h" : "tau") << " = "
                 << format_double(level) << ": l2 = " << format_double(err.l2_error)
                 << ", max = " << format_double(err.max_error) << " (T = " << format_double(tg.T)
                 << ")\n";
        }
        l2_errors.push_back(err.l2_error);
        max_errors.push_back(err.max_error);
    }

    const std::vector<double> l2_rates = refinement_rates(l2_errors);
    const std::vector<double> max_rates = refinement_rates(max_errors);
    std::vector<std::vector<double>> csv_rows;
    for (size_t k = 0; k < levels.size(); ++k) {
        table.rows.push_back({levels[k], l2_errors[k], max_errors[k], l2_rates[k], max_rates[k]});
        csv_rows.push_back({levels[k], l2_errors[k], max_errors[k], l2_rates[k], max_rates[k]});
    }
    std::filesystem::create_directories(cfg.out_dir);
    const char* name = axis == RefinementAxis::Spatial ? "convergence_spatial.csv"
                                                       : "convergence_temporal.csv";
    write_csv(cfg.out_dir / name, "param,l2_err,max_err,l2_rate,max_rate", csv_rows);
    return table;
}

ExactInfo exact_info(const SchemeParams& p, std::optional<RootBranch> branch) {
    validate(p);
    const RootBranch chosen = branch ? *branch : auto_branch(p);
    ExactInfo info;
    info.sol = solve_ansatz(p, chosen);
    info.residuals = residual_oracle(info.sol, p);
    return info;
}

void print_exact_info(std::ostream& os, const ExactInfo& info) {
    const AnsatzSolution& s = info.sol;
    os << "branch:      " << (s.branch == RootBranch::Plus ? "plus" : "minus") << "\n"
       << "eta:         " << format_double(s.eta) << "\n"
       << "B^2 (plus):  " << format_double(s.bsq_roots[0]) << "\n"
       << "B^2 (minus): " << format_double(s.bsq_roots[1]) << "\n"
       << "kind:        " << (s.kind == WaveKind::Solitary ? "solitary" : "periodic") << "\n";
    if (s.kind == WaveKind::Solitary) os << "B0:          " << format_double(s.b0) << "\n";
    os << "v:           " << format_double(s.v) << "\n"
       << "amplitude:   " << format_double(s.amplitude) << "\n"
       << "residuals:   " << format_double(info.residuals[0]) << ", "
       << format_double(info.residuals[1]) << ", " << format_double(info.residuals[2]) << "\n";
}

void print_convergence(std::ostream& os, const ConvergenceTable& table) {
    char line[128];
    std::snprintf(line, sizeof line, "%-10s %-13s %-8s %-13s %-8s\n",
                  table.axis == RefinementAxis::Spatial ? "h" : "tau", "l2_err", "rate",
                  "max_err", "rate");
    os << line;
    for (const auto& row : table.rows) {
        if (std::isnan(row.l2_rate)) {
            std::snprintf(line, sizeof line, "%-10.4g %-13.6e %-8s %-13.6e %-8s\n", row.param,
                          row.l2_error, "-", row.max_error, "-");
        } else {
            std::snprintf(line, sizeof line, "%-10.4g %-13.6e %-8.3f %-13.6e %-8.3f\n", row.param,
                          row.l2_error, row.l2_rate, row.max_error, row.max_rate);
        }
        os << line;
    }
}

}  // namespace rkrlw
