// commands.hpp — The rcpt subcommands behind the CLI parser.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rcpt/errors.hpp"
#include "rcpt/model.hpp"
#include "rcpt/redfield.hpp"

namespace rcpt::app {

// Process exit codes.
enum ExitCode : int { kOk = 0, kValidationFailed = 1, kParameterError = 2, kNumericalFailure = 3 };

// Raised when an RC figure exceeds its wall-clock budget; outputs written so far stay on disk.
class BudgetExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Values given on the command line; unset fields fall back to the params
// file, then to the preset or library defaults.
struct ParamOverrides {
    std::optional<std::string> params_file;
    std::optional<double> lambda, delta, temperature, omega, gamma, cutoff;
    bool no_cutoff{false};

    model::ModelParams resolve(model::ModelParams base) const;
};

struct Range {
    double from{0.0};
    double to{0.0};
    int count{0};

    static Range parse(const std::string& text);  // "a:b:n", n >= 1
    std::vector<double> values() const;           // evenly spaced, both ends included
};

struct RunOptions {
    std::string command;
    ParamOverrides overrides;
    model::ModelParams params;  // resolved

    redfield::Method method{redfield::Method::EFFH};
    int rc_levels{10};
    std::string init{"uniform"};
    double t_min{1e-2};
    double t_max{1e7};
    int points{400};

    std::string axis{"lambda"};
    std::string range{"0.1:10:100"};
    int jobs{0};  // 0 = hardware concurrency

    int figure{0};
    double budget_s{600.0};

    std::vector<std::string> only;
    double tolerance_scale{1.0};
    bool invariants{true};

    std::filesystem::path out{"out"};
};

// Site-basis initial state from "uniform", "ground" or "file:<path>" (JSON 3x3,
// entries real or [re, im]).
Eigen::Matrix3cd parse_initial_state(const std::string& spec);

// Copy of the run configuration written next to every output.
nlohmann::json manifest(const RunOptions& opt);
void write_manifest(const RunOptions& opt);

int run_map(const RunOptions& opt);
int run_timescales(const RunOptions& opt);
int run_dynamics(const RunOptions& opt);
int run_steadystate(const RunOptions& opt);
int run_sweep(const RunOptions& opt);
int run_figure(const RunOptions& opt);
int run_validate(const RunOptions& opt);

// Parameter preset for figure id 2..8.
model::ModelParams figure_preset(int id);

// Column layouts shared by several commands.
const std::vector<std::string>& sweep_header();
const std::vector<std::string>& trajectory_header();
const std::vector<std::string>& steady_header();

} // namespace rcpt::app
