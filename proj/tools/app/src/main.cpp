// main.cpp — rcpt command-line entry point.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcpt/app/commands.hpp"
#include "rcpt/app/io.hpp"

using namespace rcpt;
using namespace rcpt::app;

namespace {

void add_param_flags(CLI::App* cmd, ParamOverrides& o) {
    cmd->add_option("--params", o.params_file, "JSON file with any of v, delta, lambda, omega, gamma, cutoff, temperature");
    cmd->add_option("--lambda", o.lambda, "system-bath coupling");
    cmd->add_option("--delta", o.delta, "excited-state splitting");
    cmd->add_option("--temp", o.temperature, "bath temperature");
    cmd->add_option("--omega", o.omega, "reaction-coordinate frequency");
    cmd->add_option("--gamma", o.gamma, "Brownian width / residual Ohmic prefactor");
    cmd->add_option("--cutoff", o.cutoff, "Ohmic cutoff frequency");
    cmd->add_flag("--no-cutoff", o.no_cutoff, "drop the exponential cutoff everywhere");
}

void add_out(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--out", opt.out, "output directory")->capture_default_str();
}

void add_method(CLI::App* cmd, RunOptions& opt, std::string& method) {
    cmd->add_option("--method", method, "uw | rc | effh")->capture_default_str();
    cmd->add_option("--rc-levels", opt.rc_levels, "RC Fock levels")->capture_default_str();
}

void add_grid(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--t-min", opt.t_min, "first time point")->capture_default_str();
    cmd->add_option("--t-max", opt.t_max, "last time point")->capture_default_str();
    cmd->add_option("--points", opt.points, "number of log-spaced time points")->capture_default_str();
}

int figure_id(const std::string& s) {
    std::string digits = s.rfind("fig", 0) == 0 ? s.substr(3) : s;
    if (digits.size() != 1 || digits[0] < '2' || digits[0] > '8')
        throw ParameterError("figure id must be 2..8 or fig2..fig8, got \"" + s + "\"");
    return digits[0] - '0';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reaction-coordinate polaron-transform toolkit for a dissipative three-level system"};
    app.require_subcommand(1);
    RunOptions opt;
    std::string method = "effh";
    std::string figure;
    std::string only;

    auto* map = app.add_subcommand("map", "effective Hamiltonian, spectrum and mixing amplitudes");
    auto* ts = app.add_subcommand("timescales", "relaxation timescales and their limits");
    auto* dyn = app.add_subcommand("dynamics", "Redfield dynamics in the site basis");
    auto* ss = app.add_subcommand("steadystate", "steady state of the chosen method");
    auto* fig = app.add_subcommand("figure", "regenerate a figure preset (2..8)");
    auto* sw = app.add_subcommand("sweep", "timescales over a parameter range");
    auto* val = app.add_subcommand("validate", "acceptance battery and invariants");

    for (auto* c : {map, ts, dyn, ss, fig, sw, val}) {
        add_param_flags(c, opt.overrides);
        add_out(c, opt);
    }
    add_method(dyn, opt, method);
    add_method(ss, opt, method);
    dyn->add_option("--init", opt.init, "uniform | ground | file:<path>")->capture_default_str();
    add_grid(dyn, opt);

    fig->add_option("id", figure, "figure id, 2..8 or fig2..fig8")->required();
    fig->add_option("--rc-levels", opt.rc_levels, "RC Fock levels")->capture_default_str();
    fig->add_option("--budget", opt.budget_s, "wall-clock budget in seconds for RC work")->capture_default_str();
    add_grid(fig, opt);

    sw->add_option("--axis", opt.axis, "lambda | delta | temperature")->capture_default_str();
    sw->add_option("--range", opt.range, "a:b:n, both ends included")->capture_default_str();
    sw->add_option("--jobs", opt.jobs, "worker threads (0 = all cores)")->capture_default_str();

    val->add_option("--only", only, "comma-separated item ids, or AC / INV");
    val->add_option("--tolerance-scale", opt.tolerance_scale,
                    "multiply every tolerance (test hook; a negative value forces failures)")
        ->capture_default_str();
    val->add_flag("!--no-invariants", opt.invariants, "run the AC items only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParameterError;
    }

    try {
        opt.command = app.get_subcommands().front()->get_name();
        opt.method = redfield::method_from_string(method);
        if (opt.command == "figure") {
            opt.figure = figure_id(figure);
            opt.params = opt.overrides.resolve(figure_preset(opt.figure));
        } else {
            opt.params = opt.overrides.resolve(model::ModelParams{});
        }
        if (!only.empty()) {
            std::stringstream ss_only(only);
            for (std::string item; std::getline(ss_only, item, ',');)
                if (!item.empty()) opt.only.push_back(item);
        }

        if (opt.command == "map") return run_map(opt);
        if (opt.command == "timescales") return run_timescales(opt);
        if (opt.command == "dynamics") return run_dynamics(opt);
        if (opt.command == "steadystate") return run_steadystate(opt);
        if (opt.command == "figure") return run_figure(opt);
        if (opt.command == "sweep") return run_sweep(opt);
        return run_validate(opt);
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kParameterError;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kParameterError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << " (diagnostic " << e.diagnostic() << ")\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}
