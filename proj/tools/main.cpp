#include "axipot/config.hpp"
#include "axipot/runner.hpp"
#include "axipot/solver.hpp"

#include <CLI11.hpp>

#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration (key=value lines)")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory for CSV and JSON reports")
        ->required();
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set case.nu=0.7");
}

axipot::Config load(const CommonArgs& args) {
    axipot::Config cfg = axipot::Config::from_file(args.config_path);
    for (const std::string& a : args.overrides)
        cfg.set(a);
    cfg.set("out.dir", args.out_dir);
    return cfg;
}

void print_verify(const nlohmann::json& s) {
    if (s.contains("checks")) {
        for (const auto& [name, check] : s["checks"].items())
            std::cout << "  " << name << ": " << check["value"].dump()
                      << (check["pass"].get<bool>() ? " <= " : " > ")
                      << check["threshold"].dump()
                      << (check["pass"].get<bool>() ? "  ok" : "  FAIL") << "\n";
    }
    if (s.contains("solver"))
        std::cout << "  solver: " << (s["solver"]["converged"].get<bool>() ? "converged" : "DID NOT CONVERGE")
                  << " in " << s["solver"]["iterations"].dump()
                  << " iterations, residual " << s["solver"]["residual"].dump() << "\n";
    std::cout << "verify: " << (s["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric potential-flow verification toolkit"};
    app.require_subcommand(1);

    CommonArgs verify_args, falsify_args, convergence_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "evaluate all residuals for one configuration and gate them");
    add_common(verify, verify_args);
    CLI::App* falsify = app.add_subcommand(
        "falsify", "correct vs axis-term-free phi equation across grid levels");
    add_common(falsify, falsify_args);
    CLI::App* convergence =
        app.add_subcommand("convergence", "grid-refinement study of the Laplace solver");
    add_common(convergence, convergence_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        axipot::RunResult result;
        if (verify->parsed()) {
            result = axipot::run_verify(load(verify_args));
            print_verify(result.summary);
        } else if (falsify->parsed()) {
            result = axipot::run_falsify(load(falsify_args));
            std::cout << "falsify: " << result.summary["verdict"].get<std::string>() << "\n";
        } else {
            result = axipot::run_convergence(load(convergence_args));
            for (const auto& row : result.summary["levels"])
                std::cout << "  " << row["nr"].dump() << "x" << row["nz"].dump()
                          << "  sup_error " << row["sup_error"].dump() << "  order "
                          << row["observed_order"].dump() << "\n";
        }
        if (result.summary.contains("error"))
            std::cerr << "error: " << result.summary["error"].get<std::string>() << "\n";
        return result.exit_code;
    } catch (const axipot::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const axipot::solve_failure& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
