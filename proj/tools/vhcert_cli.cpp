// vhcert: certify decay bounds for exponential-kernel integral equations,
// solve them numerically, and verify the certified envelope.
//
// Exit codes: 0 success, 1 input error, 2 certificate fail (or certified
// bound failing verification), 3 solver non-convergence/divergence.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vhcert/vhcert.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_certificate_fail = 2;
constexpr int exit_solver_fail = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct CommonArgs {
    std::string input_path;
    std::string out_path;           // empty: stdout
    std::optional<double> margin;
    std::optional<double> slack;
    std::optional<double> grid_T;
    std::optional<std::size_t> grid_n;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("input", args.input_path, "problem file (JSON)")->required();
    cmd->add_option("--out", args.out_path, "write the report here instead of stdout");
    cmd->add_option("--margin", args.margin, "certificate safety margin, in (0, 1)");
    cmd->add_option("--grid-T", args.grid_T, "override grid horizon T");
    cmd->add_option("--grid-n", args.grid_n, "override grid step count n");
}

// Load + apply flag overrides.  Throws ProblemFileError on bad values.
vhcert::ProblemInput load_input(const CommonArgs& args) {
    vhcert::ProblemInput in = vhcert::load_problem_file(args.input_path);
    if (args.margin) {
        if (!(*args.margin > 0.0 && *args.margin < 1.0))
            throw vhcert::ProblemFileError("--margin: must lie in (0, 1)");
        in.options.margin = *args.margin;
    }
    if (args.slack) {
        if (!(*args.slack >= 0.0)) throw vhcert::ProblemFileError("--slack: must be >= 0");
        in.options.slack = *args.slack;
    }
    double T = in.grid.horizon();
    std::size_t n = in.grid.steps();
    if (args.grid_T) {
        if (!(*args.grid_T > 0.0)) throw vhcert::ProblemFileError("--grid-T: must be > 0");
        T = *args.grid_T;
    }
    if (args.grid_n) {
        if (*args.grid_n < 1) throw vhcert::ProblemFileError("--grid-n: must be >= 1");
        n = *args.grid_n;
    }
    in.grid = vhcert::Grid(T, n);
    return in;
}

int emit_report(const vhcert::ordered_json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << '\n';
        return exit_ok;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write report to " << out_path << '\n';
        return exit_input_error;
    }
    out << report.dump(2) << '\n';
    return exit_ok;
}

vhcert::ordered_json report_skeleton(const char* command, const vhcert::ProblemInput& in) {
    vhcert::ordered_json report;
    report["schema"] = "vhcert-report-v1";
    report["command"] = command;
    report["problem"] = vhcert::problem_input_to_json(in);
    return report;
}

int run_certify(const CommonArgs& args) {
    const auto start = Clock::now();
    const vhcert::ProblemInput in = load_input(args);
    const vhcert::Certificate cert = vhcert::certify(in.problem, in.options.margin);

    vhcert::ordered_json report = report_skeleton("certify", in);
    report["certificate"] = vhcert::certificate_to_json(cert);
    report["runtime"] = {{"total_ms", ms_since(start)}};
    if (int rc = emit_report(report, args.out_path); rc != exit_ok) return rc;
    return cert.overall ? exit_ok : exit_certificate_fail;
}

bool write_csv(const std::string& path, const vhcert::Trajectory& u,
               const std::optional<std::pair<double, double>>& envelope) {
    std::ofstream out(path);
    if (!out) return false;
    vhcert::write_trajectory_csv(out, u, envelope);
    return true;
}

int run_solve(const CommonArgs& args, const std::string& method, const std::string& csv_path) {
    const auto start = Clock::now();
    const vhcert::ProblemInput in = load_input(args);
    const vhcert::Certificate cert = vhcert::certify(in.problem, in.options.margin);

    vhcert::ordered_json report = report_skeleton("solve", in);
    report["certificate"] = vhcert::certificate_to_json(cert);
    report["solver"] = vhcert::ordered_json::object();
    report["solver"]["method"] = method;

    const bool want_picard = method == "picard" || method == "both";
    const bool want_ode = method == "ode" || method == "both";

    std::optional<vhcert::PicardResult> picard;
    std::optional<vhcert::OdeResult> ode;
    bool solver_ok = true;
    if (want_picard) {
        picard = vhcert::solve_picard(in.problem, in.grid, in.options.tol, in.options.max_iter);
        report["solver"]["picard"] = vhcert::picard_to_json(*picard);
        solver_ok = solver_ok && picard->status == vhcert::SolveStatus::Converged;
    }
    if (want_ode) {
        ode = vhcert::solve_ode(in.problem, in.grid);
        report["solver"]["ode"] = vhcert::ode_to_json(*ode);
        solver_ok = solver_ok && ode->status == vhcert::SolveStatus::Converged;
    }
    if (picard && ode && solver_ok)
        report["solver"]["sup_distance"] =
            vhcert::json_number(vhcert::sup_distance(picard->solution, ode->solution));

    if (!csv_path.empty() && solver_ok) {
        // In "both" mode the CSV carries the Picard trajectory; the report
        // has the sup distance to the RK4 one.
        const vhcert::Trajectory& u = picard ? picard->solution : ode->solution;
        std::optional<std::pair<double, double>> envelope;
        if (cert.overall) envelope = std::make_pair(cert.R, cert.p);
        if (!write_csv(csv_path, u, envelope)) {
            std::cerr << "error: cannot write CSV to " << csv_path << '\n';
            return exit_input_error;
        }
    }

    report["runtime"] = {{"total_ms", ms_since(start)}};
    if (int rc = emit_report(report, args.out_path); rc != exit_ok) return rc;
    return solver_ok ? exit_ok : exit_solver_fail;
}

int run_verify(const CommonArgs& args) {
    const auto start = Clock::now();
    const vhcert::ProblemInput in = load_input(args);
    const vhcert::Certificate cert = vhcert::certify(in.problem, in.options.margin);

    vhcert::ordered_json report = report_skeleton("verify", in);
    report["certificate"] = vhcert::certificate_to_json(cert);
    if (!cert.overall) {
        report["runtime"] = {{"total_ms", ms_since(start)}};
        if (int rc = emit_report(report, args.out_path); rc != exit_ok) return rc;
        return exit_certificate_fail;
    }

    const vhcert::PicardResult picard =
        vhcert::solve_picard(in.problem, in.grid, in.options.tol, in.options.max_iter);
    const vhcert::OdeResult ode = vhcert::solve_ode(in.problem, in.grid);
    report["solver"] = {
        {"method", "both"},
        {"picard", vhcert::picard_to_json(picard)},
        {"ode", vhcert::ode_to_json(ode)},
    };
    if (picard.status != vhcert::SolveStatus::Converged ||
        ode.status != vhcert::SolveStatus::Converged) {
        report["runtime"] = {{"total_ms", ms_since(start)}};
        if (int rc = emit_report(report, args.out_path); rc != exit_ok) return rc;
        return exit_solver_fail;
    }
    report["solver"]["sup_distance"] =
        vhcert::json_number(vhcert::sup_distance(picard.solution, ode.solution));

    const vhcert::BoundReport bound_picard =
        vhcert::verify_bound(picard.solution, cert, in.options.slack);
    const vhcert::BoundReport bound_ode =
        vhcert::verify_bound(ode.solution, cert, in.options.slack);
    report["bound"] = {
        {"picard", vhcert::bound_to_json(bound_picard)},
        {"ode", vhcert::bound_to_json(bound_ode)},
    };

    // Cross-check through the differential-inequality engine: the same
    // envelope, reached via the scalar inequality for g = |u|.
    const vhcert::InequalitySpec spec = vhcert::spec_from_problem(in.problem, cert);
    const vhcert::EnvelopeConditionResult env_cond =
        vhcert::check_envelope_condition(spec, in.grid);
    const auto g_picard = picard.solution.moduli();
    const auto g_ode = ode.solution.moduli();
    report["comparison"] = {
        {"envelope_condition", vhcert::envelope_condition_to_json(env_cond)},
        {"initial_condition", vhcert::check_initial_condition(spec)},
        {"envelope_check",
         {{"picard", vhcert::bound_to_json(
                         vhcert::compare_to_envelope(g_picard, spec, in.grid, in.options.slack))},
          {"ode", vhcert::bound_to_json(
                      vhcert::compare_to_envelope(g_ode, spec, in.grid, in.options.slack))}}},
    };

    report["runtime"] = {{"total_ms", ms_since(start)}};
    if (int rc = emit_report(report, args.out_path); rc != exit_ok) return rc;
    return bound_picard.holds() && bound_ode.holds() ? exit_ok : exit_certificate_fail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified decay bounds for exponential-kernel Volterra equations"};
    app.require_subcommand(1);

    CommonArgs certify_args;
    CLI::App* certify_cmd = app.add_subcommand("certify", "run the condition chain only");
    add_common(certify_cmd, certify_args);

    CommonArgs solve_args;
    std::string method = "both";
    std::string csv_path;
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute a numerical solution");
    add_common(solve_cmd, solve_args);
    solve_cmd->add_option("--method", method, "picard | ode | both (default both)")
        ->check(CLI::IsMember({"picard", "ode", "both"}));
    solve_cmd->add_option("--out-csv", csv_path, "write the trajectory as CSV");

    CommonArgs verify_args;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "certify, solve both ways, check the envelope");
    add_common(verify_cmd, verify_args);
    verify_cmd->add_option("--slack", verify_args.slack, "bound-check slack (default 1e-6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (certify_cmd->parsed()) return run_certify(certify_args);
        if (solve_cmd->parsed()) return run_solve(solve_args, method, csv_path);
        if (verify_cmd->parsed()) return run_verify(verify_args);
    } catch (const vhcert::ProblemFileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}
