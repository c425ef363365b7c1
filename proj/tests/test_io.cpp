#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "support.hpp"
#include "vhcert/problem_io.hpp"
#include "vhcert/report.hpp"

using namespace vhcert;
using nlohmann::json;

namespace {

const char* worked_text = R"({
  "a": 2.0,
  "nonlinearity": {"family": "integer_power", "lambda": {"re": -0.5}, "b": 2},
  "forcing": {"A": {"re": 0.1}, "a1": 1.0},
  "grid": {"T": 20.0, "n": 20000},
  "solver": {"tol": 1e-12, "max_iter": 200, "margin": 0.02, "slack": 1e-6}
})";

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ProblemFileError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parsing the worked problem file") {
    const ProblemInput in = parse_problem_input(json::parse(worked_text));
    CHECK(in.problem.kernel_rate == 2.0);
    CHECK(in.problem.nonlinearity.family == NonlinearityFamily::IntegerPower);
    CHECK(in.problem.nonlinearity.lambda == Complex{-0.5});
    CHECK(in.problem.nonlinearity.exponent == 2.0);
    CHECK(in.problem.forcing.amplitude == Complex{0.1});
    CHECK(in.problem.forcing.rate == 1.0);
    CHECK(in.grid.horizon() == 20.0);
    CHECK(in.grid.steps() == 20000);
    CHECK(in.options.tol == 1e-12);
    CHECK(in.options.max_iter == 200);
    CHECK(in.options.margin == 0.02);
    CHECK(in.options.slack == 1e-6);
}

TEST_CASE("grid and solver sections are optional with documented defaults") {
    const ProblemInput in = parse_problem_input(json::parse(R"({
        "a": 2.0,
        "nonlinearity": {"family": "zero"},
        "forcing": {"A": 0.1, "a1": 1.0}
    })"));
    CHECK(in.grid.horizon() == 20.0);
    CHECK(in.grid.steps() == 20000);
    CHECK(in.options.tol == 1e-12);
    CHECK(in.options.max_iter == 200);
    CHECK(in.options.margin == 0.02);
    CHECK(in.options.slack == 1e-6);
}

TEST_CASE("complex fields accept plain numbers and {re, im} objects") {
    const ProblemInput in = parse_problem_input(json::parse(R"({
        "a": 2.0,
        "nonlinearity": {"family": "linear", "lambda": 0.5},
        "forcing": {"A": {"re": 0.1, "im": -0.2}, "a1": 1.0}
    })"));
    CHECK(in.problem.nonlinearity.lambda == Complex{0.5, 0.0});
    CHECK(in.problem.forcing.amplitude == Complex{0.1, -0.2});
}

TEST_CASE("field errors carry the dotted path") {
    const auto parse = [](const char* text) {
        return [text] { parse_problem_input(json::parse(text)); };
    };

    CHECK(message_of(parse(R"({"a": 2.0, "nonlinearity": {"family": "zero"},
                               "forcing": {"A": 0.1}})"))
              .find("forcing.a1") != std::string::npos);
    CHECK(message_of(parse(R"({"nonlinearity": {"family": "zero"},
                               "forcing": {"A": 0.1, "a1": 1.0}})"))
              .find("a:") != std::string::npos);
    CHECK(message_of(parse(R"({"a": 2.0, "nonlinearity": {"family": "warp"},
                               "forcing": {"A": 0.1, "a1": 1.0}})"))
              .find("nonlinearity.family") != std::string::npos);
    CHECK(message_of(parse(R"({"a": 2.0,
                               "nonlinearity": {"family": "integer_power", "lambda": 1.0, "b": 2.5},
                               "forcing": {"A": 0.1, "a1": 1.0}})"))
              .find("nonlinearity.b") != std::string::npos);
    CHECK(message_of(parse(R"({"a": 2.0, "nonlinearity": {"family": "zero"},
                               "forcing": {"A": "x", "a1": 1.0}})"))
              .find("forcing.A") != std::string::npos);
    CHECK(message_of(parse(R"({"a": 2.0, "nonlinearity": {"family": "zero"},
                               "forcing": {"A": 0.1, "a1": -1.0}})"))
              .find("forcing.a1") != std::string::npos);
    CHECK(message_of(parse(R"({"a": 2.0, "nonlinearity": {"family": "zero"},
                               "forcing": {"A": 0.1, "a1": 1.0},
                               "solver": {"margin": 0.0}})"))
              .find("solver.margin") != std::string::npos);
}

TEST_CASE("syntax errors report the line") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "vhcert_bad_syntax.json";
    {
        std::ofstream out(path);
        out << "{\n  \"a\": 2.0,\n  \"oops\n}\n";
    }
    const std::string msg = message_of([&] { load_problem_file(path.string()); });
    // the unterminated string is cut by the newline that starts line 4
    CHECK(msg.find(path.string() + ":4") != std::string::npos);
    fs::remove(path);

    CHECK(message_of([] { load_problem_file("/nonexistent/vhcert.json"); })
              .find("cannot open") != std::string::npos);
}

TEST_CASE("canonical echo round-trips to the same problem") {
    const ProblemInput in = parse_problem_input(json::parse(worked_text));
    const ordered_json echo = problem_input_to_json(in);
    const ProblemInput back = parse_problem_input(json::parse(echo.dump()));

    CHECK(back.problem.kernel_rate == in.problem.kernel_rate);
    CHECK(back.problem.nonlinearity.family == in.problem.nonlinearity.family);
    CHECK(back.problem.nonlinearity.lambda == in.problem.nonlinearity.lambda);
    CHECK(back.problem.nonlinearity.exponent == in.problem.nonlinearity.exponent);
    CHECK(back.problem.forcing.amplitude == in.problem.forcing.amplitude);
    CHECK(back.problem.forcing.rate == in.problem.forcing.rate);
    CHECK(back.grid.horizon() == in.grid.horizon());
    CHECK(back.grid.steps() == in.grid.steps());
    CHECK(back.options.tol == in.options.tol);
    CHECK(back.options.max_iter == in.options.max_iter);
    CHECK(back.options.margin == in.options.margin);
    CHECK(back.options.slack == in.options.slack);
}

TEST_CASE("report pieces serialize deterministically") {
    const Problem p = testsupport::worked_problem();
    const Certificate cert = certify(p);
    CHECK(certificate_to_json(cert).dump() == certificate_to_json(certify(p)).dump());

    const Grid g(5.0, 500);
    CHECK(picard_to_json(solve_picard(p, g)).dump() ==
          picard_to_json(solve_picard(p, g)).dump());

    // key order is stable by construction
    const ordered_json j = certificate_to_json(cert);
    auto it = j.begin();
    CHECK(it.key() == "hypothesis_ok");
    ++it;
    CHECK(it.key() == "gate_reason");
}

TEST_CASE("non-finite values are stringified, never emitted as null") {
    CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(json_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(json_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(json_number(0.25) == ordered_json(0.25));
}

TEST_CASE("CSV dump has full precision, headers and the envelope column") {
    const Problem p = testsupport::worked_problem();
    const Grid g(1.0, 4);
    const OdeResult ode = solve_ode(p, g);
    const Certificate cert = certify(p);

    std::ostringstream with_envelope;
    write_trajectory_csv(with_envelope, ode.solution, std::make_pair(cert.R, cert.p));
    std::istringstream lines(with_envelope.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,re_u,im_u,abs_u,envelope");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == g.size());

    // row 0 is t = 0 with u = f(0) = A
    std::istringstream again(with_envelope.str());
    std::getline(again, line);
    std::getline(again, line);
    CHECK(line.substr(0, 6) == "0,0.1,");

    std::ostringstream plain;
    write_trajectory_csv(plain, ode.solution, std::nullopt);
    std::istringstream plain_lines(plain.str());
    std::getline(plain_lines, line);
    CHECK(line == "t,re_u,im_u,abs_u");

    // full round-trip precision
    CHECK(std::stod(format_double(0.1)) == 0.1);
    CHECK(std::stod(format_double(std::exp(-1.0))) == std::exp(-1.0));
}
