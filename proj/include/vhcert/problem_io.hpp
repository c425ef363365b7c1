#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vhcert/problem.hpp"
#include "vhcert/trajectory.hpp"

// Problem-file schema (JSON):
//
// {
//   "a": 2.0,
//   "nonlinearity": {"family": "integer_power", "lambda": {"re": -0.5}, "b": 2},
//   "forcing": {"A": {"re": 0.1}, "a1": 1.0},
//   "grid": {"T": 20.0, "n": 20000},                          // optional
//   "solver": {"tol": 1e-12, "max_iter": 200,
//              "margin": 0.02, "slack": 1e-6}                 // optional
// }
//
// Complex values are either a plain number or an {re, im} object with im
// defaulting to 0.  Errors name the offending field by its dotted path.

namespace vhcert {

struct SolverOptions {
    double tol = 1e-12;
    std::size_t max_iter = 200;
    double margin = 0.02;
    double slack = 1e-6;
};

struct ProblemInput {
    Problem problem;
    Grid grid;
    SolverOptions options;
};

class ProblemFileError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail_field(const std::string& path, const std::string& what) {
    throw ProblemFileError(path + ": " + what);
}

inline const nlohmann::json& require_key(const nlohmann::json& obj, const std::string& path,
                                         const std::string& key, const char* expected) {
    if (!obj.is_object()) fail_field(path.empty() ? "(root)" : path, "expected an object");
    auto it = obj.find(key);
    const std::string full = path.empty() ? key : path + "." + key;
    if (it == obj.end()) fail_field(full, std::string("missing required field (expected ") + expected + ")");
    return *it;
}

inline double as_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) fail_field(path, "expected a number");
    return j.get<double>();
}

inline std::size_t as_count(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1)
        fail_field(path, "expected a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

inline Complex as_complex(const nlohmann::json& j, const std::string& path) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_object()) {
        double re = 0.0, im = 0.0;
        auto it = j.find("re");
        if (it == j.end()) fail_field(path + ".re", "missing required field (expected number)");
        re = as_number(*it, path + ".re");
        if (auto im_it = j.find("im"); im_it != j.end()) im = as_number(*im_it, path + ".im");
        return Complex{re, im};
    }
    fail_field(path, "expected a number or an {re, im} object");
}

}  // namespace detail

inline ProblemInput parse_problem_input(const nlohmann::json& root) {
    using detail::as_complex;
    using detail::as_count;
    using detail::as_number;
    using detail::fail_field;
    using detail::require_key;

    if (!root.is_object()) fail_field("(root)", "expected a JSON object");

    const double a = as_number(require_key(root, "", "a", "positive number"), "a");
    if (!(a > 0.0)) fail_field("a", "must be > 0");

    // nonlinearity
    const auto& nl_json = require_key(root, "", "nonlinearity", "object");
    const auto& family_json = require_key(nl_json, "nonlinearity", "family", "string");
    if (!family_json.is_string()) fail_field("nonlinearity.family", "expected a string");
    const std::string family = family_json.get<std::string>();

    Nonlinearity nl;
    if (family == "zero") {
        nl = Nonlinearity::zero();
    } else if (family == "linear") {
        nl = Nonlinearity::linear(
            as_complex(require_key(nl_json, "nonlinearity", "lambda", "number or {re, im}"),
                       "nonlinearity.lambda"));
    } else if (family == "integer_power" || family == "modulus_power") {
        const Complex lambda =
            as_complex(require_key(nl_json, "nonlinearity", "lambda", "number or {re, im}"),
                       "nonlinearity.lambda");
        const double b =
            as_number(require_key(nl_json, "nonlinearity", "b", "number"), "nonlinearity.b");
        if (family == "integer_power") {
            if (std::rint(b) != b || b < 2.0)
                fail_field("nonlinearity.b", "must be an integer >= 2 for integer_power");
            nl = Nonlinearity::integer_power(lambda, static_cast<int>(b));
        } else {
            if (!(b >= 1.0)) fail_field("nonlinearity.b", "must be >= 1 for modulus_power");
            nl = Nonlinearity::modulus_power(lambda, b);
        }
    } else {
        fail_field("nonlinearity.family",
                   "unknown family \"" + family +
                       "\" (expected zero | linear | integer_power | modulus_power)");
    }

    // forcing
    const auto& fc_json = require_key(root, "", "forcing", "object");
    const Complex amplitude = as_complex(
        require_key(fc_json, "forcing", "A", "number or {re, im}"), "forcing.A");
    const double a1 =
        as_number(require_key(fc_json, "forcing", "a1", "positive number"), "forcing.a1");
    if (!(a1 > 0.0)) fail_field("forcing.a1", "must be > 0");

    // grid (optional)
    double horizon = 20.0;
    std::size_t steps = 20000;
    if (auto it = root.find("grid"); it != root.end()) {
        if (!it->is_object()) fail_field("grid", "expected an object");
        if (auto t = it->find("T"); t != it->end()) {
            horizon = as_number(*t, "grid.T");
            if (!(horizon > 0.0)) fail_field("grid.T", "must be > 0");
        }
        if (auto n = it->find("n"); n != it->end()) steps = as_count(*n, "grid.n");
    }

    // solver options (optional)
    SolverOptions opts;
    if (auto it = root.find("solver"); it != root.end()) {
        if (!it->is_object()) fail_field("solver", "expected an object");
        if (auto v = it->find("tol"); v != it->end()) {
            opts.tol = as_number(*v, "solver.tol");
            if (!(opts.tol > 0.0)) fail_field("solver.tol", "must be > 0");
        }
        if (auto v = it->find("max_iter"); v != it->end())
            opts.max_iter = as_count(*v, "solver.max_iter");
        if (auto v = it->find("margin"); v != it->end()) {
            opts.margin = as_number(*v, "solver.margin");
            if (!(opts.margin > 0.0 && opts.margin < 1.0))
                fail_field("solver.margin", "must lie in (0, 1)");
        }
        if (auto v = it->find("slack"); v != it->end()) {
            opts.slack = as_number(*v, "solver.slack");
            if (!(opts.slack >= 0.0)) fail_field("solver.slack", "must be >= 0");
        }
    }

    return {Problem::make(a, nl, Forcing::exp_decay(amplitude, a1)), Grid(horizon, steps), opts};
}

/// Load and parse a problem file; syntax errors are reported with a line
/// number, field errors with a dotted path.
inline ProblemInput load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError("cannot open problem file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i < limit; ++i)
            if (text[i] == '\n') ++line;
        throw ProblemFileError(path + ":" + std::to_string(line) + ": " + e.what());
    }
    return parse_problem_input(root);
}

inline const char* family_name(NonlinearityFamily f) {
    switch (f) {
        case NonlinearityFamily::Zero: return "zero";
        case NonlinearityFamily::Linear: return "linear";
        case NonlinearityFamily::IntegerPower: return "integer_power";
        case NonlinearityFamily::ModulusPower: return "modulus_power";
    }
    return "?";
}

inline nlohmann::ordered_json complex_to_json(Complex z) {
    return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

/// Canonical echo of a parsed input; parsing it again reproduces the input
/// field for field.
inline nlohmann::ordered_json problem_input_to_json(const ProblemInput& in) {
    nlohmann::ordered_json j;
    j["a"] = in.problem.kernel_rate;
    j["nonlinearity"] = {
        {"family", family_name(in.problem.nonlinearity.family)},
        {"lambda", complex_to_json(in.problem.nonlinearity.lambda)},
        {"b", in.problem.nonlinearity.exponent},
    };
    j["forcing"] = {
        {"A", complex_to_json(in.problem.forcing.amplitude)},
        {"a1", in.problem.forcing.rate},
    };
    j["grid"] = {{"T", in.grid.horizon()}, {"n", in.grid.steps()}};
    j["solver"] = {
        {"tol", in.options.tol},
        {"max_iter", in.options.max_iter},
        {"margin", in.options.margin},
        {"slack", in.options.slack},
    };
    return j;
}

}  // namespace vhcert
