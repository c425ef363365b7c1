#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include <json.hpp>

#include "vhcert/certify.hpp"
#include "vhcert/comparison.hpp"
#include "vhcert/solver.hpp"
#include "vhcert/trajectory.hpp"

// Report building.  Everything here is deterministic for a given input
// (stable key order, no timestamps); wall-clock measurements belong in the
// separate "runtime" section assembled by the CLI.

namespace vhcert {

using ordered_json = nlohmann::ordered_json;

/// JSON has no inf/nan literals; represent non-finite values as strings.
inline ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::IterationLimit: return "iteration_limit";
        case SolveStatus::Diverged: return "diverged";
    }
    return "?";
}

inline ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["hypothesis_ok"] = cert.hypothesis_ok;
    j["gate_reason"] = cert.gate_reason;
    j["overall"] = cert.overall;
    j["R"] = json_number(cert.R);
    j["p"] = json_number(cert.p);
    j["q"] = json_number(cert.q);
    j["conditions"] = ordered_json::array();
    for (const auto& c : cert.ledger) {
        j["conditions"].push_back({
            {"name", condition_name(c.name)},
            {"lhs", json_number(c.lhs)},
            {"rhs", json_number(c.rhs)},
            {"strict", c.strict},
            {"pass", c.pass},
        });
    }
    j["informational"] = ordered_json::array();
    for (const auto& c : cert.informational) {
        j["informational"].push_back({
            {"label", c.label},
            {"lhs", json_number(c.lhs)},
            {"rhs", json_number(c.rhs)},
            {"strict", c.strict},
            {"pass", c.pass},
        });
    }
    return j;
}

inline ordered_json picard_to_json(const PicardResult& r) {
    ordered_json j;
    j["status"] = solve_status_name(r.status);
    j["iterations"] = r.iterations;
    j["final_delta"] = json_number(r.final_delta);
    j["deltas"] = ordered_json::array();
    for (double d : r.deltas) j["deltas"].push_back(json_number(d));
    return j;
}

inline ordered_json ode_to_json(const OdeResult& r) {
    ordered_json j;
    j["status"] = r.status == SolveStatus::Converged ? "completed" : "diverged";
    if (r.diverged_at) j["diverged_at"] = *r.diverged_at;
    return j;
}

inline ordered_json bound_to_json(const BoundReport& r) {
    ordered_json j;
    j["max_ratio"] = json_number(r.max_ratio);
    j["holds"] = r.holds();
    if (r.violated_at)
        j["violated_at"] = *r.violated_at;
    else
        j["violated_at"] = nullptr;
    j["slack"] = json_number(r.slack);
    return j;
}

inline ordered_json envelope_condition_to_json(const EnvelopeConditionResult& r) {
    ordered_json j;
    j["holds"] = r.holds;
    j["worst_margin"] = json_number(r.worst_margin);
    j["analytic_tail"] = r.analytic_tail;
    return j;
}

/// CSV trajectory dump: t, re(u), im(u), |u| and, when a passing certificate
/// is supplied, the envelope column e^{-pt}/R.  Full round-trip precision.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& u,
                                 const std::optional<std::pair<double, double>>& envelope_Rp) {
    out << "t,re_u,im_u,abs_u";
    if (envelope_Rp) out << ",envelope";
    out << '\n';
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double t = u.grid.node(k);
        out << format_double(t) << ',' << format_double(u.values[k].real()) << ','
            << format_double(u.values[k].imag()) << ',' << format_double(std::abs(u.values[k]));
        if (envelope_Rp)
            out << ',' << format_double(std::exp(-envelope_Rp->second * t) / envelope_Rp->first);
        out << '\n';
    }
}

}  // namespace vhcert
