#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "vhcert/certify.hpp"
#include "vhcert/problem.hpp"
#include "vhcert/solver.hpp"
#include "vhcert/trajectory.hpp"

/*
 * Generic engine for the scalar differential inequality
 *
 *     g'(t) <= -a g(t) + alpha(t, g) + beta(t),      g(0) = g0 >= 0,
 *
 * with the structured families
 *
 *     alpha(t, g) = growth_coeff * g^growth_exponent      (coeff >= 0, exp >= 1)
 *     beta(t)     = drive_coeff  * e^{-drive_rate t}      (coeff >= 0, rate > 0)
 *     mu(t)       = envelope_amplitude * e^{envelope_rate t}.
 *
 * If the envelope admissibility condition
 *
 *     alpha(t, 1/mu) + beta(t) <= (1/mu)(a - envelope_rate)     for all t >= 0
 *
 * holds together with g0 * mu(0) <= 1, then g(t) <= 1/mu(t) for all t >= 0.
 * The engine checks the hypotheses, integrates the majorant ODE
 * w' = -a w + alpha(t, w) + beta(t), and compares supplied trajectories
 * against the envelope.
 */

namespace vhcert {

struct InequalitySpec {
    double a = 1.0;                   ///< linear decay rate, > 0
    double growth_coeff = 0.0;        ///< >= 0
    double growth_exponent = 1.0;     ///< >= 1
    double drive_coeff = 0.0;         ///< >= 0
    double drive_rate = 1.0;          ///< > 0
    double envelope_amplitude = 1.0;  ///< > 0
    double envelope_rate = 0.0;       ///< any real; decay bounds use > 0
    double initial_value = 0.0;       ///< g(0) >= 0

    double growth(double g) const {
        return growth_coeff * std::pow(std::max(g, 0.0), growth_exponent);
    }
    double drive(double t) const { return drive_coeff * std::exp(-drive_rate * t); }
    double envelope(double t) const { return envelope_amplitude * std::exp(envelope_rate * t); }
};

/// Result of the envelope admissibility check.  When analytic_tail is set,
/// the exponential structure makes t = 0 the worst case (every left-side
/// term decays at least as fast as the right side), so `holds` certifies all
/// t >= 0, not just the grid nodes.
struct EnvelopeConditionResult {
    bool holds = false;
    double worst_margin = 0.0;  ///< min over nodes of rhs - lhs
    bool analytic_tail = false;
};

inline EnvelopeConditionResult check_envelope_condition(const InequalitySpec& s, const Grid& g) {
    double worst = std::numeric_limits<double>::infinity();
    bool grid_ok = true;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double t = g.node(k);
        const double w = 1.0 / s.envelope(t);
        const double lhs = s.growth(w) + s.drive(t);
        const double rhs = w * (s.a - s.envelope_rate);
        worst = std::min(worst, rhs - lhs);
        grid_ok = grid_ok && lhs <= rhs;
    }

    // After scaling by mu(t), the growth term decays at rate
    // (growth_exponent - 1) * envelope_rate and the drive term at rate
    // drive_rate - envelope_rate, against a constant right side.  Both rates
    // are nonnegative exactly when:
    const bool analytic = s.envelope_rate >= 0.0 && s.drive_rate >= s.envelope_rate;
    if (analytic) {
        const double w0 = 1.0 / s.envelope_amplitude;
        const bool at_zero = s.growth(w0) + s.drive(0.0) <= w0 * (s.a - s.envelope_rate);
        return {at_zero, worst, true};
    }
    return {grid_ok, worst, false};
}

/// g(0) * mu(0) <= 1.
inline bool check_initial_condition(const InequalitySpec& s) {
    return s.initial_value * s.envelope_amplitude <= 1.0;
}

/// RK4 solution of the majorant ODE w' = -a w + alpha(t, w) + beta(t) from
/// w(0) = w0 >= 0.  Real-valued; returned through the shared Trajectory type.
inline OdeResult integrate_majorant(const InequalitySpec& s, double w0, const Grid& g) {
    if (!(w0 >= 0.0)) throw std::invalid_argument("integrate_majorant: w0 must be >= 0");

    Trajectory w{g, std::vector<Complex>(g.size())};
    w.values[0] = Complex{w0};

    const auto rhs = [&s](double t, double y) { return -s.a * y + s.growth(y) + s.drive(t); };
    const double dt = g.delta();
    double state = w0;
    for (std::size_t k = 0; k < g.steps(); ++k) {
        state = detail::rk4_step(rhs, g.node(k), dt, state);
        if (!std::isfinite(state) || std::abs(state) > divergence_guard) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t j = k + 1; j < g.size(); ++j) w.values[j] = Complex{nan, nan};
            return {std::move(w), SolveStatus::Diverged, k + 1};
        }
        w.values[k + 1] = Complex{state};
    }
    return {std::move(w), SolveStatus::Converged, std::nullopt};
}

/// Check g_k * mu(t_k) <= 1 + slack at every node.
inline BoundReport compare_to_envelope(std::span<const double> g_values, const InequalitySpec& s,
                                       const Grid& g, double slack = 1e-6) {
    if (g_values.size() != g.size())
        throw std::invalid_argument("compare_to_envelope: value/grid size mismatch");
    BoundReport report{0.0, std::nullopt, slack};
    for (std::size_t k = 0; k < g_values.size(); ++k) {
        const double ratio = g_values[k] * s.envelope(g.node(k));
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (!report.violated_at && ratio > 1.0 + slack) report.violated_at = k;
    }
    return report;
}

/// Instantiate the inequality satisfied by g = |u| for a certified problem:
/// alpha = c_h g^b, beta = c_F e^{-a1 t}, mu = R e^{p t}, g0 = |f(0)|.
inline InequalitySpec spec_from_problem(const Problem& p, const Certificate& cert) {
    if (!cert.overall)
        throw std::invalid_argument("spec_from_problem: certificate does not pass");
    const EnvelopeConstants env = envelope_constants(p);
    InequalitySpec s;
    s.a = p.kernel_rate;
    s.growth_coeff = env.c_h;
    s.growth_exponent = p.nonlinearity.exponent;
    s.drive_coeff = env.c_F;
    s.drive_rate = p.forcing.rate;
    s.envelope_amplitude = cert.R;
    s.envelope_rate = cert.p;
    s.initial_value = std::abs(p.forcing.amplitude);
    return s;
}

}  // namespace vhcert
