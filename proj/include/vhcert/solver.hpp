#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "vhcert/certify.hpp"
#include "vhcert/problem.hpp"
#include "vhcert/trajectory.hpp"

/*
 * Two independent solution paths for the integral equation:
 *
 *  - Picard iteration u^{m+1} = T(u^m) on the integral form, with the
 *    history integral advanced by the exact-kernel trapezoid recursion
 *
 *        I_0 = 0,   I_{k+1} = e^{-a dt} I_k + (dt/2)(e^{-a dt} w_k + w_{k+1}),
 *
 *    which costs O(n) per sweep: the kernel's semigroup property
 *    e^{-a(t_{k+1}-s)} = e^{-a dt} e^{-a(t_k-s)} propagates the whole
 *    history, and only the newest panel is integrated (trapezoid on the
 *    integrand, kernel factor exact at the panel endpoints).
 *
 *  - Classical RK4 on the equivalent ODE  u' = -a u + h(u) + F(t),
 *    u(0) = f(0), with F evaluated analytically at the stage times.
 *
 * Both are pure functions of their inputs; distinct solves may run
 * concurrently.
 */

namespace vhcert {

/// Sup-norm ceiling; iterates or states beyond this are reported as divergent.
inline constexpr double divergence_guard = 1e6;

enum class SolveStatus { Converged, IterationLimit, Diverged };

namespace detail {

template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double t, double dt, const State& y) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1);
    const State k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2);
    const State k4 = rhs(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// I_k ~ integral of e^{-a(t_k - s)} w(s) ds over [0, t_k] for samples w_k,
/// via the O(n) recursion above.  Error O(dt^2), unconditionally stable for
/// a > 0.
inline std::vector<Complex> convolve_exp(double a, std::span<const Complex> w, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("convolve_exp: delta must be > 0");
    std::vector<Complex> out(w.size(), Complex{0.0});
    if (w.empty()) return out;
    const double decay = std::exp(-a * delta);
    const double half = 0.5 * delta;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        out[k + 1] = decay * out[k] + half * (decay * w[k] + w[k + 1]);
    return out;
}

/// One application of the integral operator:
/// (Tu)(t_k) = convolve_exp over h(u(t_j)) + f(t_k).
inline Trajectory apply_operator(const Problem& p, const Trajectory& u) {
    std::vector<Complex> w(u.values.size());
    for (std::size_t k = 0; k < u.values.size(); ++k) w[k] = eval_h(p.nonlinearity, u.values[k]);
    std::vector<Complex> integral = convolve_exp(p.kernel_rate, w, u.grid.delta());
    Trajectory out{u.grid, std::move(integral)};
    for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] += eval_f(p.forcing, u.grid.node(k));
    return out;
}

struct PicardResult {
    Trajectory solution;
    SolveStatus status = SolveStatus::IterationLimit;
    std::size_t iterations = 0;   ///< sweeps performed
    double final_delta = 0.0;     ///< last sup-norm successive difference
    std::vector<double> deltas;   ///< sup |u^{m+1} - u^m| per sweep
};

/// Fixed-point iteration starting from u^0 = f sampled on the grid.  Stops
/// when the sup-norm difference between sweeps drops to tol; non-convergence
/// after max_iter sweeps and divergence past the guard are reported as
/// distinct outcomes, never silently.
inline PicardResult solve_picard(const Problem& p, const Grid& g, double tol = 1e-12,
                                 std::size_t max_iter = 200) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_picard: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("solve_picard: max_iter must be >= 1");

    Trajectory u{g, std::vector<Complex>(g.size())};
    for (std::size_t k = 0; k < g.size(); ++k) u.values[k] = eval_f(p.forcing, g.node(k));

    PicardResult result{std::move(u), SolveStatus::IterationLimit, 0, 0.0, {}};
    for (std::size_t m = 1; m <= max_iter; ++m) {
        Trajectory next = apply_operator(p, result.solution);
        const double delta = sup_distance(next, result.solution);
        result.solution = std::move(next);
        result.iterations = m;
        result.final_delta = delta;
        result.deltas.push_back(delta);

        const double sup = result.solution.sup_modulus();
        if (!std::isfinite(sup) || sup > divergence_guard) {
            result.status = SolveStatus::Diverged;
            return result;
        }
        if (delta <= tol) {
            result.status = SolveStatus::Converged;
            return result;
        }
    }
    return result;
}

struct OdeResult {
    Trajectory solution;
    SolveStatus status = SolveStatus::Converged;
    std::optional<std::size_t> diverged_at;  ///< first node past the guard
};

/// RK4 on u' = -a u + h(u) + F(t), u(0) = f(0).  Nodes past a divergence are
/// filled with NaN.
inline OdeResult solve_ode(const Problem& p, const Grid& g) {
    Trajectory u{g, std::vector<Complex>(g.size())};
    u.values[0] = eval_f(p.forcing, 0.0);

    const auto rhs = [&p](double t, Complex y) {
        return -p.kernel_rate * y + eval_h(p.nonlinearity, y) + eval_F(p, t);
    };
    const double dt = g.delta();
    for (std::size_t k = 0; k < g.steps(); ++k) {
        const Complex next = detail::rk4_step(rhs, g.node(k), dt, u.values[k]);
        const double mag = std::abs(next);
        if (!std::isfinite(mag) || mag > divergence_guard) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t j = k + 1; j < g.size(); ++j) u.values[j] = Complex{nan, nan};
            return {std::move(u), SolveStatus::Diverged, k + 1};
        }
        u.values[k + 1] = next;
    }
    return {std::move(u), SolveStatus::Converged, std::nullopt};
}

/// Check |u(t_k)| R e^{p t_k} <= 1 + slack at every node against a passing
/// certificate.
inline BoundReport verify_bound(const Trajectory& u, const Certificate& cert,
                                double slack = 1e-6) {
    if (!cert.overall) throw std::invalid_argument("verify_bound: certificate does not pass");
    BoundReport report{0.0, std::nullopt, slack};
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double ratio = std::abs(u.values[k]) * cert.R * std::exp(cert.p * u.grid.node(k));
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (!report.violated_at && ratio > 1.0 + slack) report.violated_at = k;
    }
    return report;
}

}  // namespace vhcert
