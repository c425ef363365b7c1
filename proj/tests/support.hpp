#pragma once

// Shared test helpers: independent oracles (brute-force quadrature, closed
// forms) and a generator of certificate-passing random problems.  Everything
// here is deliberately independent of the solver implementation paths it is
// used to check.

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "vhcert/vhcert.hpp"

namespace testsupport {

using vhcert::Complex;

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

/// O(n^2) direct evaluation of the exponential-kernel trapezoid quadrature:
/// each node's integral is summed panel by panel with explicitly evaluated
/// kernel factors.  Oracle for the O(n) recursion.
inline std::vector<Complex> convolve_exp_direct(double a, const std::vector<Complex>& w,
                                                double delta) {
    std::vector<Complex> out(w.size(), Complex{0.0});
    for (std::size_t k = 1; k < w.size(); ++k) {
        Complex acc{0.0};
        const double tk = static_cast<double>(k) * delta;
        for (std::size_t j = 0; j < k; ++j) {
            const double sj = static_cast<double>(j) * delta;
            const double sj1 = static_cast<double>(j + 1) * delta;
            acc += 0.5 * delta *
                   (std::exp(-a * (tk - sj)) * w[j] + std::exp(-a * (tk - sj1)) * w[j + 1]);
        }
        out[k] = acc;
    }
    return out;
}

/// Closed-form solution for the linear nonlinearity h(u) = lambda u:
/// u' = -(a - lambda) u + F,  u(0) = A,  F(t) = A (a - a1) e^{-a1 t}.
/// Valid when a - lambda - a1 != 0.
inline Complex linear_solution(double a, Complex lambda, Complex A, double a1, double t) {
    const Complex r = Complex{a} - lambda;  // homogeneous decay rate
    const Complex denom = r - Complex{a1};
    const Complex e_h = std::exp(-r * t);
    const Complex e_f = std::exp(Complex{-a1 * t});
    return A * e_h + A * (a - a1) * (e_f - e_h) / denom;
}

/// The worked instance used throughout: a=2, h = -0.5 u^2, f = 0.1 e^{-t}.
inline vhcert::Problem worked_problem() {
    return vhcert::Problem::make(2.0, vhcert::Nonlinearity::integer_power(Complex{-0.5}, 2),
                                 vhcert::Forcing::exp_decay(Complex{0.1}, 1.0));
}

/// Draw a random problem whose certificate passes: a in [2,6], b in {2,3,4},
/// envelope constants scaled inside the feasible region of the full
/// condition chain.
template <class URBG>
vhcert::Problem sample_certified_problem(URBG& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick_b(2, 4);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double a = 2.0 + 4.0 * unit(rng);
        const int b = pick_b(rng);
        const double bd = static_cast<double>(b);
        const double a1 = 0.4 + 2.6 * unit(rng);
        const double R = vhcert::radius(bd);
        const double p = vhcert::decay_rate(a, a1, 0.02);

        // growth: c_h <= 3 a (b-1)^{(b-1)/b} / (4 b); stay well inside
        const double ch_cap = 3.0 * a * std::pow(bd - 1.0, (bd - 1.0) / bd) / (4.0 * bd);
        const double c_h = (0.05 + 0.8 * unit(rng)) * ch_cap;
        const Complex lambda = std::polar(c_h, 2.0 * M_PI * unit(rng));

        // amplitude caps from the initial, self-map and direct conditions
        const double cap_initial = 1.0 / R;
        const double self_room = 1.0 / R - c_h / (a * std::pow(R, bd));
        const double cap_self = self_room / (1.0 + a * a1);
        const double direct_room = (a - p) - c_h / std::pow(R, bd - 1.0);
        const double cap_direct = std::abs(a - a1) > 1e-12
                                      ? direct_room / (std::abs(a - a1) * R)
                                      : std::numeric_limits<double>::infinity();
        const double cap = std::min({cap_initial, cap_self, cap_direct});
        if (!(cap > 0.0)) continue;
        const double amp = (0.05 + 0.75 * unit(rng)) * cap;
        const Complex A = std::polar(amp, 2.0 * M_PI * unit(rng));

        vhcert::Nonlinearity nl = unit(rng) < 0.5
                                      ? vhcert::Nonlinearity::integer_power(lambda, b)
                                      : vhcert::Nonlinearity::modulus_power(lambda, bd);
        vhcert::Problem prob = vhcert::Problem::make(a, nl, vhcert::Forcing::exp_decay(A, a1));
        if (vhcert::certify(prob).overall) return prob;
    }
    throw std::runtime_error("sample_certified_problem: no passing sample in 64 attempts");
}

}  // namespace testsupport
