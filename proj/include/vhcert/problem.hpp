#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

/*
 * Problem definition for the integral equation
 *
 *                / t
 *     u(t)  =    |   e^{-a(t-s)} h(u(s)) ds  +  f(t),      t >= 0,  a > 0,
 *                / 0
 *
 * restricted to closed-form families of h and f so that the growth envelopes
 *
 *     |h(u)|           <= c_h |u|^b
 *     |f(t)| + a|f'(t)| <= c_f e^{-a1 t}
 *     |F(t)|           <= c_F e^{-a1 t},     F := f' + a f,
 *
 * hold with *exact* (tight) constants.  The certificate machinery in
 * certify.hpp is only meaningful when these envelopes are not overestimates.
 */

namespace vhcert {

using Complex = std::complex<double>;

/// Closed-form nonlinearity families.  All satisfy h(0) = 0 and
/// |h(u)| = |lambda| * |u|^b for every complex u.
enum class NonlinearityFamily {
    Zero,          ///< h(u) = 0
    Linear,        ///< h(u) = lambda * u                 (b = 1)
    IntegerPower,  ///< h(u) = lambda * u^b,              integer b >= 2
    ModulusPower,  ///< h(u) = lambda * u * |u|^(b-1),    real b >= 1
};

struct Nonlinearity {
    NonlinearityFamily family = NonlinearityFamily::Zero;
    Complex lambda{0.0, 0.0};  ///< coefficient
    double exponent = 1.0;     ///< growth exponent b

    static Nonlinearity zero() { return {NonlinearityFamily::Zero, Complex{0.0}, 1.0}; }

    static Nonlinearity linear(Complex lambda) {
        return {NonlinearityFamily::Linear, lambda, 1.0};
    }

    static Nonlinearity integer_power(Complex lambda, int b) {
        if (b < 2) throw std::invalid_argument("integer_power: exponent must be an integer >= 2");
        return {NonlinearityFamily::IntegerPower, lambda, static_cast<double>(b)};
    }

    static Nonlinearity modulus_power(Complex lambda, double b) {
        if (!(b >= 1.0)) throw std::invalid_argument("modulus_power: exponent must be >= 1");
        return {NonlinearityFamily::ModulusPower, lambda, b};
    }
};

/// Evaluate h(u).  Integer powers use repeated multiplication; the modulus
/// family is well defined for every complex u and real b >= 1.
inline Complex eval_h(const Nonlinearity& nl, Complex u) {
    switch (nl.family) {
        case NonlinearityFamily::Zero:
            return Complex{0.0};
        case NonlinearityFamily::Linear:
            return nl.lambda * u;
        case NonlinearityFamily::IntegerPower: {
            const int b = static_cast<int>(nl.exponent);
            Complex power{1.0};
            for (int i = 0; i < b; ++i) power *= u;
            return nl.lambda * power;
        }
        case NonlinearityFamily::ModulusPower:
            return nl.lambda * u * std::pow(std::abs(u), nl.exponent - 1.0);
    }
    return Complex{0.0};
}

/// Forcing family f(t) = A e^{-a1 t}.  Derivatives are analytic; nothing in
/// the library differentiates f numerically.
enum class ForcingFamily { ExpDecay };

struct Forcing {
    ForcingFamily family = ForcingFamily::ExpDecay;
    Complex amplitude{0.0};  ///< A
    double rate = 1.0;       ///< a1 > 0

    static Forcing exp_decay(Complex amplitude, double rate) {
        if (!(rate > 0.0)) throw std::invalid_argument("exp_decay: rate must be > 0");
        return {ForcingFamily::ExpDecay, amplitude, rate};
    }
};

inline Complex eval_f(const Forcing& fc, double t) {
    return fc.amplitude * std::exp(-fc.rate * t);
}

inline Complex eval_f_prime(const Forcing& fc, double t) {
    return -fc.rate * fc.amplitude * std::exp(-fc.rate * t);
}

/// A full equation instance.
struct Problem {
    double kernel_rate = 1.0;  ///< a > 0 in the kernel e^{-a(t-s)}
    Nonlinearity nonlinearity;
    Forcing forcing;

    static Problem make(double kernel_rate, Nonlinearity nl, Forcing fc) {
        if (!(kernel_rate > 0.0)) throw std::invalid_argument("Problem: kernel rate must be > 0");
        return {kernel_rate, nl, fc};
    }
};

/// F(t) = f'(t) + a f(t), the effective drive of the reduced ODE
/// u' = -a u + h(u) + F.
inline Complex eval_F(const Problem& p, double t) {
    return eval_f_prime(p.forcing, t) + p.kernel_rate * eval_f(p.forcing, t);
}

/// Tight envelope constants for the builtin families:
///   c_h = |lambda|,  c_f = |A| (1 + a*a1),  c_F = |A| |a - a1|.
struct EnvelopeConstants {
    double c_h;  ///< |h(u)|            <= c_h |u|^b
    double c_f;  ///< |f| + a|f'|       <= c_f e^{-a1 t}
    double c_F;  ///< |f' + a f|        <= c_F e^{-a1 t}
};

inline EnvelopeConstants envelope_constants(const Problem& p) {
    const double amp = std::abs(p.forcing.amplitude);
    return {
        std::abs(p.nonlinearity.lambda),
        amp * (1.0 + p.kernel_rate * p.forcing.rate),
        amp * std::abs(p.kernel_rate - p.forcing.rate),
    };
}

}  // namespace vhcert
