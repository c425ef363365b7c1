#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vhcert/problem.hpp"

/*
 * Sufficient conditions for global existence of solutions and for the
 * exponential decay bound
 *
 *     |u(t)| <= e^{-p t} / R,        R = (b-1)^{1/b},
 *
 * checked mechanically from the problem's envelope constants.  The chain:
 *
 *   growth       b/(b-1)^{(b-1)/b} <= 3a/(4 c_h)
 *                (the R-optimal form of  1/R^{b-1} + R <= 3a/(4 c_h))
 *   direct       c_h/R^{b-1} + c_F R <= a - p
 *                (the decay-envelope admissibility condition at t = 0,
 *                 which dominates all t >= 0 when p < a1 and b >= 2)
 *   initial      |f(0)| R <= 1
 *   exponent     b^b <= 2^b (b-1)^{b-1}, evaluated in log form
 *   self_map     c_f + c_h/(a R^b) <= 1/R
 *                (the fixed-point operator maps the ball ||u|| <= 1/R
 *                 into itself)
 *   contraction  q := c_h/(R^{b-1} a) < 1
 *
 * p is chosen strictly inside (0, min(a/4, a1)) via a safety margin.
 */

namespace vhcert {

enum class Condition { Growth, Direct, Initial, Exponent, SelfMap, Contraction };

inline const char* condition_name(Condition c) {
    switch (c) {
        case Condition::Growth: return "growth";
        case Condition::Direct: return "direct";
        case Condition::Initial: return "initial";
        case Condition::Exponent: return "exponent";
        case Condition::SelfMap: return "self_map";
        case Condition::Contraction: return "contraction";
    }
    return "?";
}

/// One verified inequality: pass <=> (lhs < rhs if strict else lhs <= rhs).
struct ConditionCheck {
    Condition name;
    double lhs;
    double rhs;
    bool strict;
    bool pass;
};

inline ConditionCheck make_check(Condition name, double lhs, double rhs, bool strict) {
    return {name, lhs, rhs, strict, strict ? lhs < rhs : lhs <= rhs};
}

/// Informational (non-gating) inequality, reported alongside the ledger.
struct InfoCheck {
    std::string label;
    double lhs;
    double rhs;
    bool strict;
    bool pass;
};

/// R = (b-1)^{1/b}, the minimizer of R |-> 1/R^{b-1} + R over R > 0.
inline double radius(double b) {
    if (!(b >= 2.0)) throw std::invalid_argument("radius: exponent must be >= 2");
    return std::pow(b - 1.0, 1.0 / b);
}

/// Certified decay rate p = (1 - margin) * min(a/4, a1).  margin = 0 yields
/// the (excluded) boundary of the admissible open interval.
inline double decay_rate(double a, double a1, double margin = 0.02) {
    return (1.0 - margin) * std::min(0.25 * a, a1);
}

inline ConditionCheck check_growth(double a, double b, double c_h) {
    const double lhs = b / std::pow(b - 1.0, (b - 1.0) / b);
    const double rhs = 3.0 * a / (4.0 * c_h);
    return make_check(Condition::Growth, lhs, rhs, false);
}

/// Decay-envelope admissibility at t = 0.  Requires p < a1 so that the
/// forcing term of the left side decays; both left-side terms then decay
/// while the right side is constant, so t = 0 is the worst case.
inline ConditionCheck check_direct(double a, double b, double c_h, double c_F, double R, double p,
                                   double a1) {
    if (!(p < a1)) throw std::invalid_argument("check_direct: requires p < a1");
    const double lhs = c_h / std::pow(R, b - 1.0) + c_F * R;
    return make_check(Condition::Direct, lhs, a - p, false);
}

/// b^b <= 2^b (b-1)^{b-1} in log form (b log b <= b log 2 + (b-1) log(b-1)).
/// Holds for every b >= 2, with equality at b = 2.
inline ConditionCheck check_exponent(double b) {
    const double lhs = b * std::log(b);
    const double rhs = b * std::log(2.0) + (b - 1.0) * std::log(b - 1.0);
    return make_check(Condition::Exponent, lhs, rhs, false);
}

inline ConditionCheck check_initial(double f0_abs, double R) {
    return make_check(Condition::Initial, f0_abs * R, 1.0, false);
}

struct ContractionChecks {
    ConditionCheck contraction;  ///< q < 1 (strict)
    ConditionCheck self_map;     ///< c_f + c_h/(a R^b) <= 1/R
    double q;                    ///< contraction factor c_h/(R^{b-1} a)
};

inline ContractionChecks check_contraction(double a, double b, double c_h, double c_f, double R) {
    const double q = c_h / (std::pow(R, b - 1.0) * a);
    ContractionChecks out{
        make_check(Condition::Contraction, q, 1.0, true),
        make_check(Condition::SelfMap, c_f + c_h / (a * std::pow(R, b)), 1.0 / R, false),
        q,
    };
    return out;
}

/// The verified output: decay envelope parameters plus the pass/fail ledger.
struct Certificate {
    bool hypothesis_ok = false;  ///< power-family nonlinearity with b >= 2
    std::string gate_reason;     ///< set when !hypothesis_ok
    double R = 0.0;              ///< envelope e^{-pt}/R; ball is ||u|| <= 1/R
    double p = 0.0;              ///< certified decay rate
    double q = 0.0;              ///< contraction factor of the fixed-point map
    std::vector<ConditionCheck> ledger;
    std::vector<InfoCheck> informational;
    bool overall = false;

    const ConditionCheck* find(Condition c) const {
        for (const auto& chk : ledger)
            if (chk.name == c) return &chk;
        return nullptr;
    }
};

/// Run the full condition chain.  Zero/Linear nonlinearities and modulus
/// powers with b < 2 fail the hypothesis gate (reported, not thrown).
inline Certificate certify(const Problem& prob, double margin = 0.02) {
    if (!(margin > 0.0 && margin < 1.0))
        throw std::invalid_argument("certify: margin must lie in (0, 1)");

    const auto& nl = prob.nonlinearity;
    const bool power_family = nl.family == NonlinearityFamily::IntegerPower ||
                              nl.family == NonlinearityFamily::ModulusPower;
    Certificate cert;
    if (!power_family || !(nl.exponent >= 2.0)) {
        cert.gate_reason = "hypothesis b >= 2 violated";
        return cert;
    }
    cert.hypothesis_ok = true;

    const double a = prob.kernel_rate;
    const double a1 = prob.forcing.rate;
    const double b = nl.exponent;
    const EnvelopeConstants env = envelope_constants(prob);
    const double f0_abs = std::abs(prob.forcing.amplitude);

    cert.R = radius(b);
    cert.p = decay_rate(a, a1, margin);

    cert.ledger.push_back(check_growth(a, b, env.c_h));
    cert.ledger.push_back(check_direct(a, b, env.c_h, env.c_F, cert.R, cert.p, a1));
    cert.ledger.push_back(check_initial(f0_abs, cert.R));
    cert.ledger.push_back(check_exponent(b));
    const ContractionChecks cc = check_contraction(a, b, env.c_h, env.c_f, cert.R);
    cert.ledger.push_back(cc.self_map);
    cert.ledger.push_back(cc.contraction);
    cert.q = cc.q;

    // Coarser single-constant forms, using c = max(c_h, c_f).  These are the
    // conditions one gets without splitting the envelope constants per role;
    // they are reported for reference and do not gate the certificate.
    const double c = std::max(env.c_h, env.c_f);
    cert.informational.push_back({"combined_envelope_below_0_75", c, 0.75, true, c < 0.75});
    cert.informational.push_back({"kernel_rate_at_least_2", 2.0, a, false, 2.0 <= a});
    const double self_map_rhs = 1.0 / (1.0 + 1.0 / (a * std::pow(cert.R, b)));
    cert.informational.push_back(
        {"combined_self_map", c * cert.R, self_map_rhs, false, c * cert.R <= self_map_rhs});

    cert.overall = true;
    for (const auto& chk : cert.ledger) cert.overall = cert.overall && chk.pass;
    return cert;
}

}  // namespace vhcert
