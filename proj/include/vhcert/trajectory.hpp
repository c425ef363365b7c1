#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vhcert/problem.hpp"

namespace vhcert {

/// Uniform grid t_k = k * (T/n), k = 0..n.
class Grid {
public:
    Grid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
        if (!(horizon > 0.0)) throw std::invalid_argument("Grid: horizon must be > 0");
        if (steps < 1) throw std::invalid_argument("Grid: need at least one step");
    }

    double horizon() const { return horizon_; }
    std::size_t steps() const { return steps_; }
    double delta() const { return horizon_ / static_cast<double>(steps_); }
    std::size_t size() const { return steps_ + 1; }  ///< number of nodes

    /// k-th node; the last node is pinned to the horizon exactly.
    double node(std::size_t k) const {
        return k == steps_ ? horizon_ : static_cast<double>(k) * delta();
    }

private:
    double horizon_;
    std::size_t steps_;
};

/// Sampled solution u(t_k) on a grid.
struct Trajectory {
    Grid grid;
    std::vector<Complex> values;

    std::vector<double> moduli() const {
        std::vector<double> out(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::abs(values[k]);
        return out;
    }

    double sup_modulus() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

/// sup_k |a_k - b_k| over two trajectories on the same grid.
inline double sup_distance(const Trajectory& a, const Trajectory& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("sup_distance: size mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

/// Pointwise comparison of a trajectory against a decay envelope:
/// max_ratio = max_k of the checked ratio (|u_k| R e^{p t_k} in verify_bound,
/// g_k mu(t_k) in compare_to_envelope).  The bound holds iff
/// max_ratio <= 1 + slack.
struct BoundReport {
    double max_ratio = 0.0;
    std::optional<std::size_t> violated_at;  ///< first offending node
    double slack = 0.0;

    bool holds() const { return max_ratio <= 1.0 + slack; }
};

}  // namespace vhcert
