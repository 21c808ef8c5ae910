#pragma once

// Discrete measures for the weighted-integral layer: node/weight lists with
// strictly positive weights, composite Simpson and trapezoid constructors on
// uniform grids, and the weighted sum realizing the integral of phi * values.
//
// Any positive node/weight list is a legitimate discrete measure, so none of
// the inequalities downstream depend on quadrature accuracy; accuracy only
// matters when comparing against continuum closed forms.
//
// Reductions use pairwise summation so results are independent of how work
// might be partitioned.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "twoip/core.hpp"

namespace twoip {

/// Deterministic pairwise (recursive halving) summation.
inline double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// Finite discrete measure: nodes with strictly positive weights.
class QuadratureGrid {
public:
    QuadratureGrid(std::vector<double> nodes, std::vector<double> weights)
        : nodes_(std::move(nodes)), weights_(std::move(weights)) {
        if (nodes_.size() != weights_.size())
            throw invalid_dimension("QuadratureGrid: nodes and weights differ in length");
        if (nodes_.size() < 2)
            throw invalid_dimension("QuadratureGrid: need at least 2 nodes");
        for (double x : nodes_) require_finite(x, "QuadratureGrid node");
        for (double w : weights_) {
            require_finite(w, "QuadratureGrid weight");
            if (!(w > 0.0))
                throw invalid_input("QuadratureGrid: weights must be positive");
        }
    }

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Composite Simpson rule on [a, b] with an odd number of nodes (>= 3).
inline QuadratureGrid simpson_grid(double a, double b, std::size_t n_nodes) {
    if (n_nodes < 3 || n_nodes % 2 == 0)
        throw invalid_input("simpson_grid: need an odd node count >= 3");
    require_finite(a, "simpson_grid");
    require_finite(b, "simpson_grid");
    if (!(b > a)) throw invalid_input("simpson_grid: need b > a");

    const double h = (b - a) / static_cast<double>(n_nodes - 1);
    std::vector<double> nodes(n_nodes), weights(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes[i] = a + h * static_cast<double>(i);
        const bool endpoint = i == 0 || i + 1 == n_nodes;
        weights[i] = h / 3.0 * (endpoint ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
    }
    return QuadratureGrid(std::move(nodes), std::move(weights));
}

/// Composite trapezoid rule on [a, b] with n_nodes >= 2.
inline QuadratureGrid trapezoid_grid(double a, double b, std::size_t n_nodes) {
    if (n_nodes < 2) throw invalid_input("trapezoid_grid: need at least 2 nodes");
    require_finite(a, "trapezoid_grid");
    require_finite(b, "trapezoid_grid");
    if (!(b > a)) throw invalid_input("trapezoid_grid: need b > a");

    const double h = (b - a) / static_cast<double>(n_nodes - 1);
    std::vector<double> nodes(n_nodes), weights(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        nodes[i] = a + h * static_cast<double>(i);
        weights[i] = (i == 0 || i + 1 == n_nodes) ? 0.5 * h : h;
    }
    return QuadratureGrid(std::move(nodes), std::move(weights));
}

/// Discrete realization of the weighted integral: sum_i w_i phi_i values_i.
inline double quad_integral(std::span<const double> values, const QuadratureGrid& grid,
                            std::span<const double> phi) {
    if (values.size() != grid.size() || phi.size() != grid.size())
        throw invalid_dimension("quad_integral: length mismatch (values " +
                                std::to_string(values.size()) + ", phi " +
                                std::to_string(phi.size()) + ", grid " +
                                std::to_string(grid.size()) + ")");
    std::vector<double> terms(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require_finite(values[i], "quad_integral value");
        terms[i] = grid.weights()[i] * phi[i] * values[i];
    }
    return pairwise_sum(terms);
}

}  // namespace twoip
