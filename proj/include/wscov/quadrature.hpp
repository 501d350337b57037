#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wscov {

/// Discrete probability measure sum_i w_i delta_{x_i}. Used both for exact
/// atomic laws and for Gauss-Legendre discretizations of continuous ones.
/// Nodes and weights are kept as separate arrays for the vector kernels.
class Quadrature {
public:
    /// Throws std::invalid_argument on size mismatch, empty input, a
    /// non-positive weight or weights not summing to 1 within 1e-10.
    Quadrature(std::vector<double> nodes, std::vector<double> weights);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    double mean() const;
    double max_node() const;
    /// Total weight on nodes equal to zero.
    double mass_at_zero() const;

    /// Pushforward under x -> s x, s > 0.
    Quadrature scaled(double s) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Legendre rule on [lo, hi] normalized to total weight one.
Quadrature gauss_legendre_probability(std::size_t n, double lo, double hi);

}  // namespace wscov
