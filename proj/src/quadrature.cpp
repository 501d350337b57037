#include "wscov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wscov {

Quadrature::Quadrature(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.empty() || nodes_.size() != weights_.size()) {
        throw std::invalid_argument("Quadrature: nodes and weights must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("Quadrature: weights must be positive");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("Quadrature: weights sum to " + std::to_string(total) + ", expected 1");
    }
}

double Quadrature::mean() const {
    return std::transform_reduce(nodes_.begin(), nodes_.end(), weights_.begin(), 0.0);
}

double Quadrature::max_node() const {
    return *std::max_element(nodes_.begin(), nodes_.end());
}

double Quadrature::mass_at_zero() const {
    double mass = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == 0.0) mass += weights_[i];
    }
    return mass;
}

Quadrature Quadrature::scaled(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument("Quadrature::scaled: factor must be positive");
    std::vector<double> nodes(nodes_);
    for (double& x : nodes) x *= s;
    return Quadrature(std::move(nodes), weights_);
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t half = (n + 1) / 2;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double dk = static_cast<double>(k);
            const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
            p0 = p1;
            p1 = p2;
        }
        dp = dn * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

Quadrature gauss_legendre_probability(std::size_t n, double lo, double hi) {
    if (n == 0) throw std::invalid_argument("gauss_legendre_probability: n_nodes must be >= 1");
    std::vector<double> t;
    std::vector<double> w;
    gauss_legendre(n, t, w);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = mid + half * t[i];
        w[i] *= 0.5;
    }
    return Quadrature(std::move(t), std::move(w));
}

}  // namespace wscov
