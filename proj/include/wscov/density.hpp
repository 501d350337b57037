#pragma once

// Stieltjes inversion of the limiting transform into a density curve, plus
// the quantities read off such a curve: support components, spectral gaps,
// cdf and low moments.

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "wscov/laws.hpp"
#include "wscov/solver.hpp"

namespace wscov {

/// Density of the limit law sampled on a grid at height epsilon above the
/// real axis. The atom at zero is carried separately in zero_atom and is
/// removed from fs.
struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> fs;
    double epsilon = 0.0;
    double zero_atom = 0.0;

    /// Companion transform at each grid point; empty for curves not produced
    /// by density_curve.
    std::vector<cplx> tilde_m;
    /// Model and solver settings the curve was computed from. Lets
    /// support_report re-evaluate the density when refining edges.
    std::shared_ptr<const SpectralModel> model;
    SolverConfig cfg;

    /// Trapezoid integral of fs plus zero_atom.
    double total_mass() const;
};

struct Interval {
    double lo;
    double hi;
};

struct SupportReport {
    std::vector<Interval> support_intervals;
    std::vector<Interval> gaps;
    double threshold = 0.0;
};

/// Mass of the limit law at zero from the rank of B:
/// 1 - min(1 - H({0}), (1 - D({0})) / c), clamped to [0, 1].
double zero_atom_mass(double population_zero_mass, double weight_zero_mass, double c);

/// Default inversion height and support threshold.
inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr double kDefaultThreshold = 1e-4;
inline constexpr std::size_t kDefaultGridPoints = 2000;

/// 2000 points on [0, 1.2 max(H) max(D) (1 + sqrt c)^2]. Falls back to [0, 1]
/// when that bound is zero.
std::vector<double> default_grid(const SpectralLaw& H, const WeightLaw& D, double c,
                                 std::size_t count = kDefaultGridPoints);

std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// fs[i] = Im(m(x_i + i eps) + zero_atom / (x_i + i eps)) / pi, clamped at 0.
/// Grid points are solved in order, each warm-started from its predecessor.
/// With threads > 1 the grid is split into contiguous chunks solved in
/// parallel, each chunk starting cold. Throws GridPointError on solver
/// failure.
DensityCurve density_curve(std::shared_ptr<const SpectralModel> model, const std::vector<double>& grid,
                           double epsilon = kDefaultEpsilon, const SolverConfig& cfg = {}, unsigned threads = 1);
DensityCurve density_curve(const SpectralLaw& H, const WeightLaw& D, double c, const std::vector<double>& grid,
                           double epsilon = kDefaultEpsilon, const SolverConfig& cfg = {}, unsigned threads = 1);

/// Support components are maximal runs of at least two grid points with
/// fs >= threshold. When the curve carries its model, each edge is refined
/// by bisection on fresh solves down to a hundredth of the local grid step.
SupportReport support_report(const DensityCurve& curve, double threshold = kDefaultThreshold);

/// Piecewise cdf of a density curve: zero_atom at 0 plus the running
/// trapezoid integral of fs.
class CdfTable {
public:
    explicit CdfTable(const DensityCurve& curve);

    double operator()(double x) const;
    double total() const noexcept { return total_; }
    const std::vector<double>& xs() const noexcept { return xs_; }

private:
    std::vector<double> xs_;
    std::vector<double> fs_;
    std::vector<double> cumulative_;
    double zero_atom_;
    double total_;
};

CdfTable cdf_curve(const DensityCurve& curve);

/// Trapezoid integral of x^k f(x), k in {1, 2}. The zero atom contributes
/// nothing. Throws std::invalid_argument for other k.
double moment(const DensityCurve& curve, int k);

}  // namespace wscov
