#pragma once

// Fixed-point solver for the limiting Stieltjes transform of a weighted
// sample covariance B = (1/N) T^{1/2} Z W Z^* T^{1/2}.
//
// For z in the upper half-plane the companion transform tm(z) is the unique
// root with Im tm <= 0 of
//
//   tm = G(tm) = int delta / (1 + delta c Theta(tm, z)) dD(delta),
//   Theta(tm, z) = int tau / (tau tm - z) dH(tau),
//
// and the Stieltjes transform of the limit law is
//
//   m(z) = int 1 / (tau tm - z) dH(tau).

#include <complex>
#include <cstddef>
#include <optional>

#include "wscov/laws.hpp"
#include "wscov/quadrature.hpp"

namespace wscov {

using cplx = std::complex<double>;

/// Point of the open upper half-plane.
class EvalPoint {
public:
    /// Throws std::invalid_argument unless Im z > 0.
    explicit EvalPoint(cplx z);
    EvalPoint(double re, double im) : EvalPoint(cplx{re, im}) {}

    cplx z() const noexcept { return z_; }

private:
    cplx z_;
};

struct SolverConfig {
    double tol = 1e-12;
    std::size_t max_iter = 100000;
    double damping = 0.5;
    std::optional<cplx> init;
    /// Try a Newton step on tm - G(tm) before each damped step and keep it
    /// when it lands in Im <= 0 with a smaller residual. Without it the
    /// iteration is plain damped Picard, which crawls near support edges.
    bool newton = true;

    /// Throws std::invalid_argument on tol <= 0 or damping outside (0, 1].
    void validate() const;
};

struct StieltjesSolution {
    cplx tilde_m;
    cplx m;
    cplx theta1;
    double residual;
    std::size_t iterations;
};

/// Discretized (H, D, c). Continuous laws are replaced by n_nodes-point
/// Gauss-Legendre rules; atomic laws are exact.
class SpectralModel {
public:
    static constexpr std::size_t kDefaultNodes = 128;

    SpectralModel(Quadrature population, Quadrature weights, double c);
    SpectralModel(const SpectralLaw& H, const WeightLaw& D, double c, std::size_t n_nodes = kDefaultNodes);

    const Quadrature& population() const noexcept { return population_; }
    const Quadrature& weights() const noexcept { return weights_; }
    double c() const noexcept { return c_; }

    double weight_mean() const noexcept { return weight_mean_; }

private:
    Quadrature population_;
    Quadrature weights_;
    double c_;
    double weight_mean_;
};

/// int tau / (tau tm - z) dH(tau).
cplx theta1(const Quadrature& H, cplx tilde_m, const EvalPoint& z);
cplx theta1(const SpectralLaw& H, cplx tilde_m, const EvalPoint& z);

/// int 1 / (tau tm - z) dH(tau). With tm = 1 this is the Stieltjes transform of H.
cplx m_from(const Quadrature& H, cplx tilde_m, const EvalPoint& z);
cplx m_from(const SpectralLaw& H, cplx tilde_m, const EvalPoint& z);

/// G(tm). Throws DegenerateEvaluationError if |1 + delta c Theta| < 1e-300 at
/// some node.
cplx fixed_point_map(const SpectralModel& model, cplx tilde_m, const EvalPoint& z);
cplx fixed_point_map(const SpectralLaw& H, const WeightLaw& D, double c, cplx tilde_m, const EvalPoint& z);

/// Damped Picard iteration tm <- (1 - lambda) tm + lambda G(tm), started at
/// cfg.init or mean(D), stopped once |tm - G(tm)| <= cfg.tol. The damping is
/// halved (down to 1/64) whenever the best residual has not improved for 50
/// consecutive steps. With cfg.newton a guarded Newton step is preferred
/// whenever it reduces the residual. Throws NonConvergenceError after
/// cfg.max_iter steps.
StieltjesSolution solve(const SpectralModel& model, const EvalPoint& z, const SolverConfig& cfg = {});
StieltjesSolution solve(const SpectralLaw& H, const WeightLaw& D, double c, const EvalPoint& z,
                        const SolverConfig& cfg = {});

/// Stieltjes transform of the companion law: -(1 - c) / z + c m.
cplx underline_m_from(cplx m, double c, const EvalPoint& z);

}  // namespace wscov
