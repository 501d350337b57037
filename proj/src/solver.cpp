#include "wscov/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wscov/errors.hpp"
#include "wscov/kernels.hpp"

namespace wscov {

namespace {

constexpr std::size_t kStallWindow = 50;
constexpr double kMinDamping = 1.0 / 64.0;
constexpr double kPoleThreshold = 1e-300;

struct MapValue {
    cplx value;
    cplx slope;  // G'(tm)
};

MapValue evaluate_map(const SpectralModel& model, cplx tilde_m, cplx z) {
    const Quadrature& H = model.population();
    const Quadrature& D = model.weights();
    const kernels::ResolventSums rs = kernels::resolvent_sums(H.nodes(), H.weights(), tilde_m, z);
    const kernels::WeightSum ws = kernels::weight_sum(D.nodes(), D.weights(), model.c() * rs.weighted);
    if (std::sqrt(ws.min_denominator_sq) < kPoleThreshold) {
        std::ostringstream os;
        os << "fixed_point_map: pole 1 + delta c Theta = 0 at z = " << z << ", tilde_m = " << tilde_m;
        throw DegenerateEvaluationError(os.str());
    }
    // dTheta/dtm = -sum w tau^2 / (tau tm - z)^2, so G' = c (sum ...) (sum ...).
    return {ws.value, model.c() * rs.weighted_sq * ws.derivative};
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

EvalPoint::EvalPoint(cplx z) : z_(z) {
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("EvalPoint: Im z must be > 0");
    }
}

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("SolverConfig: damping must lie in (0,1]");
}

SpectralModel::SpectralModel(Quadrature population, Quadrature weights, double c)
    : population_(std::move(population)), weights_(std::move(weights)), c_(c), weight_mean_(weights_.mean()) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("SpectralModel: c must be > 0");
}

SpectralModel::SpectralModel(const SpectralLaw& H, const WeightLaw& D, double c, std::size_t n_nodes)
    : SpectralModel(quadrature(H, n_nodes), quadrature(D, n_nodes), c) {}

cplx theta1(const Quadrature& H, cplx tilde_m, const EvalPoint& z) {
    return kernels::resolvent_sums(H.nodes(), H.weights(), tilde_m, z.z()).weighted;
}

cplx theta1(const SpectralLaw& H, cplx tilde_m, const EvalPoint& z) { return theta1(quadrature(H, 1), tilde_m, z); }

cplx m_from(const Quadrature& H, cplx tilde_m, const EvalPoint& z) {
    return kernels::resolvent_sums(H.nodes(), H.weights(), tilde_m, z.z()).plain;
}

cplx m_from(const SpectralLaw& H, cplx tilde_m, const EvalPoint& z) { return m_from(quadrature(H, 1), tilde_m, z); }

cplx fixed_point_map(const SpectralModel& model, cplx tilde_m, const EvalPoint& z) {
    return evaluate_map(model, tilde_m, z.z()).value;
}

cplx fixed_point_map(const SpectralLaw& H, const WeightLaw& D, double c, cplx tilde_m, const EvalPoint& z) {
    return fixed_point_map(SpectralModel(H, D, c), tilde_m, z);
}

StieltjesSolution solve(const SpectralModel& model, const EvalPoint& point, const SolverConfig& cfg) {
    cfg.validate();
    const cplx z = point.z();
    cplx tm = cfg.init.value_or(cplx{model.weight_mean(), 0.0});
    double lambda = cfg.damping;

    cplx best = tm;
    double best_residual = std::numeric_limits<double>::infinity();
    std::size_t since_improvement = 0;

    MapValue g = evaluate_map(model, tm, z);
    for (std::size_t it = 0; it <= cfg.max_iter; ++it) {
        const double residual = std::abs(tm - g.value);
        if (residual <= cfg.tol) {
            const auto sums = kernels::resolvent_sums(model.population().nodes(), model.population().weights(), tm, z);
            return {tm, sums.plain, sums.weighted, residual, it};
        }
        if (residual < best_residual) {
            best_residual = residual;
            best = tm;
            since_improvement = 0;
        } else if (++since_improvement >= kStallWindow) {
            lambda = std::max(lambda * 0.5, kMinDamping);
            since_improvement = 0;
        }
        if (it == cfg.max_iter) break;

        if (cfg.newton) {
            const cplx candidate = tm - (tm - g.value) / (1.0 - g.slope);
            if (finite(candidate) && candidate.imag() <= 0.0) {
                const MapValue gc = evaluate_map(model, candidate, z);
                if (finite(gc.value) && std::abs(candidate - gc.value) < residual) {
                    tm = candidate;
                    g = gc;
                    continue;
                }
            }
        }
        tm = (1.0 - lambda) * tm + lambda * g.value;
        if (!finite(tm)) break;
        g = evaluate_map(model, tm, z);
    }

    std::ostringstream os;
    os << "solve: no convergence at z = " << z << " after " << cfg.max_iter << " iterations (best residual "
       << best_residual << ")";
    throw NonConvergenceError(os.str(), best, best_residual);
}

StieltjesSolution solve(const SpectralLaw& H, const WeightLaw& D, double c, const EvalPoint& z,
                        const SolverConfig& cfg) {
    return solve(SpectralModel(H, D, c), z, cfg);
}

cplx underline_m_from(cplx m, double c, const EvalPoint& z) { return -(1.0 - c) / z.z() + c * m; }

}  // namespace wscov
