#include "wscov/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wscov/errors.hpp"

namespace wscov {

namespace {

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("density_curve: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) {
            throw std::invalid_argument("density_curve: grid abscissae must be finite and >= 0");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("density_curve: grid must be strictly increasing");
        }
    }
}

double model_zero_atom(const SpectralModel& model) {
    return zero_atom_mass(model.population().mass_at_zero(), model.weights().mass_at_zero(), model.c());
}

struct PointValue {
    double density;
    cplx tilde_m;
};

PointValue evaluate(const SpectralModel& model, double x, double epsilon, double zero_atom, SolverConfig cfg,
                    std::optional<cplx> warm) {
    cfg.init = warm;
    const cplx z{x, epsilon};
    try {
        const StieltjesSolution s = solve(model, EvalPoint(z), cfg);
        const double f = (s.m + zero_atom / z).imag() / std::numbers::pi;
        return {std::max(f, 0.0), s.tilde_m};
    } catch (const NonConvergenceError& e) {
        std::ostringstream os;
        os << "density: solver failed at x = " << x << ": " << e.what();
        throw GridPointError(os.str(), x);
    } catch (const DegenerateEvaluationError& e) {
        std::ostringstream os;
        os << "density: degenerate evaluation at x = " << x << ": " << e.what();
        throw GridPointError(os.str(), x);
    }
}

void solve_range(const SpectralModel& model, const std::vector<double>& grid, std::size_t begin, std::size_t end,
                 double epsilon, double zero_atom, const SolverConfig& cfg, DensityCurve& out) {
    std::optional<cplx> warm = cfg.init;
    for (std::size_t i = begin; i < end; ++i) {
        const PointValue v = evaluate(model, grid[i], epsilon, zero_atom, cfg, warm);
        out.fs[i] = v.density;
        out.tilde_m[i] = v.tilde_m;
        warm = v.tilde_m;
    }
}

// Bisect between an in-support abscissa and an out-of-support one.
double refine_edge(const DensityCurve& curve, double inside, double outside, cplx warm, double threshold) {
    const double width = std::abs(inside - outside) / 100.0;
    while (std::abs(inside - outside) > width) {
        const double mid = 0.5 * (inside + outside);
        const PointValue v = evaluate(*curve.model, mid, curve.epsilon, curve.zero_atom, curve.cfg, warm);
        if (v.density >= threshold) {
            inside = mid;
            warm = v.tilde_m;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

}  // namespace

double DensityCurve::total_mass() const {
    double mass = zero_atom;
    for (std::size_t i = 1; i < xs.size(); ++i) mass += 0.5 * (xs[i] - xs[i - 1]) * (fs[i] + fs[i - 1]);
    return mass;
}

double zero_atom_mass(double population_zero_mass, double weight_zero_mass, double c) {
    const double rank_fraction = std::min(1.0 - population_zero_mass, (1.0 - weight_zero_mass) / c);
    return std::clamp(1.0 - rank_fraction, 0.0, 1.0);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw std::invalid_argument("linear_grid: need count >= 2 and lo < hi");
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

std::vector<double> default_grid(const SpectralLaw& H, const WeightLaw& D, double c, std::size_t count) {
    const double s = 1.0 + std::sqrt(c);
    double hi = 1.2 * support_max(H) * support_max(D) * s * s;
    if (!(hi > 0.0)) hi = 1.0;
    return linear_grid(0.0, hi, count);
}

DensityCurve density_curve(std::shared_ptr<const SpectralModel> model, const std::vector<double>& grid,
                           double epsilon, const SolverConfig& cfg, unsigned threads) {
    if (!model) throw std::invalid_argument("density_curve: null model");
    if (!(epsilon > 0.0)) throw std::invalid_argument("density_curve: epsilon must be > 0");
    check_grid(grid);
    cfg.validate();

    DensityCurve curve;
    curve.xs = grid;
    curve.fs.assign(grid.size(), 0.0);
    curve.tilde_m.assign(grid.size(), cplx{});
    curve.epsilon = epsilon;
    curve.zero_atom = model_zero_atom(*model);
    curve.cfg = cfg;
    curve.cfg.init.reset();

    const std::size_t n = grid.size();
    const std::size_t chunks = std::clamp<std::size_t>(threads, 1, n);
    if (chunks == 1) {
        solve_range(*model, grid, 0, n, epsilon, curve.zero_atom, cfg, curve);
    } else {
        std::vector<std::exception_ptr> errors(chunks);
        {
            std::vector<std::jthread> workers;
            for (std::size_t k = 0; k < chunks; ++k) {
                const std::size_t begin = n * k / chunks;
                const std::size_t end = n * (k + 1) / chunks;
                workers.emplace_back([&, k, begin, end] {
                    try {
                        solve_range(*model, grid, begin, end, epsilon, curve.zero_atom, cfg, curve);
                    } catch (...) {
                        errors[k] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    curve.model = std::move(model);
    return curve;
}

DensityCurve density_curve(const SpectralLaw& H, const WeightLaw& D, double c, const std::vector<double>& grid,
                           double epsilon, const SolverConfig& cfg, unsigned threads) {
    return density_curve(std::make_shared<const SpectralModel>(H, D, c), grid, epsilon, cfg, threads);
}

SupportReport support_report(const DensityCurve& curve, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("support_report: threshold must be > 0");
    if (curve.xs.size() != curve.fs.size()) throw std::invalid_argument("support_report: malformed curve");

    SupportReport report;
    report.threshold = threshold;
    const std::size_t n = curve.xs.size();
    const bool can_refine = curve.model && curve.tilde_m.size() == n;

    std::size_t i = 0;
    while (i < n) {
        if (curve.fs[i] < threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && curve.fs[j + 1] >= threshold) ++j;
        if (j > i) {
            double lo = curve.xs[i];
            double hi = curve.xs[j];
            if (can_refine && i > 0) lo = refine_edge(curve, curve.xs[i], curve.xs[i - 1], curve.tilde_m[i], threshold);
            if (can_refine && j + 1 < n) {
                hi = refine_edge(curve, curve.xs[j], curve.xs[j + 1], curve.tilde_m[j], threshold);
            }
            report.support_intervals.push_back({lo, hi});
        }
        i = j + 1;
    }
    for (std::size_t k = 1; k < report.support_intervals.size(); ++k) {
        report.gaps.push_back({report.support_intervals[k - 1].hi, report.support_intervals[k].lo});
    }
    return report;
}

CdfTable::CdfTable(const DensityCurve& curve)
    : xs_(curve.xs), fs_(curve.fs), cumulative_(curve.xs.size(), 0.0), zero_atom_(curve.zero_atom) {
    if (xs_.empty() || xs_.size() != fs_.size()) throw std::invalid_argument("CdfTable: malformed curve");
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        cumulative_[i] = cumulative_[i - 1] + 0.5 * (xs_[i] - xs_[i - 1]) * (fs_[i] + fs_[i - 1]);
    }
    total_ = zero_atom_ + cumulative_.back();
}

double CdfTable::operator()(double x) const {
    if (x < 0.0) return 0.0;
    const double base = zero_atom_;
    if (x < xs_.front()) return base;
    if (x >= xs_.back()) return base + cumulative_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double fx = fs_[i] + t * (fs_[i + 1] - fs_[i]);
    return base + cumulative_[i] + 0.5 * (x - xs_[i]) * (fs_[i] + fx);
}

CdfTable cdf_curve(const DensityCurve& curve) { return CdfTable(curve); }

double moment(const DensityCurve& curve, int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("moment: only k = 1 or 2 is supported");
    double acc = 0.0;
    auto g = [&](std::size_t i) { return std::pow(curve.xs[i], k) * curve.fs[i]; };
    for (std::size_t i = 1; i < curve.xs.size(); ++i) acc += 0.5 * (curve.xs[i] - curve.xs[i - 1]) * (g(i) + g(i - 1));
    return acc;
}

}  // namespace wscov
