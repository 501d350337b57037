#pragma once

// Finite-n simulation of B = (1/N) T^{1/2} Z W Z^* T^{1/2} and goodness of
// fit against a limiting density curve.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wscov/density.hpp"
#include "wscov/laws.hpp"

namespace wscov {

struct NoiseModel {
    enum class Kind { gaussian_real, gaussian_complex, student_t };

    Kind kind = Kind::gaussian_real;
    double nu = 0.0;  // student_t only

    static NoiseModel gaussian_real() { return {Kind::gaussian_real, 0.0}; }
    static NoiseModel gaussian_complex() { return {Kind::gaussian_complex, 0.0}; }
    /// Unit-variance Student t. Throws std::invalid_argument unless nu > 2.
    static NoiseModel student_t(double nu);

    bool is_complex() const noexcept { return kind == Kind::gaussian_complex; }
};

/// gauss-r | gauss-c | student:NU. Throws LawParseError.
NoiseModel parse_noise(std::string_view text);
std::string format_noise(const NoiseModel& noise);

struct SimConfig {
    std::size_t n = 0;
    double c = 0.0;
    NoiseModel noise;
    std::uint64_t seed = 0;
    bool rotate_weights = false;
    bool rotate_population = false;

    /// round(n / c).
    std::size_t sample_count() const;
    /// Throws std::invalid_argument unless n >= 2, c > 0 and N >= 2.
    void validate() const;
};

struct EmpiricalSpectrum {
    std::vector<double> eigenvalues;  // ascending, size n
    std::size_t n = 0;
    std::size_t N = 0;
};

/// Seed of trial `trial` in an ensemble, via splitmix64.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// One draw. T and W are deterministic quantile diagonals; only Z (and the
/// rotations, if enabled) are random, driven by cfg.seed. The eigenproblem
/// is solved on the smaller of the n x n and N x N Gram matrices.
/// Throws EigensolverError.
EmpiricalSpectrum sample_spectrum(const SpectralLaw& H, const WeightLaw& D, const SimConfig& cfg);

/// `trials` draws with seeds trial_seed(cfg.seed, t). The result does not
/// depend on `threads`.
std::vector<EmpiricalSpectrum> sample_ensemble(const SpectralLaw& H, const WeightLaw& D, const SimConfig& cfg,
                                               std::size_t trials, unsigned threads = 1);

/// sup_x |F_n(x) - F(x)|, checking both sides of every jump of F_n.
/// Eigenvalues within 1e-10 of zero relative to the largest are treated as
/// exact zeros. Throws std::invalid_argument on an empty spectrum.
double ks_statistic(const EmpiricalSpectrum& spec, const std::function<double(double)>& cdf);

/// int |F_n - F| dx by the trapezoid rule on the union of the curve grid,
/// the eigenvalues and 0.
double wasserstein1(const EmpiricalSpectrum& spec, const DensityCurve& curve);

/// (1/n) Tr B.
double trace_mean(const EmpiricalSpectrum& spec);

}  // namespace wscov
