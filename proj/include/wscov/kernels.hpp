#pragma once

// Inner-loop reductions of the fixed-point solver over quadrature nodes.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at startup from the CPU's capabilities and can be overridden
// with set_backend(). All variants agree with the scalar reference up to
// summation order.

#include <complex>
#include <span>
#include <string_view>

namespace wscov::kernels {

using cplx = std::complex<double>;

/// With r_i = 1 / (tau_i t - z): sum w_i r_i, sum w_i tau_i r_i and
/// sum w_i tau_i^2 r_i^2.
struct ResolventSums {
    cplx plain;
    cplx weighted;
    cplx weighted_sq;
};

/// With s_i = 1 / (1 + delta_i k): sum w_i delta_i s_i, sum w_i delta_i^2 s_i^2
/// and min_i |1 + delta_i k|^2.
struct WeightSum {
    cplx value;
    cplx derivative;
    double min_denominator_sq;
};

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b) noexcept;

bool backend_supported(Backend b) noexcept;

/// Best backend available on this CPU.
Backend detect_backend() noexcept;

Backend active_backend() noexcept;

/// Throws std::invalid_argument if the backend is not supported here.
void set_backend(Backend b);

ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z);

WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k);

namespace scalar {
ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z);
WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z);
WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z);
WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k);
}  // namespace neon
#endif

}  // namespace wscov::kernels
