#pragma once

// Closed-form Marchenko-Pastur quantities for H = D = delta_1. Independent of
// the fixed-point solver; used as a test oracle and by `mp-check`.

#include <complex>
#include <utility>

namespace wscov::oracle {

struct MpParams {
    double c;

    /// Throws std::invalid_argument unless c > 0.
    explicit MpParams(double ratio);
};

/// [(1 - sqrt c)^2, (1 + sqrt c)^2].
std::pair<double, double> mp_support(MpParams p);

/// Absolutely continuous part sqrt((b - x)(x - a)) / (2 pi c x) on [a, b],
/// zero elsewhere. For c > 1 the law also has an atom 1 - 1/c at zero.
double mp_density(MpParams p, double x);

/// Root with Im > 0 of c z m^2 - (1 - c - z) m + 1 = 0. Requires Im z > 0.
std::complex<double> mp_stieltjes(MpParams p, std::complex<double> z);

}  // namespace wscov::oracle
