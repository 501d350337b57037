#include "wscov/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wscov::oracle {

MpParams::MpParams(double ratio) : c(ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw std::invalid_argument("MpParams: c must be > 0");
}

std::pair<double, double> mp_support(MpParams p) {
    const double s = std::sqrt(p.c);
    return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double mp_density(MpParams p, double x) {
    const auto [a, b] = mp_support(p);
    if (x <= a || x >= b || x <= 0.0) return 0.0;
    return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * p.c * x);
}

std::complex<double> mp_stieltjes(MpParams p, std::complex<double> z) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("mp_stieltjes: Im z must be > 0");
    using cplx = std::complex<double>;
    // a m^2 + b m + 1 = 0 with a = c z, b = -(1 - c - z).
    const cplx a = p.c * z;
    const cplx b = -(1.0 - p.c - z);
    const cplx disc = std::sqrt(b * b - 4.0 * a);
    // Pick the sign that avoids cancellation, then get the other root from
    // the product of roots 1 / a.
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    const cplx r1 = q / a;
    const cplx r2 = 1.0 / q;
    return r1.imag() >= r2.imag() ? r1 : r2;
}

}  // namespace wscov::oracle
