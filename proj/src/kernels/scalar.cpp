#include <limits>

#include "wscov/kernels.hpp"

namespace wscov::kernels::scalar {

ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z) {
    const double tr = t.real();
    const double ti = t.imag();
    const double zr = z.real();
    const double zi = z.imag();
    double pr = 0.0, pi = 0.0, wr = 0.0, wi = 0.0, qr = 0.0, qi = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double tau = taus[i];
        const double dr = tau * tr - zr;
        const double di = tau * ti - zi;
        const double inv = 1.0 / (dr * dr + di * di);
        // 1 / d = conj(d) / |d|^2
        const double ar = dr * inv;
        const double ai = -di * inv;
        const double w = weights[i];
        const double wt = w * tau;
        pr += w * ar;
        pi += w * ai;
        wr += wt * ar;
        wi += wt * ai;
        qr += wt * tau * (ar * ar - ai * ai);
        qi += wt * tau * (2.0 * ar * ai);
    }
    return {{pr, pi}, {wr, wi}, {qr, qi}};
}

WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k) {
    const double kr = k.real();
    const double ki = k.imag();
    double vr = 0.0, vi = 0.0, gr = 0.0, gi = 0.0;
    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double delta = deltas[i];
        const double dr = 1.0 + delta * kr;
        const double di = delta * ki;
        const double sq = dr * dr + di * di;
        if (sq < min_sq) min_sq = sq;
        const double inv = 1.0 / sq;
        const double ar = dr * inv;
        const double ai = -di * inv;
        const double wd = weights[i] * delta;
        vr += wd * ar;
        vi += wd * ai;
        gr += wd * delta * (ar * ar - ai * ai);
        gi += wd * delta * (2.0 * ar * ai);
    }
    return {{vr, vi}, {gr, gi}, min_sq};
}

}  // namespace wscov::kernels::scalar
