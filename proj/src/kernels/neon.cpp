// NEON variants (aarch64, two doubles per register).

#include <arm_neon.h>

#include <algorithm>
#include <limits>

#include "wscov/kernels.hpp"

namespace wscov::kernels::neon {

ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z) {
    const std::size_t n = taus.size();
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t vtr = vdupq_n_f64(t.real());
    const float64x2_t vti = vdupq_n_f64(t.imag());
    const float64x2_t vzr = vdupq_n_f64(z.real());
    const float64x2_t vzi = vdupq_n_f64(z.imag());
    float64x2_t pr = vdupq_n_f64(0.0), pi = vdupq_n_f64(0.0);
    float64x2_t wr = vdupq_n_f64(0.0), wi = vdupq_n_f64(0.0);
    float64x2_t qr = vdupq_n_f64(0.0), qi = vdupq_n_f64(0.0);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t tau = vld1q_f64(taus.data() + i);
        const float64x2_t w = vld1q_f64(weights.data() + i);
        const float64x2_t dr = vsubq_f64(vmulq_f64(tau, vtr), vzr);
        const float64x2_t di = vsubq_f64(vmulq_f64(tau, vti), vzi);
        const float64x2_t inv = vdivq_f64(one, vfmaq_f64(vmulq_f64(di, di), dr, dr));
        const float64x2_t ar = vmulq_f64(dr, inv);
        const float64x2_t ai = vmulq_f64(di, inv);  // negated imaginary part
        const float64x2_t wt = vmulq_f64(w, tau);
        const float64x2_t wtt = vmulq_f64(wt, tau);
        pr = vfmaq_f64(pr, w, ar);
        pi = vfmsq_f64(pi, w, ai);
        wr = vfmaq_f64(wr, wt, ar);
        wi = vfmsq_f64(wi, wt, ai);
        qr = vfmaq_f64(qr, wtt, vsubq_f64(vmulq_f64(ar, ar), vmulq_f64(ai, ai)));
        qi = vfmsq_f64(qi, wtt, vmulq_f64(two, vmulq_f64(ar, ai)));
    }

    const ResolventSums tail = scalar::resolvent_sums(taus.subspan(i), weights.subspan(i), t, z);
    return {{vaddvq_f64(pr) + tail.plain.real(), vaddvq_f64(pi) + tail.plain.imag()},
            {vaddvq_f64(wr) + tail.weighted.real(), vaddvq_f64(wi) + tail.weighted.imag()},
            {vaddvq_f64(qr) + tail.weighted_sq.real(), vaddvq_f64(qi) + tail.weighted_sq.imag()}};
}

WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k) {
    const std::size_t n = deltas.size();
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t vkr = vdupq_n_f64(k.real());
    const float64x2_t vki = vdupq_n_f64(k.imag());
    float64x2_t vr = vdupq_n_f64(0.0), vi = vdupq_n_f64(0.0);
    float64x2_t gr = vdupq_n_f64(0.0), gi = vdupq_n_f64(0.0);
    float64x2_t vmin = vdupq_n_f64(std::numeric_limits<double>::infinity());

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t delta = vld1q_f64(deltas.data() + i);
        const float64x2_t w = vld1q_f64(weights.data() + i);
        const float64x2_t dr = vfmaq_f64(one, delta, vkr);
        const float64x2_t di = vmulq_f64(delta, vki);
        const float64x2_t sq = vfmaq_f64(vmulq_f64(di, di), dr, dr);
        vmin = vminq_f64(vmin, sq);
        const float64x2_t inv = vdivq_f64(one, sq);
        const float64x2_t ar = vmulq_f64(dr, inv);
        const float64x2_t ai = vmulq_f64(di, inv);  // negated imaginary part
        const float64x2_t wd = vmulq_f64(w, delta);
        const float64x2_t wdd = vmulq_f64(wd, delta);
        vr = vfmaq_f64(vr, wd, ar);
        vi = vfmsq_f64(vi, wd, ai);
        gr = vfmaq_f64(gr, wdd, vsubq_f64(vmulq_f64(ar, ar), vmulq_f64(ai, ai)));
        gi = vfmsq_f64(gi, wdd, vmulq_f64(two, vmulq_f64(ar, ai)));
    }

    const WeightSum tail = scalar::weight_sum(deltas.subspan(i), weights.subspan(i), k);
    return {{vaddvq_f64(vr) + tail.value.real(), vaddvq_f64(vi) + tail.value.imag()},
            {vaddvq_f64(gr) + tail.derivative.real(), vaddvq_f64(gi) + tail.derivative.imag()},
            std::min(vminvq_f64(vmin), tail.min_denominator_sq)};
}

}  // namespace wscov::kernels::neon
