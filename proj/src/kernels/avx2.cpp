// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "wscov/kernels.hpp"

namespace wscov::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d m = _mm_min_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

ResolventSums resolvent_sums(std::span<const double> taus, std::span<const double> weights, cplx t, cplx z) {
    const std::size_t n = taus.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vtr = _mm256_set1_pd(t.real());
    const __m256d vti = _mm256_set1_pd(t.imag());
    const __m256d vzr = _mm256_set1_pd(z.real());
    const __m256d vzi = _mm256_set1_pd(z.imag());
    __m256d pr = _mm256_setzero_pd(), pi = _mm256_setzero_pd();
    __m256d wr = _mm256_setzero_pd(), wi = _mm256_setzero_pd();
    __m256d qr = _mm256_setzero_pd(), qi = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tau = _mm256_loadu_pd(taus.data() + i);
        const __m256d w = _mm256_loadu_pd(weights.data() + i);
        const __m256d dr = _mm256_fmsub_pd(tau, vtr, vzr);
        const __m256d di = _mm256_fmsub_pd(tau, vti, vzi);
        const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
        const __m256d ar = _mm256_mul_pd(dr, inv);
        const __m256d ai = _mm256_mul_pd(di, inv);  // negated imaginary part
        const __m256d wt = _mm256_mul_pd(w, tau);
        const __m256d wtt = _mm256_mul_pd(wt, tau);
        pr = _mm256_fmadd_pd(w, ar, pr);
        pi = _mm256_fnmadd_pd(w, ai, pi);
        wr = _mm256_fmadd_pd(wt, ar, wr);
        wi = _mm256_fnmadd_pd(wt, ai, wi);
        qr = _mm256_fmadd_pd(wtt, _mm256_fmsub_pd(ar, ar, _mm256_mul_pd(ai, ai)), qr);
        qi = _mm256_fnmadd_pd(wtt, _mm256_mul_pd(two, _mm256_mul_pd(ar, ai)), qi);
    }

    const ResolventSums tail = scalar::resolvent_sums(taus.subspan(i), weights.subspan(i), t, z);
    return {{hsum(pr) + tail.plain.real(), hsum(pi) + tail.plain.imag()},
            {hsum(wr) + tail.weighted.real(), hsum(wi) + tail.weighted.imag()},
            {hsum(qr) + tail.weighted_sq.real(), hsum(qi) + tail.weighted_sq.imag()}};
}

WeightSum weight_sum(std::span<const double> deltas, std::span<const double> weights, cplx k) {
    const std::size_t n = deltas.size();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vkr = _mm256_set1_pd(k.real());
    const __m256d vki = _mm256_set1_pd(k.imag());
    __m256d vr = _mm256_setzero_pd(), vi = _mm256_setzero_pd();
    __m256d gr = _mm256_setzero_pd(), gi = _mm256_setzero_pd();
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d delta = _mm256_loadu_pd(deltas.data() + i);
        const __m256d w = _mm256_loadu_pd(weights.data() + i);
        const __m256d dr = _mm256_fmadd_pd(delta, vkr, one);
        const __m256d di = _mm256_mul_pd(delta, vki);
        const __m256d sq = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        vmin = _mm256_min_pd(vmin, sq);
        const __m256d inv = _mm256_div_pd(one, sq);
        const __m256d ar = _mm256_mul_pd(dr, inv);
        const __m256d ai = _mm256_mul_pd(di, inv);  // negated imaginary part
        const __m256d wd = _mm256_mul_pd(w, delta);
        const __m256d wdd = _mm256_mul_pd(wd, delta);
        vr = _mm256_fmadd_pd(wd, ar, vr);
        vi = _mm256_fnmadd_pd(wd, ai, vi);
        gr = _mm256_fmadd_pd(wdd, _mm256_fmsub_pd(ar, ar, _mm256_mul_pd(ai, ai)), gr);
        gi = _mm256_fnmadd_pd(wdd, _mm256_mul_pd(two, _mm256_mul_pd(ar, ai)), gi);
    }

    const WeightSum tail = scalar::weight_sum(deltas.subspan(i), weights.subspan(i), k);
    return {{hsum(vr) + tail.value.real(), hsum(vi) + tail.value.imag()},
            {hsum(gr) + tail.derivative.real(), hsum(gi) + tail.derivative.imag()},
            std::min(hmin(vmin), tail.min_denominator_sq)};
}

}  // namespace wscov::kernels::avx2
