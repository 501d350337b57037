#pragma once

// Helpers shared by the test binaries. Everything here is written
// independently of the library code it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "wscov/laws.hpp"

namespace testing {

using cplx = std::complex<double>;

inline wscov::SpectralLaw three_atom_h() {
    return wscov::SpectralLaw::mixture({{0.2, 1.0}, {0.4, 3.0}, {0.4, 10.0}});
}

/// One to four atoms on [0, 10].
inline wscov::SpectralLaw random_h(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> loc(0.0, 10.0), mass(0.1, 1.0);
    const int n = count(rng);
    std::vector<wscov::Atom> atoms;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        atoms.push_back({mass(rng), loc(rng)});
        total += atoms.back().mass;
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        atoms[i].mass /= total;
        acc += atoms[i].mass;
    }
    atoms.back().mass = 1.0 - acc;
    if (std::abs(acc + atoms.back().mass - 1.0) > 1e-12 || atoms.back().mass <= 0) return wscov::SpectralLaw::point_mass(1.0);
    return wscov::SpectralLaw::mixture(atoms);
}

/// Point mass, two atoms, uniform or exponentially weighted.
inline wscov::WeightLaw random_d(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (kind(rng)) {
        case 0: return wscov::WeightLaw::point_mass(0.2 + 2.0 * u(rng));
        case 1: {
            const double p = 0.1 + 0.8 * u(rng);
            return wscov::WeightLaw::mixture({{p, 3.0 * u(rng)}, {1.0 - p, 0.5 + 3.0 * u(rng)}});
        }
        case 2: {
            const double lo = u(rng);
            return wscov::WeightLaw::uniform(lo, lo + 0.1 + 2.0 * u(rng));
        }
        default: return wscov::WeightLaw::exp_weighted(0.1 + 8.0 * u(rng));
    }
}

/// Adaptive Simpson on [a, b] to absolute tolerance tol.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                      int depth = 50) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
            if (d <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, d - 1) + rec(mid, hi, fmid, frm, fhi, right, d - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth);
}

/// Uniform point of the upper half-plane with Re in [re_lo, re_hi] and
/// log-uniform Im in [im_lo, im_hi].
inline cplx random_z(std::mt19937_64& rng, double re_lo, double re_hi, double im_lo, double im_hi) {
    std::uniform_real_distribution<double> re(re_lo, re_hi);
    std::uniform_real_distribution<double> lim(std::log(im_lo), std::log(im_hi));
    const double x = re(rng);
    return {x, std::exp(lim(rng))};
}

}  // namespace testing
