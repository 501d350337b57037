// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "support.hpp"
#include "wscov/density.hpp"
#include "wscov/laws.hpp"
#include "wscov/oracle.hpp"
#include "wscov/sim.hpp"
#include "wscov/solver.hpp"

using namespace wscov;
using testing::cplx;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Grid on [0, 1.5 max(H) max(D) (1 + sqrt c)^2] with a step near 0.005.
std::vector<double> fine_grid(const SpectralLaw& H, const WeightLaw& D, double c) {
    const double hi = 1.5 * support_max(H) * support_max(D) * std::pow(1.0 + std::sqrt(c), 2);
    const auto count = static_cast<std::size_t>(std::clamp(hi / 0.005, 2000.0, 250000.0));
    return linear_grid(0.0, hi, count);
}

DensityCurve fine_curve(const SpectralLaw& H, const WeightLaw& D, double c) {
    return density_curve(H, D, c, fine_grid(H, D, c), kDefaultEpsilon, {}, worker_count());
}

SpectralLaw three_atom() { return testing::three_atom_h(); }

WeightLaw uniform_weights(double alpha) {
    return alpha == 0.0 ? WeightLaw::point_mass(1.0) : WeightLaw::uniform(1.0 - alpha / 2.0, 1.0 + alpha / 2.0);
}

WeightLaw two_dirac(double alpha) {
    return alpha == 0.0 ? WeightLaw::point_mass(1.0)
                        : WeightLaw::mixture({{0.5, 1.0 - alpha}, {0.5, 1.0 + alpha}});
}

WeightLaw exp_weights(double alpha) {
    return alpha == 0.0 ? WeightLaw::point_mass(1.0) : WeightLaw::exp_weighted(alpha);
}

// (1 - 1/(2a)) delta_{a/(2a-1)} + 1/(2a) delta_a, mean one.
WeightLaw far_atom(double alpha) {
    if (alpha == 1.0) return WeightLaw::point_mass(1.0);
    return WeightLaw::mixture({{1.0 - 1.0 / (2.0 * alpha), alpha / (2.0 * alpha - 1.0)}, {1.0 / (2.0 * alpha), alpha}});
}

// Masses of every curve computed for criteria 1 to 5, checked by criterion 7.
struct MassRecord {
    std::string label;
    double mass;
};
std::vector<MassRecord> g_masses;

std::size_t gap_count(const std::string& label, const DensityCurve& curve) {
    g_masses.push_back({label, curve.total_mass()});
    return support_report(curve).gaps.size();
}

Outcome criterion1() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (double c : {0.1, 0.25, 0.5}) {
        const oracle::MpParams p(c);
        const auto [a, b] = oracle::mp_support(p);
        const DensityCurve curve =
            density_curve(SpectralLaw::point_mass(1.0), WeightLaw::point_mass(1.0), c, linear_grid(0.0, 1.2 * b, 4001));
        g_masses.push_back({fmt("MP c=%g", c), curve.total_mass()});
        double worst = 0.0;
        for (std::size_t i = 0; i < curve.xs.size(); ++i) {
            const double x = curve.xs[i];
            if (std::abs(x - a) < 0.05 || std::abs(x - b) < 0.05) continue;
            worst = std::max(worst, std::abs(curve.fs[i] - oracle::mp_density(p, x)));
        }
        const SupportReport r = support_report(curve);
        o.check(worst <= 1e-3, fmt("c=%g sup error %.3g", c, worst));
        o.check(r.support_intervals.size() == 1, fmt("c=%g has %zu components", c, r.support_intervals.size()));
        if (!r.support_intervals.empty()) {
            const double ea = std::abs(r.support_intervals.front().lo - a);
            const double eb = std::abs(r.support_intervals.back().hi - b);
            o.check(ea <= 1e-2 && eb <= 1e-2, fmt("c=%g edge errors %.3g %.3g", c, ea, eb));
            o.note(fmt("c=%g sup|f - f_MP| %.2e, edge errors %.1e / %.1e", c, worst, ea, eb));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= 30.0, fmt("runtime %.1f s", secs));
    o.note(fmt("runtime %.2f s", secs));
    return o;
}

Outcome criterion2() {
    Outcome o;
    const double c = 0.25;
    const SpectralModel model(three_atom(), WeightLaw::point_mass(1.0), c);
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const cplx z = testing::random_z(rng, -2.0, 40.0, 1e-4, 20.0);
        const StieltjesSolution s = solve(model, EvalPoint(z));
        worst = std::max(worst, std::abs(s.tilde_m - (1.0 - c * (1.0 + z * s.m))));
    }
    o.check(worst <= 1e-8, fmt("max deviation %.3g", worst));
    o.note(fmt("max |tm - (1 - c(1 + z m))| = %.2e", worst));
    return o;
}

Outcome criterion3() {
    Outcome o;
    const double c = 0.25;
    struct Case {
        const char* family;
        double alpha;
        WeightLaw law;
        std::size_t expected;
    };
    const std::vector<Case> cases = {
        {"uniform", 0.0, uniform_weights(0.0), 2}, {"uniform", 1.0, uniform_weights(1.0), 2},
        {"uniform", 2.0, uniform_weights(2.0), 1}, {"two-dirac", 0.0, two_dirac(0.0), 2},
        {"two-dirac", 0.7, two_dirac(0.7), 0},     {"two-dirac", 1.0, two_dirac(1.0), 0},
        {"exp", 0.0, exp_weights(0.0), 2},         {"exp", 2.0, exp_weights(2.0), 1},
        {"exp", 5.0, exp_weights(5.0), 0},
    };
    for (const Case& k : cases) {
        const DensityCurve curve = fine_curve(three_atom(), k.law, c);
        const SupportReport r = support_report(curve);
        g_masses.push_back({fmt("%s alpha=%g", k.family, k.alpha), curve.total_mass()});
        std::string gaps;
        for (const Interval& g : r.gaps) gaps += fmt(" [%.4f, %.4f]", g.lo, g.hi);
        const std::string line = fmt("%s alpha=%g: %zu gaps (expected %zu)%s", k.family, k.alpha, r.gaps.size(),
                                     k.expected, gaps.c_str());
        o.check(r.gaps.size() == k.expected, line);
        if (r.gaps.size() == k.expected) o.note(line);
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    const double c = 0.05;
    const std::size_t g50 = gap_count("far atom alpha=50", fine_curve(three_atom(), far_atom(50.0), c));
    const std::size_t g1 = gap_count("far atom alpha=1", fine_curve(three_atom(), far_atom(1.0), c));
    o.check(g50 == 3, fmt("alpha=50: %zu gaps, expected 3", g50));
    o.check(g1 <= 2, fmt("alpha=1: %zu gaps, expected <= 2", g1));
    o.note(fmt("alpha=50: %zu gaps, alpha=1: %zu gaps", g50, g1));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const std::vector<std::pair<double, std::size_t>> probes = {{0.30, 2}, {0.37, 1}, {0.45, 0}};
    for (const auto& [c, expected] : probes) {
        const std::size_t g = gap_count(fmt("unweighted c=%g", c), fine_curve(three_atom(), WeightLaw::point_mass(1.0), c));
        o.check(g == expected, fmt("c=%g: %zu gaps, expected %zu", c, g, expected));
        o.note(fmt("c=%g: %zu gaps", c, g));
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const SpectralLaw h = testing::random_h(rng);
        const WeightLaw d = testing::random_d(rng);
        const double c = 0.05 + 0.9 * u(rng);
        const double expected = mean(h) * mean(d);
        const double got = moment(fine_curve(h, d, c), 1);
        const double rel = std::abs(got - expected) / expected;
        worst = std::max(worst, rel);
        o.check(rel <= 1e-2, fmt("H=%s D=%s c=%.3f: moment %.6g vs %.6g", format_law(h).c_str(),
                                 format_law(d).c_str(), c, got, expected));
    }
    o.note(fmt("worst relative error %.2e", worst));
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst = 0.0;
    for (const MassRecord& m : g_masses) {
        worst = std::max(worst, std::abs(m.mass - 1.0));
        o.check(std::abs(m.mass - 1.0) <= 5e-3, fmt("%s: mass %.6f", m.label.c_str(), m.mass));
    }
    o.note(fmt("%zu curves, worst |mass - 1| = %.2e", g_masses.size(), worst));
    return o;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Outcome criterion8() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const double c = 0.25;
    const SpectralLaw h = three_atom();
    const WeightLaw d = WeightLaw::exp_weighted(1.0);
    const CdfTable F(fine_curve(h, d, c));
    struct Family {
        const char* name;
        NoiseModel noise;
        bool bounded;
        std::vector<double> ks;
    };
    std::vector<Family> families = {{"gauss", NoiseModel::gaussian_real(), true, {}},
                                    {"t4", NoiseModel::student_t(4.0), true, {}},
                                    {"t2.5", NoiseModel::student_t(2.5), false, {}}};
    for (Family& f : families) {
        SimConfig cfg;
        cfg.n = 3000;
        cfg.c = c;
        cfg.noise = f.noise;
        cfg.seed = 8000;
        for (std::uint64_t t = 0; t < 10; ++t) {
            SimConfig one = cfg;
            one.seed = trial_seed(cfg.seed, t);
            f.ks.push_back(ks_statistic(sample_spectrum(h, d, one), std::cref(F)));
        }
        const double worst = *std::max_element(f.ks.begin(), f.ks.end());
        if (f.bounded) o.check(worst <= 0.05, fmt("%s: max KS %.4f over 10 seeds", f.name, worst));
        o.note(fmt("%s: median KS %.4f, max %.4f", f.name, median(f.ks), worst));
    }
    const double mg = median(families[0].ks), m4 = median(families[1].ks), m25 = median(families[2].ks);
    o.check(mg <= m4 && m4 <= m25, fmt("median ordering %.4f, %.4f, %.4f", mg, m4, m25));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= 600.0, fmt("runtime %.0f s", secs));
    o.note(fmt("runtime %.0f s", secs));
    return o;
}

Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad = 0;
    double worst_res = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const SpectralLaw h = testing::random_h(rng);
        const WeightLaw d = testing::random_d(rng);
        const double c = 0.05 + 3.0 * u(rng);
        const SpectralModel model(h, d, c);
        const cplx z = testing::random_z(rng, -5.0, 60.0, 1e-3, 50.0);
        const StieltjesSolution s = solve(model, EvalPoint(z));
        const double bound = mean(d) * std::abs(z) / z.imag();
        const cplx iy(0.0, 1e3);
        const StieltjesSolution t = solve(model, EvalPoint(iy));
        worst_res = std::max(worst_res, s.residual);
        const bool ok = s.m.imag() > 0.0 && s.tilde_m.imag() <= 0.0 && s.residual <= 1e-12 &&
                        std::abs(s.tilde_m) <= bound && std::abs(iy * t.m + 1.0) <= mean(d) * support_max(h) / 1e3;
        if (!ok) {
            ++bad;
            if (bad <= 5) {
                o.note(fmt("violation: H=%s D=%s c=%.3f z=%.4g%+.4gi", format_law(h).c_str(), format_law(d).c_str(), c,
                           z.real(), z.imag()));
            }
        }
    }
    o.check(bad == 0, fmt("%d of 1000 solves violate a property", bad));
    o.note(fmt("1000 solves, worst residual %.2e", worst_res));
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    const auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (int k = 0; k < 100; ++k) {
        const SpectralLaw h = testing::random_h(rng);
        const WeightLaw d = testing::random_d(rng);
        const double c = 0.05 + 3.0 * u(rng);
        const double s = 0.1 + 9.9 * u(rng);
        const cplx z = testing::random_z(rng, -5.0, 60.0, 1e-2, 20.0);
        const SpectralModel base(h, d, c);
        const StieltjesSolution ref = solve(base, EvalPoint(z / s));
        const StieltjesSolution w = solve(SpectralModel(base.population(), base.weights().scaled(s), c), EvalPoint(z));
        const StieltjesSolution p = solve(SpectralModel(base.population().scaled(s), base.weights(), c), EvalPoint(z));
        worst = std::max({worst, rel(w.m, ref.m / s), rel(w.tilde_m, s * ref.tilde_m), rel(p.m, ref.m / s),
                          rel(p.tilde_m, ref.tilde_m)});
    }
    o.check(worst <= 1e-9, fmt("worst relative deviation %.3g", worst));
    o.note(fmt("100 tuples, worst relative deviation %.2e", worst));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"classic MP oracle equivalence", criterion1},
        {"unweighted companion identity", criterion2},
        {"gap counts under weight spreading", criterion3},
        {"third spectral gap", criterion4},
        {"unweighted c thresholds", criterion5},
        {"first moment identity", criterion6},
        {"normalization", criterion7},
        {"Monte-Carlo agreement", criterion8},
        {"Nevanlinna properties", criterion9},
        {"scaling covariance", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first);
        for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
