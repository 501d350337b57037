#include "wscov/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wscov {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("quantile: p must lie in (0,1), got " + std::to_string(p));
    }
}

double mixture_mean(const AtomicMixture& m) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) s += a.mass * a.location;
    return s;
}

double mixture_quantile(const AtomicMixture& m, double p) {
    double cumulative = 0.0;
    for (const Atom& a : m.atoms()) {
        cumulative += a.mass;
        if (cumulative >= p) return a.location;
    }
    return m.atoms().back().location;
}

double mixture_cdf(const AtomicMixture& m, double x) {
    double cumulative = 0.0;
    for (const Atom& a : m.atoms()) {
        if (a.location > x) break;
        cumulative += a.mass;
    }
    return std::min(cumulative, 1.0);
}

Quadrature mixture_quadrature(const AtomicMixture& m) {
    std::vector<double> nodes;
    std::vector<double> weights;
    for (const Atom& a : m.atoms()) {
        nodes.push_back(a.location);
        weights.push_back(a.mass);
    }
    return Quadrature(std::move(nodes), std::move(weights));
}

double mixture_zero_mass(const AtomicMixture& m) {
    const Atom& first = m.atoms().front();
    return first.location == 0.0 ? first.mass : 0.0;
}

void check_point(double location) {
    if (!(location >= 0.0) || !std::isfinite(location)) {
        throw std::invalid_argument("point mass location must be finite and >= 0");
    }
}

}  // namespace

AtomicMixture::AtomicMixture(std::vector<Atom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("AtomicMixture: no atoms");
    for (const Atom& a : atoms) {
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
            throw std::invalid_argument("AtomicMixture: masses must be positive");
        }
        check_point(a.location);
    }
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (const Atom& a : atoms) {
        if (!atoms_.empty() && atoms_.back().location == a.location) {
            atoms_.back().mass += a.mass;
        } else {
            atoms_.push_back(a);
        }
    }
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.mass;
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("AtomicMixture: masses sum to " + std::to_string(total));
    }
}

double ExpWeighted::beta() const { return alpha / -std::expm1(-alpha); }

double ExpWeighted::lower() const { return beta() * std::exp(-alpha); }

SpectralLaw::SpectralLaw(PointMass p) : v_(p) { check_point(p.location); }
SpectralLaw::SpectralLaw(AtomicMixture m) : v_(std::move(m)) {}

WeightLaw::WeightLaw(PointMass p) : v_(p) { check_point(p.location); }
WeightLaw::WeightLaw(AtomicMixture m) : v_(std::move(m)) {}
WeightLaw::WeightLaw(Uniform u) : v_(u) {
    if (!(u.lo >= 0.0) || !(u.hi > u.lo) || !std::isfinite(u.hi)) {
        throw std::invalid_argument("Uniform weight law requires 0 <= lo < hi");
    }
}
WeightLaw::WeightLaw(ExpWeighted e) : v_(e) {
    if (!(e.alpha > 0.0) || !std::isfinite(e.alpha)) {
        throw std::invalid_argument("ExpWeighted weight law requires alpha > 0");
    }
}

double mean(const SpectralLaw& law) {
    return std::visit(Overloaded{[](const PointMass& p) { return p.location; },
                                 [](const AtomicMixture& m) { return mixture_mean(m); }},
                      law.variant());
}

double mean(const WeightLaw& law) {
    return std::visit(Overloaded{[](const PointMass& p) { return p.location; },
                                 [](const AtomicMixture& m) { return mixture_mean(m); },
                                 [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                                 [](const ExpWeighted&) { return 1.0; }},
                      law.variant());
}

Quadrature quadrature(const SpectralLaw& law, std::size_t n_nodes) {
    if (n_nodes == 0) throw std::invalid_argument("quadrature: n_nodes must be >= 1");
    return std::visit(Overloaded{[](const PointMass& p) { return Quadrature({p.location}, {1.0}); },
                                 [](const AtomicMixture& m) { return mixture_quadrature(m); }},
                      law.variant());
}

Quadrature quadrature(const WeightLaw& law, std::size_t n_nodes) {
    if (n_nodes == 0) throw std::invalid_argument("quadrature: n_nodes must be >= 1");
    return std::visit(
        Overloaded{[](const PointMass& p) { return Quadrature({p.location}, {1.0}); },
                   [](const AtomicMixture& m) { return mixture_quadrature(m); },
                   [n_nodes](const Uniform& u) { return gauss_legendre_probability(n_nodes, u.lo, u.hi); },
                   [n_nodes](const ExpWeighted& e) {
                       // delta = beta e^{-alpha t}, t ~ U[0,1].
                       Quadrature t = gauss_legendre_probability(n_nodes, 0.0, 1.0);
                       std::vector<double> nodes(t.nodes().begin(), t.nodes().end());
                       const double beta = e.beta();
                       for (double& x : nodes) x = beta * std::exp(-e.alpha * x);
                       return Quadrature(std::move(nodes), std::vector<double>(t.weights().begin(), t.weights().end()));
                   }},
        law.variant());
}

double quantile(const SpectralLaw& law, double p) {
    require_probability(p);
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location; },
                                 [p](const AtomicMixture& m) { return mixture_quantile(m, p); }},
                      law.variant());
}

double quantile(const WeightLaw& law, double p) {
    require_probability(p);
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location; },
                                 [p](const AtomicMixture& m) { return mixture_quantile(m, p); },
                                 [p](const Uniform& u) { return u.lo + p * (u.hi - u.lo); },
                                 [p](const ExpWeighted& e) { return e.beta() * std::exp(-e.alpha * (1.0 - p)); }},
                      law.variant());
}

double cdf(const SpectralLaw& law, double x) {
    return std::visit(Overloaded{[x](const PointMass& pm) { return x >= pm.location ? 1.0 : 0.0; },
                                 [x](const AtomicMixture& m) { return mixture_cdf(m, x); }},
                      law.variant());
}

double cdf(const WeightLaw& law, double x) {
    return std::visit(Overloaded{[x](const PointMass& pm) { return x >= pm.location ? 1.0 : 0.0; },
                                 [x](const AtomicMixture& m) { return mixture_cdf(m, x); },
                                 [x](const Uniform& u) { return std::clamp((x - u.lo) / (u.hi - u.lo), 0.0, 1.0); },
                                 [x](const ExpWeighted& e) {
                                     if (x < e.lower()) return 0.0;
                                     if (x >= e.beta()) return 1.0;
                                     return std::clamp(1.0 + std::log(x / e.beta()) / e.alpha, 0.0, 1.0);
                                 }},
                      law.variant());
}

double mass_at_zero(const SpectralLaw& law) {
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location == 0.0 ? 1.0 : 0.0; },
                                 [](const AtomicMixture& m) { return mixture_zero_mass(m); }},
                      law.variant());
}

double mass_at_zero(const WeightLaw& law) {
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location == 0.0 ? 1.0 : 0.0; },
                                 [](const AtomicMixture& m) { return mixture_zero_mass(m); },
                                 [](const Uniform&) { return 0.0; },
                                 [](const ExpWeighted&) { return 0.0; }},
                      law.variant());
}

double support_max(const SpectralLaw& law) {
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location; },
                                 [](const AtomicMixture& m) { return m.atoms().back().location; }},
                      law.variant());
}

double support_max(const WeightLaw& law) {
    return std::visit(Overloaded{[](const PointMass& pm) { return pm.location; },
                                 [](const AtomicMixture& m) { return m.atoms().back().location; },
                                 [](const Uniform& u) { return u.hi; },
                                 [](const ExpWeighted& e) { return e.beta(); }},
                      law.variant());
}

std::vector<double> sample_diagonal(const WeightLaw& law, std::size_t N) {
    if (N == 0) throw std::invalid_argument("sample_diagonal: N must be >= 1");
    std::vector<double> diag(N);
    const double dN = static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) {
        diag[i] = quantile(law, (static_cast<double>(i) + 0.5) / dN);
    }
    const double target = mean(law);
    const double sample = std::accumulate(diag.begin(), diag.end(), 0.0) / dN;
    if (sample > 0.0 && sample != target) {
        const double factor = target / sample;
        for (double& w : diag) w *= factor;
    }
    std::sort(diag.begin(), diag.end(), std::greater<>());
    return diag;
}

std::vector<double> population_diagonal(const SpectralLaw& law, std::size_t n) {
    if (n == 0) throw std::invalid_argument("population_diagonal: n must be >= 1");
    std::vector<double> diag(n);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = quantile(law, (static_cast<double>(i) + 0.5) / dn);
    }
    std::sort(diag.begin(), diag.end(), std::greater<>());
    return diag;
}

}  // namespace wscov
