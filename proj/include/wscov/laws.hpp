#pragma once

// Population spectral laws (H) and weight laws (D).
//
// Both are probability distributions on [0, inf). A SpectralLaw is always
// atomic; a WeightLaw may also be uniform or exponentially weighted. Every
// value is immutable once constructed.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wscov/quadrature.hpp"

namespace wscov {

struct Atom {
    double mass;
    double location;
};

/// Finite mixture of point masses in canonical form: locations strictly
/// increasing, masses positive and summing to one.
class AtomicMixture {
public:
    /// Sorts and merges duplicate locations. Masses are kept bit-for-bit so
    /// that text round trips are exact. Throws
    /// std::invalid_argument on a non-positive mass, a negative location or a
    /// total mass further than 1e-12 from one.
    explicit AtomicMixture(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
};

struct PointMass {
    double location;
};

struct Uniform {
    double lo;
    double hi;
};

/// Exponentially weighted law with cdf 1 + log(x / beta) / alpha on
/// [beta e^-alpha, beta], beta = alpha / (1 - e^-alpha). Its mean is one.
struct ExpWeighted {
    double alpha;

    double beta() const;
    double lower() const;
};

class SpectralLaw {
public:
    using Variant = std::variant<PointMass, AtomicMixture>;

    SpectralLaw(PointMass p);
    SpectralLaw(AtomicMixture m);

    static SpectralLaw point_mass(double location) { return SpectralLaw(PointMass{location}); }
    static SpectralLaw mixture(std::vector<Atom> atoms) { return SpectralLaw(AtomicMixture(std::move(atoms))); }

    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
};

class WeightLaw {
public:
    using Variant = std::variant<PointMass, AtomicMixture, Uniform, ExpWeighted>;

    WeightLaw(PointMass p);
    WeightLaw(AtomicMixture m);
    WeightLaw(Uniform u);
    WeightLaw(ExpWeighted e);

    static WeightLaw point_mass(double w) { return WeightLaw(PointMass{w}); }
    static WeightLaw mixture(std::vector<Atom> atoms) { return WeightLaw(AtomicMixture(std::move(atoms))); }
    static WeightLaw uniform(double lo, double hi) { return WeightLaw(Uniform{lo, hi}); }
    static WeightLaw exp_weighted(double alpha) { return WeightLaw(ExpWeighted{alpha}); }

    const Variant& variant() const noexcept { return v_; }

private:
    Variant v_;
};

/// Integral of x against the law; exact for atoms, closed form otherwise.
double mean(const SpectralLaw& law);
double mean(const WeightLaw& law);

/// Probability quadrature for the law. Atomic laws ignore n_nodes.
/// Throws std::invalid_argument when n_nodes == 0.
Quadrature quadrature(const SpectralLaw& law, std::size_t n_nodes);
Quadrature quadrature(const WeightLaw& law, std::size_t n_nodes);

/// Left-continuous generalized inverse of the cdf, p in (0, 1).
double quantile(const SpectralLaw& law, double p);
double quantile(const WeightLaw& law, double p);

double cdf(const SpectralLaw& law, double x);
double cdf(const WeightLaw& law, double x);

/// Mass the law places at exactly zero.
double mass_at_zero(const SpectralLaw& law);
double mass_at_zero(const WeightLaw& law);

double support_max(const SpectralLaw& law);
double support_max(const WeightLaw& law);

/// Deterministic length-N diagonal for a finite weight matrix: midpoint
/// quantiles (i - 1/2) / N rescaled to the exact law mean, sorted descending.
std::vector<double> sample_diagonal(const WeightLaw& law, std::size_t N);

/// Midpoint quantiles of H, descending. No rescaling.
std::vector<double> population_diagonal(const SpectralLaw& law, std::size_t n);

// Law mini-format: dirac:w | mix:p1@x1,p2@x2,... | unif:lo,hi | ewma:alpha.
// Numbers are written in shortest round-trip form, so parse(format(x)) == x.

/// Throws LawParseError.
SpectralLaw parse_spectral_law(std::string_view text);
WeightLaw parse_weight_law(std::string_view text);

std::string format_law(const SpectralLaw& law);
std::string format_law(const WeightLaw& law);

}  // namespace wscov
