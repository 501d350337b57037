#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wscov {

class LawParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed key = value configuration text.
class ConfigParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A denominator 1 + delta c Theta vanished at a quadrature node.
class DegenerateEvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The damped iteration hit max_iter. Carries the best iterate seen.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, std::complex<double> best, double residual)
        : std::runtime_error(what), best_(best), residual_(residual) {}

    std::complex<double> best_iterate() const noexcept { return best_; }
    double residual() const noexcept { return residual_; }

private:
    std::complex<double> best_;
    double residual_;
};

/// Solver failure while building a density curve; names the grid abscissa.
class GridPointError : public std::runtime_error {
public:
    GridPointError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

class EigensolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wscov
