#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wscov/quadrature.hpp"

using wscov::Quadrature;

TEST_CASE("gauss_legendre low orders match tabulated rules") {
    std::vector<double> x, w;
    wscov::gauss_legendre(1, x, w);
    REQUIRE(x.size() == 1);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(w[0] == doctest::Approx(2.0));

    wscov::gauss_legendre(2, x, w);
    CHECK(std::abs(std::abs(x[0]) - 1.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(x[0] == doctest::Approx(-x[1]));
    CHECK(w[0] == doctest::Approx(1.0));

    wscov::gauss_legendre(3, x, w);
    std::sort(x.begin(), x.end());
    CHECK(x[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-14));
    CHECK(std::abs(x[1]) < 1e-15);
    double wsum = 0.0;
    for (double v : w) wsum += v;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
    std::vector<double> x, w;
    const std::size_t n = 16;
    wscov::gauss_legendre(n, x, w);
    for (int k = 0; k <= static_cast<int>(2 * n - 1); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], k);
        const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(acc - exact) < 1e-14);
    }
}

TEST_CASE("gauss_legendre handles large orders") {
    std::vector<double> x, w;
    wscov::gauss_legendre(512, x, w);
    double s = 0.0;
    for (double v : w) {
        CHECK(v > 0.0);
        s += v;
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("probability rule on an interval") {
    const Quadrature q = wscov::gauss_legendre_probability(32, 0.5, 1.5);
    double m2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) m2 += q.weights()[i] * q.nodes()[i] * q.nodes()[i];
    CHECK(std::abs(m2 - 13.0 / 12.0) < 1e-12);
    CHECK(q.mean() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.max_node() < 1.5);
}

TEST_CASE("Quadrature validation") {
    CHECK_THROWS_AS(Quadrature({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Quadrature({1.0}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Quadrature({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Quadrature({1.0, 2.0}, {0.5, 0.6}), std::invalid_argument);
    CHECK_NOTHROW(Quadrature({1.0, 2.0}, {0.5, 0.5 + 1e-12}));
}

TEST_CASE("Quadrature accessors") {
    const Quadrature q({0.0, 2.0, 4.0}, {0.25, 0.25, 0.5});
    CHECK(q.mean() == doctest::Approx(2.5));
    CHECK(q.max_node() == 4.0);
    CHECK(q.mass_at_zero() == 0.25);
    const Quadrature s = q.scaled(2.0);
    CHECK(s.nodes()[2] == 8.0);
    CHECK(s.weights()[2] == 0.5);
    CHECK(s.mean() == doctest::Approx(5.0));
}
