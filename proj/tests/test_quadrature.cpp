#include <doctest.h>

#include "chaoslab/quadrature.hpp"
#include "chaoslab/special.hpp"

#include <cmath>

using namespace chaoslab;

TEST_CASE("finite integrals") {
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    r = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(r.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("semi-infinite integrals") {
    auto r = integrate_semi_infinite([](double y) { return std::exp(-y); });
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    // int_0^inf y^2 e^{-y} = 2
    r = integrate_semi_infinite([](double y) { return y * y * std::exp(-y); });
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
    // slowly decaying: int_0^inf (1+2y)^{-3} dy = 1/4
    r = integrate_semi_infinite([](double y) { return std::pow(1.0 + 2.0 * y, -3.0); });
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("gauss-legendre exactness") {
    const QuadratureRule gl = gauss_legendre(12, 0.0, 2.0);
    double sw = 0.0;
    for (double w : gl.weights) sw += w;
    CHECK(sw == doctest::Approx(2.0).epsilon(1e-14));
    // degree-23 polynomial integrated exactly
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * std::pow(gl.nodes[i], 23);
    CHECK(acc == doctest::Approx(std::pow(2.0, 24) / 24.0).epsilon(1e-12));
}

TEST_CASE("gauss-hermite probabilists weights") {
    const QuadratureRule gh = gauss_hermite_prob(64);
    double sw = 0.0, m2 = 0.0, m4 = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        sw += gh.weights[i];
        m2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
        m4 += gh.weights[i] * std::pow(gh.nodes[i], 4);
    }
    CHECK(sw == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m4 == doctest::Approx(3.0).epsilon(1e-12));
}
