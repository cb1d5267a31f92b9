#include <doctest.h>

#include "chaoslab/chaos.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"

#include <cmath>

using namespace chaoslab;

namespace {

// projection oracle: coefficient of He_a(X1) in a univariate polynomial via
// Gauss-Hermite quadrature of E[p(X) He_a(X)] / a!
double gh_projection(const Functional& p, int a) {
    const QuadratureRule gh = gauss_hermite_prob(48);
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * p.eval({gh.nodes[i]}) * hermite_eval(a, gh.nodes[i]);
    double fact = 1.0;
    for (int j = 2; j <= a; ++j) fact *= j;
    return acc / fact;
}

} // namespace

TEST_CASE("x^2 decomposes into He_2 + 1") {
    const Functional x = Functional::coordinate(0);
    const ChaosExpansion c = ChaosExpansion::from_polynomial(x * x);
    CHECK(c.terms().size() == 2);
    CHECK(c.terms().at({0}) == doctest::Approx(1.0));
    CHECK(c.terms().at({2}) == doctest::Approx(1.0));
    CHECK(c.expectation() == doctest::Approx(1.0));
}

TEST_CASE("diagonal quadratic is pure second grade") {
    const Functional x = Functional::coordinate(0);
    const Functional y = Functional::coordinate(1);
    const Functional F = (x * x - 1.0) + 0.5 * (y * y - 1.0);
    const ChaosExpansion c = ChaosExpansion::from_polynomial(F);
    CHECK(c.max_grade() == 2);
    CHECK(c.expectation() == doctest::Approx(0.0));
    CHECK(c.terms().at({2, 0}) == doctest::Approx(1.0));
    CHECK(c.terms().at({0, 2}) == doctest::Approx(0.5));
    CHECK(c.grade_part(0).terms().empty());
}

TEST_CASE("x^3 = He_3 + 3 He_1 with projection oracle") {
    const Functional x = Functional::coordinate(0);
    const Functional p = x.pow(3);
    const ChaosExpansion c = ChaosExpansion::from_polynomial(p);
    CHECK(c.terms().at({3}) == doctest::Approx(1.0));
    CHECK(c.terms().at({1}) == doctest::Approx(3.0));
    CHECK(gh_projection(p, 3) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(gh_projection(p, 1) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("reconstruction at random points") {
    const Functional x = Functional::coordinate(0);
    const Functional y = Functional::coordinate(1);
    const Functional z = Functional::coordinate(2);
    const Functional p = x.pow(3) * y - 2.0 * z * z + x * y * z + 1.5;
    const ChaosExpansion c = ChaosExpansion::from_polynomial(p);
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> pt{rng.next_normal(), rng.next_normal(), rng.next_normal()};
        CHECK(std::fabs(c.eval(pt) - p.eval(pt)) < 1e-10);
    }
}

TEST_CASE("division is rejected") {
    const Functional x = Functional::coordinate(0);
    CHECK_THROWS_AS(ChaosExpansion::from_polynomial(Functional::constant(1.0) / x),
                    std::invalid_argument);
}

TEST_CASE("L and its pseudo-inverse") {
    const Functional x = Functional::coordinate(0);
    const ChaosExpansion h2 = ChaosExpansion::from_polynomial(x * x - 1.0);
    const ChaosExpansion lh2 = h2.apply_L();
    CHECK(lh2.terms().at({2}) == doctest::Approx(-2.0));

    // L L^{-1} c = c - E[c] exactly on coefficients
    const Functional y = Functional::coordinate(1);
    const ChaosExpansion c = ChaosExpansion::from_polynomial(x.pow(4) + x * y + 3.0 * y - 2.0);
    const ChaosExpansion back = c.apply_L_inverse().apply_L();
    for (const auto& [deg, coeff] : c.terms()) {
        int grade = 0;
        for (int d : deg) grade += d;
        if (grade == 0) continue;
        CHECK(back.terms().at(deg) == doctest::Approx(coeff).epsilon(1e-15));
    }
    CHECK(back.expectation() == doctest::Approx(0.0));

    // pure q-chaos: L^{-1} F = -F/q
    const ChaosExpansion f2 = ChaosExpansion::second_chaos_diagonal({1.0, 0.5});
    const ChaosExpansion inv = f2.apply_L_inverse();
    for (const auto& [deg, coeff] : f2.terms())
        CHECK(inv.terms().at(deg) == doctest::Approx(-coeff / 2.0));
}

TEST_CASE("moments from coefficients") {
    // E[(He_2(X))^2] = 2, E[(He_1)^2] = 1
    const Functional x = Functional::coordinate(0);
    const ChaosExpansion c = ChaosExpansion::from_polynomial(2.0 * (x * x - 1.0) + 3.0 * x + 1.0);
    CHECK(c.expectation() == doctest::Approx(1.0));
    CHECK(c.variance() == doctest::Approx(4.0 * 2.0 + 9.0));
    // Monte Carlo corroboration
    Rng rng(23);
    double acc = 0.0, acc2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = c.eval({rng.next_normal()});
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(acc2 / n - mean * mean == doctest::Approx(17.0).epsilon(0.05));
}

TEST_CASE("eval_jet matches functional jets") {
    const Functional x = Functional::coordinate(0);
    const Functional y = Functional::coordinate(1);
    const Functional p = x.pow(3) * y + y * y - 2.0;
    const ChaosExpansion c = ChaosExpansion::from_polynomial(p);
    const std::vector<double> pt{0.7, -1.2};
    auto sp = JetSpace::get(2, 3);
    const Jet a = c.eval_jet(pt, sp);
    const Jet b = p.eval_jet(pt, sp);
    for (std::size_t i = 0; i < sp->size(); ++i)
        CHECK(a.coefficients()[i] == doctest::Approx(b.coefficients()[i]).epsilon(1e-12));
}

TEST_CASE("to_functional round trip") {
    const ChaosExpansion f2 = ChaosExpansion::second_chaos_diagonal({1.0, -0.7, 0.25});
    const Functional f = f2.to_functional();
    Rng rng(29);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> pt{rng.next_normal(), rng.next_normal(), rng.next_normal()};
        CHECK(f.eval(pt) == doctest::Approx(f2.eval(pt)).epsilon(1e-12));
    }
}
