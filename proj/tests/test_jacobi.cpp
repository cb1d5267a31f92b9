#include <doctest.h>

#include "chaoslab/jacobi.hpp"
#include "chaoslab/rng.hpp"

#include <cmath>

using namespace chaoslab;
using engine::KernelMatrix;

TEST_CASE("two by two closed form") {
    KernelMatrix a;
    a.n = 2;
    a.a = {2.0, 1.0, 1.0, 2.0};
    const JacobiResult r = jacobi_eigenvalues(a);
    CHECK(r.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(r.max_residual < 1e-12);
}

TEST_CASE("random symmetric matrices: trace and residuals") {
    Rng rng(91);
    for (int n : {5, 20, 60}) {
        KernelMatrix a;
        a.n = n;
        a.a.assign(n * n, 0.0);
        double trace = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = rng.next_normal();
                a.at(i, j) = v;
                a.at(j, i) = v;
                if (i == j) trace += v;
            }
        const JacobiResult r = jacobi_eigenvalues(a);
        double sum = 0.0;
        for (double ev : r.eigenvalues) sum += ev;
        CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
        CHECK(r.max_residual < 1e-8);
        // eigenvalues sorted descending
        for (std::size_t i = 1; i < r.eigenvalues.size(); ++i)
            CHECK(r.eigenvalues[i] <= r.eigenvalues[i - 1]);
    }
}

TEST_CASE("operator norm") {
    KernelMatrix a = KernelMatrix::diagonal({-3.0, 2.0, 0.5});
    CHECK(jacobi_operator_norm(a) == doctest::Approx(3.0));
}
