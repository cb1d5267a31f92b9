#include <doctest.h>

#include "chaoslab/rng.hpp"

#include <cmath>
#include <vector>

using namespace chaoslab;

TEST_CASE("rng determinism per (seed, stream)") {
    Rng a(42, 7), b(42, 7), c(42, 8);
    bool same = true, differ = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        same = same && (x == b.next_u64());
        differ = differ || (x != c.next_u64());
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("normal moments roughly match") {
    Rng rng(1);
    const int n = 200000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        m1 += z;
        m2 += z * z;
        m4 += z * z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::fabs(m1) < 0.01);
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m4 == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniform stays inside (0,1)") {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}
