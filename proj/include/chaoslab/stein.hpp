#pragma once

#include "chaoslab/chaos.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chaoslab {

// Test function h for the Stein equation f' - (x/sigma^2) f = h - E[h(N)].
// Polynomial and indicator-times-polynomial parts integrate in closed form
// against the normal weight; a tabulated callable falls back to quadrature
// and must declare its growth bound |h(x)| <= a |x|^k + b.
struct TestFunction {
    std::vector<double> poly; // coefficients of x^j

    struct IndicatorTerm {
        double z = 0.0;            // active on {x > z}
        std::vector<double> poly;  // coefficients of x^j
    };
    std::vector<IndicatorTerm> indicators;

    std::function<double(double)> tabulated; // optional
    double growth_a = 0.0;
    int growth_k = 0;
    double growth_b = 0.0;

    static TestFunction polynomial(std::vector<double> coeffs);
    static TestFunction indicator_hermite(double z, int k); // 1_{x>z} He_k(x)
    static TestFunction from_callable(std::function<double(double)> h, double a, int k, double b);

    bool closed_form() const { return !tabulated; }
    double eval(double x) const;
    std::string tag() const;
};

struct SteinSolution {
    std::string h_tag;
    double sigma = 1.0;
    double h_mean = 0.0; // E[h(N)]
    std::vector<double> grid;
    std::vector<double> f;
    std::vector<double> f_prime;
};

// E[h(N)] for N ~ N(0, sigma^2); closed form where possible
double stein_h_mean(const TestFunction& h, double sigma);

// the decaying solution of the Stein equation at one point
double stein_f(const TestFunction& h, double sigma, double x);

SteinSolution solve_stein(const TestFunction& h, double sigma, const std::vector<double>& grid);

// s_k(x) = e^{x^2/(2 sigma^2)} int_{|x|}^inf y^k e^{-y^2/(2 sigma^2)} dy
double envelope_sk(int k, double sigma, double x);

struct MsIdentityReport {
    double sigma2 = 0.0;
    double lhs_mean = 0.0, lhs_se = 0.0; // E[sigma^2 f'(F) - F f(F)]
    double rhs_mean = 0.0, rhs_se = 0.0; // E[f'(F)(sigma^2 - <DF, -DL^{-1}F>)]
    double diff_mean = 0.0, diff_se = 0.0;
    double z_score = 0.0;
    std::size_t n = 0;
};

// Monte Carlo check of the integration-by-parts identity behind the
// Malliavin-Stein method, for a centered polynomial functional F.
MsIdentityReport ms_identity_check(const ChaosExpansion& F, const TestFunction& h,
                                   std::size_t n, std::uint64_t seed, int threads = 0);

} // namespace chaoslab
