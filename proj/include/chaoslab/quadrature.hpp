#pragma once

#include <functional>
#include <vector>

namespace chaoslab {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0; // estimated
    bool converged = false;
    int intervals = 0;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 1e-14);

// Integral over (0, inf) via the substitution y = t / (1 - t).
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double rel_tol = 1e-10, double abs_tol = 1e-14);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Gauss-Hermite rule for the probabilists' weight e^{-x^2/2} / sqrt(2 pi):
// sum_i w_i f(x_i) ~ E[f(N)] with N standard normal; weights sum to 1.
QuadratureRule gauss_hermite_prob(int n);

} // namespace chaoslab
