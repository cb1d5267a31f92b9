#pragma once

#include <cstdint>
#include <vector>

namespace chaoslab {

// Probabilists' Hermite polynomials He_k, three-term recursion
// H_{q+1}(x) = x H_q(x) - q H_{q-1}(x), H_0 = 1, H_1 = x.
// Orders are capped at kMaxHermiteOrder; nothing downstream needs more.
inline constexpr int kMaxHermiteOrder = 16;

double hermite_eval(int k, double x);

// Two-parameter Hermite H_k(lambda, x) = lambda^{k/2} H_k(x / sqrt(lambda)),
// evaluated by the recursion H_{k+1} = x H_k - k lambda H_{k-1} which extends
// continuously to lambda = 0 (giving x^k). lambda < 0 is rejected.
double hermite_gen_eval(int k, double lambda, double x);

// polynomial form sum_i c_{k,i} x^{k-2i} lambda^i valid for any real lambda;
// the G_k decomposition feeds it D_u delta_u, which can be negative
double hermite_gen_eval_any(int k, double lambda, double x);

// d/dx H_k(lambda, x) = k H_{k-1}(lambda, x)
double hermite_gen_deriv_x(int k, double lambda, double x);

// d/dlambda H_k(lambda, x) = sum_i i c_{k,i} x^{k-2i} lambda^{i-1}
double hermite_gen_deriv_lambda(int k, double lambda, double x);

// Exact integer coefficients of H_k(x) = sum_{0<=i<=k/2} c_{k,i} x^{k-2i}.
struct HermiteCoeffs {
    int order = 0;
    std::vector<std::int64_t> c; // c[i] multiplies x^{k-2i}

    static HermiteCoeffs make(int k);

    // sum_i c_i x^{k-2i} lambda^i  (the polynomial form of H_k(lambda, x))
    double reconstruct(double lambda, double x) const;
};

// Exact integer coefficients of the inverse expansion
// x^k = sum_j b_{k,j} H_j(x), b nonzero only for j = k, k-2, ...
std::vector<std::int64_t> monomial_in_hermite_basis(int k);

// k-th derivative of the N(0, sigma^2) density,
// phi^(k)(x) = (-1)^k sigma^{-k} He_k(x/sigma) phi_sigma(x).
double normal_density_derivative(int k, double sigma, double x);

} // namespace chaoslab
