#pragma once

#include "chaoslab/chaos2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chaoslab {

// Ornstein-Uhlenbeck model dX_t = -theta X_t dt + gamma dB_t, X_0 = 0.
struct OUConfig {
    double theta = 1.0;
    double gamma = 1.0;
    double T = 10.0;
    double dt = 0.01;
    std::uint64_t seed = 1;

    void validate() const;
};

// exact Gaussian transition discretization; deterministic per seed
std::vector<double> simulate_ou(const OUConfig& cfg);

// least-squares drift estimate from a discretized path: the Ito integral uses
// left-point sums, the denominator the trapezoid rule
double least_squares_estimate(const std::vector<double>& path, double dt);

// E[F_T^2] = gamma^4/(2 theta) - gamma^4 (1 - e^{-2 theta T}) / (4 theta^2 T)
double exact_f_t_moment(double theta, double gamma, double T);

// eigenvalues of the covariance operator with kernel
// f_T(t,s) = gamma^2 e^{-theta |t-s|} / (2 sqrt(T))
struct EigenRoot {
    int bracket_index = 0;   // i of the containing bracket
    double mu = 0.0;         // frequency of the eigenfunction sin/cos(mu t)
    double lambda = 0.0;
    double lambda_lo = 0.0;  // bracket from the eigenvalue estimates
    double lambda_hi = 0.0;
    double residual = 0.0;   // boundary-condition residual at the root
    bool extra = false;      // second root sharing a bracket with mu = theta inside
};

struct EigenSolveResult {
    std::vector<EigenRoot> roots;      // sorted by descending lambda
    std::vector<double> eigenvalues;   // convenience copy, descending
    double tail_bound_sq = 0.0;        // bound for sum_{i > m} lambda_i^2
    double theta = 0.0, gamma = 0.0, T = 0.0;

    Spectrum spectrum() const;
};

// roots of the boundary elimination (mu^2 - theta^2) sin(mu T) =
// 2 mu theta cos(mu T), bracketed by mu in ((i pi - pi/2)/T, (i pi + pi/2)/T)
// for i = 1..m, with lambda_i = gamma^2 theta / (sqrt(T) (theta^2 + mu_i^2));
// the bracket containing the pole mu = theta holds two roots, both returned
EigenSolveResult kernel_spectrum_sl(double theta, double gamma, double T, int m);

// Nystrom route: Jacobi eigendecomposition of the Gauss-Legendre weighted
// kernel matrix at n and n/2 nodes, Richardson-extrapolated eigenvalues
struct NystromResult {
    std::vector<double> eigenvalues; // descending
    double max_residual = 0.0;
    double trace = 0.0;              // sum of returned eigenvalues
};
NystromResult kernel_spectrum_nystrom(double theta, double gamma, double T, int nodes);

// spectrum truncated so that 2 sum lambda^2 >= (1 - tail_fraction) E[F_T^2]
Spectrum ou_spectrum_for_sampling(double theta, double gamma, double T,
                                  double tail_fraction = 1e-6);

struct RatePoint {
    double T = 0.0;
    double sup_gap = 0.0;
    double max_se = 0.0;
    double exact_fourth_sqrt = 0.0; // sqrt(48 sum lambda^4)
    int spectrum_size = 0;
};

struct RateReport {
    std::vector<RatePoint> points;
    double slope = 0.0;            // log-log fit of sup_gap on T
    double intercept = 0.0;
    double exact_slope = 0.0;      // log-log fit of exact_fourth_sqrt on T
    bool conclusive = true;        // max SE below half the smallest distance
    std::size_t n = 0;
    double sigma2_limit = 0.0;     // gamma^4 / (2 theta)
};

RateReport rate_experiment(double theta, double gamma, const std::vector<double>& T_list,
                           std::size_t n, std::uint64_t seed, const std::vector<double>& grid,
                           int threads = 0);

} // namespace chaoslab
