#pragma once

#include "chaoslab/chaos.hpp"
#include "chaoslab/chaos2.hpp"
#include "chaoslab/engine.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chaoslab {

struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> estimate;
    std::vector<double> std_error;
    std::size_t n = 0;
    std::size_t rejected = 0;
    std::string estimator_tag;

    double integral() const; // trapezoid over the grid
};

// uniform grid a:b:k (k points, inclusive endpoints)
std::vector<double> make_grid(double a, double b, int count);

// f(x) = mean(1_{F > x} delta_u) from precomputed weighted samples
DensityEstimate malliavin_density(const std::vector<WeightedSample>& samples,
                                  const std::vector<double>& grid);

// f^(k)(x) = (-1)^k mean(1_{F > x} G_{k+1}); samples must carry G_{k+1}
DensityEstimate derivative_density(const std::vector<WeightedSample>& samples, int k,
                                   const std::vector<double>& grid);

// pointwise delta(DV / <DF, DV>): V = F gives the first density representation,
// V = -L^{-1} F the second
double delta_density_weight(const ChaosExpansion& F, const ChaosExpansion& V,
                            const std::vector<double>& point);

struct GeneralDensityOptions {
    std::size_t chunk_size = 65536;
    int threads = 0;
    double max_rejection_rate = 0.001;
};

// f(x) = mean(1_{F > x} delta(u_bar)) for a centered polynomial functional,
// u_bar = -w_bar^{-1} D L^{-1} F; rejects samples hitting the division guard
DensityEstimate malliavin_density_general(const ChaosExpansion& F, const std::vector<double>& grid,
                                          std::size_t n, std::uint64_t seed,
                                          const GeneralDensityOptions& opts = {});

// Gaussian-kernel KDE with Silverman bandwidth; baseline only
struct KdeEstimate {
    DensityEstimate estimate;
    double bandwidth = 0.0;
    double bias_allowance = 0.0; // 0.5 bw^2 max|f''| from the kde curve itself
};
KdeEstimate kde_density(const std::vector<double>& values, const std::vector<double>& grid);

struct DistanceReport {
    double sup_gap = 0.0;
    double argmax = 0.0;
    double l1_gap = 0.0;
    double l2_gap = 0.0;
};
DistanceReport uniform_distance(const DensityEstimate& est,
                                const std::function<double(double)>& target);

// multivariate density and derivative estimation via the H_beta recursion
struct MultivariatePoint {
    std::vector<double> x;
    double estimate = 0.0;
    double std_error = 0.0;
};
struct MultivariateDensityEstimate {
    std::vector<MultivariatePoint> points;
    std::size_t n = 0;
    std::size_t rejected = 0;
    int beta_order = 0;
};

// H_beta(F) at a sample point; beta holds zero-based component indices and is
// consumed left to right (appending one divergence per entry)
double h_beta_value(const std::vector<ChaosExpansion>& F, const std::vector<int>& beta,
                    const std::vector<double>& point);

MultivariateDensityEstimate multivariate_density(const std::vector<ChaosExpansion>& F,
                                                 const std::vector<int>& beta,
                                                 const std::vector<std::vector<double>>& grid,
                                                 std::size_t n, std::uint64_t seed,
                                                 const GeneralDensityOptions& opts = {});

// fourth-moment-theorem condition quantities for a family of second-chaos kernels
struct FourthMomentRow {
    double sigma2 = 0.0;            // 2 sum lambda^2
    double fourth_gap = 0.0;        // E[F^4] - 3 sigma^4 = 48 sum lambda^4
    double contraction_norm = 0.0;  // ||f (x)_1 f||
    double var_dfnorm = 0.0;        // Var ||DF||^2 = 32 sum lambda^4
};
struct FourthMomentReport {
    std::vector<FourthMomentRow> rows;
    bool fourth_gap_decreasing = false;
    bool contraction_decreasing = false;
    bool var_decreasing = false;
};
FourthMomentReport fourth_moment_report(const std::vector<Spectrum>& spectra);
FourthMomentReport fourth_moment_report(const std::vector<engine::KernelMatrix>& kernels);

// Monte Carlo ingredients of the general-variable uniform-distance bound
struct GeneralBoundReport {
    double sigma2 = 0.0;
    double norm_f_1s = 0.0;        // (E|F|^s + E ||DF||^s)^{1/s}
    double norm_hess_op_s = 0.0;   // (E ||D^2F||_op^s)^{1/s}
    double m_neg_r = 0.0;          // (E |w_bar|^{-r})^{1/r}
    double bound_skeleton = 0.0;   // C_user * ||F||_{1,s}^2 * || ||D^2F||_op ||_s
    double user_constant = 1.0;
    double r = 0.0, s = 0.0;
    std::size_t n = 0, rejected = 0;
    std::size_t rci_violations = 0; // samples violating the contraction chain
};
GeneralBoundReport general_bound_report(const ChaosExpansion& F, double r, double s,
                                        std::size_t n, std::uint64_t seed,
                                        double user_constant = 1.0, int threads = 0);

} // namespace chaoslab
