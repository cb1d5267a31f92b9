#pragma once

#include "chaoslab/dujet.hpp"
#include "chaoslab/jet.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoslab {

// Eigenvalues of the Hilbert-Schmidt kernel of a second-chaos variable
// F = sum_i lambda_i (X_i^2 - 1), stored sorted by descending |lambda_i|.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::optional<int> tail_count;     // of truncated eigenvalues
    std::optional<double> tail_bound;  // uniform bound for them

    explicit Spectrum(std::vector<double> lam);
    Spectrum() = default;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    int nonzero_count() const;
    double sum_pow(int p) const; // sum_i lambda_i^p
};

struct ExactMoments {
    double sigma2 = 0.0;           // E[F^2] = 2 sum lambda^2
    double var_dfnorm = 0.0;       // Var(||DF||^2) = 32 sum lambda^4
    double excess_kurtosis = 0.0;  // E[F^4] - 3 sigma^4 = 48 sum lambda^4
};
ExactMoments exact_moments(const Spectrum& s);

// One Monte Carlo draw of F with its Malliavin weights; g[k] = G_k.
struct WeightedSample {
    double F = 0.0;
    double w = 0.0;           // ||DF||^2
    double delta_u = 0.0;
    double du_delta_u = 0.0;
    std::vector<double> g;    // G_0..G_K
    std::vector<double> point; // kept only when requested
};

struct SampleOptions {
    int max_gk_order = 1;      // highest G_k carried
    bool store_points = false;
    std::size_t chunk_size = 65536;
    int threads = 0;           // 0 = hardware
};

// i.i.d. samples, deterministic for fixed (seed, chunk_size) under any thread
// count; throws on an all-zero spectrum.
std::vector<WeightedSample> sample(const Spectrum& s, std::size_t n, std::uint64_t seed,
                                   const SampleOptions& opts = {});

// closed-form per-point weights used by the sampler (also unit-test oracles)
struct ClosedFormWeights {
    double F, w, delta_u, du_delta_u;
    std::vector<double> g; // G_0..G_K
    std::vector<double> t; // T_1..T_K (t[k-1] = T_k)
    std::vector<double> du_pow_delta; // D_u^j delta_u, j = 0..K
};
ClosedFormWeights closed_form_weights(const Spectrum& s, const std::vector<double>& x, int max_gk);

// E[(sum lambda_i^2 X_i^2)^{-alpha}] by quadrature of the exact product
// integral; throws divergence_error when the nonzero count is <= 2 alpha.
struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeMomentResult {
    double value = 0.0;
    double quad_abs_error = 0.0;
    // ingredients of the reference bound C_alpha N^{-alpha} |lambda_N|^{-2 alpha}
    double bound_factor = 0.0;   // N^{-alpha} |lambda_N|^{-2 alpha}
    int bound_index = 0;         // the N used (count of nonzero eigenvalues)
    double bound_with_calpha = 0.0;
    bool bound_holds = false;
};
NegativeMomentResult negative_moment(const Spectrum& s, double alpha, double c_alpha = 1.0);

// M_beta(F) = (E[||DF||^{-beta}])^{1/beta} = (2^{-beta} E[G^{-beta}])^{1/beta}
double m_beta(const Spectrum& s, double beta);

struct BoundReport {
    double sigma2 = 0.0;
    double m6 = 0.0;
    double fourth_moment_gap = 0.0;      // E[F^4] - 3 sigma^4
    double sqrt_gap = 0.0;               // sqrt of the above
    double constant = 0.0;               // C = Cq (sigma^-1 M6^2 + M6^3 + sigma^-3)
    double bound = 0.0;                  // C * sqrt_gap
    double user_cq = 1.0;
};
// throws certificate_unavailable when M6 does not exist for the spectrum
struct certificate_unavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
BoundReport certificate_qrate(const Spectrum& s, double cq = 1.0);

struct I2ThresholdChecks {
    double sigma2_lower = 1e-12; // condition (i): 2 sum lambda^2 bounded away from 0
    double sum4_limit = 0.0;     // condition (ii): trend target
    double inf_positive = 1e-12; // condition (iii): inf_n sup ... > this
};

struct I2ConditionRow {
    double two_sum_sq = 0.0;   // 2 sum lambda^2
    double sum_fourth = 0.0;   // sum lambda^4
    double sup_tail = 0.0;     // sup_{i > i0} |lambda_i| sqrt(i)
};

struct I2ConditionReport {
    int m = 0;
    int tail_index = 0; // i0 = 6m + 6(floor(m/2) v 1)
    std::vector<I2ConditionRow> rows;
    double inf_sup_tail = 0.0;
    bool cond_i = false;   // last 2 sum lambda^2 above threshold
    bool cond_ii = false;  // sum lambda^4 decreasing toward 0
    bool cond_iii = false; // inf of sup_tail positive
};
I2ConditionReport check_i2th_conditions(const std::vector<Spectrum>& spectra, int m,
                                        const I2ThresholdChecks& thresholds = {});

} // namespace chaoslab
