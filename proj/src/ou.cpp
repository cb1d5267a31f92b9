#include "chaoslab/ou.hpp"
#include "chaoslab/density.hpp"
#include "chaoslab/jacobi.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaoslab {

void OUConfig::validate() const {
    if (theta <= 0.0) throw std::invalid_argument("OUConfig: theta <= 0");
    if (gamma <= 0.0) throw std::invalid_argument("OUConfig: gamma <= 0");
    if (T <= 0.0) throw std::invalid_argument("OUConfig: T <= 0");
    if (dt <= 0.0 || dt > T / 100.0) throw std::invalid_argument("OUConfig: require dt <= T/100");
}

std::vector<double> simulate_ou(const OUConfig& cfg) {
    cfg.validate();
    const std::size_t steps = static_cast<std::size_t>(std::llround(cfg.T / cfg.dt));
    std::vector<double> path(steps + 1, 0.0);
    const double a = std::exp(-cfg.theta * cfg.dt);
    const double s = cfg.gamma * std::sqrt((1.0 - a * a) / (2.0 * cfg.theta));
    Rng rng(cfg.seed);
    double x = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        x = a * x + s * rng.next_normal();
        path[i + 1] = x;
    }
    return path;
}

double least_squares_estimate(const std::vector<double>& path, double dt) {
    if (path.size() < 101) throw std::invalid_argument("least_squares_estimate: too few steps");
    double ito = 0.0, quad = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        ito += path[i] * (path[i + 1] - path[i]);
        quad += 0.5 * (path[i] * path[i] + path[i + 1] * path[i + 1]) * dt;
    }
    if (quad <= 0.0) throw std::invalid_argument("least_squares_estimate: degenerate path");
    return -ito / quad;
}

double exact_f_t_moment(double theta, double gamma, double T) {
    if (theta <= 0.0 || gamma <= 0.0 || T <= 0.0)
        throw std::invalid_argument("exact_f_t_moment: parameters must be positive");
    const double g4 = std::pow(gamma, 4);
    return g4 / (2.0 * theta) - g4 * (1.0 - std::exp(-2.0 * theta * T)) / (4.0 * theta * theta * T);
}

namespace {

double boundary_fn(double mu, double theta, double T) {
    const double a = mu * T;
    return (mu * mu - theta * theta) * std::sin(a) - 2.0 * mu * theta * std::cos(a);
}

// residual scaled by the equation's magnitude at the root
double boundary_residual(double mu, double theta, double T) {
    return std::fabs(boundary_fn(mu, theta, T)) / (1.0 + mu * mu + theta * theta);
}

double bisect_root(double lo, double hi, double theta, double T) {
    double flo = boundary_fn(lo, theta, T);
    const double fhi = boundary_fn(hi, theta, T);
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::runtime_error("kernel_spectrum_sl: no sign change in bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = boundary_fn(mid, theta, T);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double lambda_of_mu(double mu, double theta, double gamma, double T) {
    return gamma * gamma * theta / (std::sqrt(T) * (theta * theta + mu * mu));
}

} // namespace

EigenSolveResult kernel_spectrum_sl(double theta, double gamma, double T, int m) {
    if (m < 1) throw std::invalid_argument("kernel_spectrum_sl: m < 1");
    if (theta <= 0.0 || gamma <= 0.0 || T <= 0.0)
        throw std::invalid_argument("kernel_spectrum_sl: parameters must be positive");
    EigenSolveResult out;
    out.theta = theta;
    out.gamma = gamma;
    out.T = T;
    // extra root below the first bracket when the pole mu = theta sits there
    const double first_lo = (kPi - kPi / 2.0) / T;
    if (theta < first_lo) {
        const double r = bisect_root(theta, first_lo, theta, T);
        EigenRoot er;
        er.bracket_index = 0;
        er.mu = r;
        er.lambda = lambda_of_mu(r, theta, gamma, T);
        er.lambda_lo = lambda_of_mu(first_lo, theta, gamma, T);
        er.lambda_hi = lambda_of_mu(theta, theta, gamma, T);
        er.residual = boundary_residual(r, theta, T);
        er.extra = true;
        out.roots.push_back(er);
    }
    for (int i = 1; i <= m; ++i) {
        const double lo = (i * kPi - kPi / 2.0) / T;
        const double hi = (i * kPi + kPi / 2.0) / T;
        const double lam_lo = lambda_of_mu(hi, theta, gamma, T);
        const double lam_hi = lambda_of_mu(lo, theta, gamma, T);
        auto push = [&](double root, bool extra) {
            EigenRoot er;
            er.bracket_index = i;
            er.mu = root;
            er.lambda = lambda_of_mu(root, theta, gamma, T);
            er.lambda_lo = lam_lo;
            er.lambda_hi = lam_hi;
            er.residual = boundary_residual(root, theta, T);
            er.extra = extra;
            out.roots.push_back(er);
        };
        if (lo < theta && theta < hi) {
            // the pole of 2 mu theta / (mu^2 - theta^2) splits the bracket;
            // each half holds one root
            const double gp = boundary_fn(theta, theta, T);
            if (gp == 0.0) {
                push(theta, true);
            } else {
                push(bisect_root(lo, theta, theta, T), false);
                push(bisect_root(theta, hi, theta, T), true);
            }
        } else {
            push(bisect_root(lo, hi, theta, T), false);
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const EigenRoot& a, const EigenRoot& b) { return a.lambda > b.lambda; });
    out.eigenvalues.reserve(out.roots.size());
    for (const auto& r : out.roots) out.eigenvalues.push_back(r.lambda);
    // tail bound: sum over i > m of the upper bracket values, squared
    double tail = 0.0;
    const double c = gamma * gamma * theta / std::sqrt(T);
    for (int i = m + 1;; ++i) {
        const double mu = (i * kPi - kPi / 2.0) / T;
        const double ub = c / (theta * theta + mu * mu);
        tail += ub * ub;
        if (ub * ub < 1e-18 * tail || i > m + 10'000'000) {
            // integral comparison for the remaining terms, valid upper bound
            const double ii = static_cast<double>(i) - 1.0;
            tail += c * c * std::pow(T / kPi, 4) / (3.0 * ii * ii * ii);
            break;
        }
    }
    out.tail_bound_sq = tail;
    return out;
}

Spectrum EigenSolveResult::spectrum() const {
    return Spectrum(eigenvalues);
}

NystromResult kernel_spectrum_nystrom(double theta, double gamma, double T, int nodes) {
    if (nodes < 16) throw std::invalid_argument("kernel_spectrum_nystrom: nodes < 16");
    const double c = gamma * gamma / (2.0 * std::sqrt(T));
    auto eig_at = [&](int n) {
        const QuadratureRule gl = gauss_legendre(n, 0.0, T);
        engine::KernelMatrix a;
        a.n = n;
        a.a.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            const double swi = std::sqrt(gl.weights[i]);
            for (int j = 0; j <= i; ++j) {
                const double v = swi * std::sqrt(gl.weights[j]) * c *
                                 std::exp(-theta * std::fabs(gl.nodes[i] - gl.nodes[j]));
                a.at(i, j) = v;
                a.at(j, i) = v;
            }
        }
        return jacobi_eigenvalues(a, 1e-12, 64);
    };
    const int n_half = nodes / 2;
    const JacobiResult full = eig_at(nodes);
    const JacobiResult half = eig_at(n_half);
    NystromResult out;
    out.max_residual = std::max(full.max_residual, half.max_residual);
    out.eigenvalues.resize(nodes);
    // quadrature error is O(n^-2); the two-grid extrapolation cancels the
    // leading term and keeps the exact trace (both traces equal c*T)
    for (int i = 0; i < nodes; ++i) {
        const double lo = i < n_half ? half.eigenvalues[i] : 0.0;
        out.eigenvalues[i] = (4.0 * full.eigenvalues[i] - lo) / 3.0;
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<double>());
    double tr = 0.0;
    for (double v : out.eigenvalues) tr += v;
    out.trace = tr;
    return out;
}

Spectrum ou_spectrum_for_sampling(double theta, double gamma, double T, double tail_fraction) {
    const double target = (1.0 - tail_fraction) * exact_f_t_moment(theta, gamma, T);
    // generous initial bracket count, extended on demand
    int m = static_cast<int>(std::ceil(theta * T * 4.0)) + 64;
    for (;;) {
        const EigenSolveResult es = kernel_spectrum_sl(theta, gamma, T, m);
        std::vector<double> keep;
        double acc = 0.0;
        for (double l : es.eigenvalues) {
            keep.push_back(l);
            acc += 2.0 * l * l;
            if (acc >= target) {
                Spectrum s(keep);
                // truncation record; only reports consume it, never sampling
                s.tail_count = static_cast<int>(es.eigenvalues.size() - keep.size());
                s.tail_bound = keep.back();
                return s;
            }
        }
        m *= 2;
        if (m > 10'000'000) throw std::runtime_error("ou_spectrum_for_sampling: did not converge");
    }
}

RateReport rate_experiment(double theta, double gamma, const std::vector<double>& T_list,
                           std::size_t n, std::uint64_t seed, const std::vector<double>& grid,
                           int threads) {
    if (T_list.size() < 4) throw std::invalid_argument("rate_experiment: need at least 4 horizons");
    for (std::size_t i = 1; i < T_list.size(); ++i)
        if (T_list[i] <= T_list[i - 1])
            throw std::invalid_argument("rate_experiment: T list must be increasing");
    RateReport rep;
    rep.n = n;
    rep.sigma2_limit = std::pow(gamma, 4) / (2.0 * theta);
    const double sigma_limit = std::sqrt(rep.sigma2_limit);
    SampleOptions sopt;
    sopt.max_gk_order = 1;
    sopt.threads = threads;
    for (std::size_t ti = 0; ti < T_list.size(); ++ti) {
        const double T = T_list[ti];
        const Spectrum spec = ou_spectrum_for_sampling(theta, gamma, T);
        const auto samples = sample(spec, n, seed + ti, sopt);
        const DensityEstimate est = malliavin_density(samples, grid);
        const DistanceReport dist =
            uniform_distance(est, [&](double x) { return normal_pdf(x, sigma_limit); });
        RatePoint pt;
        pt.T = T;
        pt.sup_gap = dist.sup_gap;
        pt.max_se = *std::max_element(est.std_error.begin(), est.std_error.end());
        pt.exact_fourth_sqrt = std::sqrt(48.0 * spec.sum_pow(4));
        pt.spectrum_size = spec.size();
        rep.points.push_back(pt);
    }
    // log-log least squares
    auto fit = [&](auto value) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double m = static_cast<double>(rep.points.size());
        for (const auto& p : rep.points) {
            const double lx = std::log(p.T), ly = std::log(value(p));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / m;
        return std::make_pair(slope, intercept);
    };
    auto [slope, intercept] = fit([](const RatePoint& p) { return p.sup_gap; });
    rep.slope = slope;
    rep.intercept = intercept;
    rep.exact_slope = fit([](const RatePoint& p) { return p.exact_fourth_sqrt; }).first;
    double min_gap = rep.points.front().sup_gap;
    double max_se = 0.0;
    for (const auto& p : rep.points) {
        min_gap = std::min(min_gap, p.sup_gap);
        max_se = std::max(max_se, p.max_se);
    }
    rep.conclusive = max_se <= 0.5 * min_gap;
    return rep;
}

} // namespace chaoslab
