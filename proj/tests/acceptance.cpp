// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, not tuned at runtime.

#include "chaoslab/chaos.hpp"
#include "chaoslab/chaos2.hpp"
#include "chaoslab/density.hpp"
#include "chaoslab/engine.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/jacobi.hpp"
#include "chaoslab/ou.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/special.hpp"
#include "chaoslab/stein.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace chaoslab;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

std::vector<Criterion>& registry() {
    static std::vector<Criterion> r;
    return r;
}

bool check(bool ok, std::string& detail, const std::string& what) {
    if (!ok) detail += (detail.empty() ? "" : "; ") + what;
    return ok;
}

// ---------------------------------------------------------------- hermite

bool crit_hermite(std::string& detail) {
    bool ok = true;
    Rng rng(2024);
    // recursion against exact integer coefficients, 1e-12 relative
    for (int k = 0; k <= 8; ++k) {
        const HermiteCoeffs hc = HermiteCoeffs::make(k);
        for (double lambda : {0.5, 1.0, 2.0}) {
            for (int rep = 0; rep < 8; ++rep) {
                const double x = 2.5 * rng.next_normal();
                const double a = hermite_gen_eval(k, lambda, x);
                const double b = hc.reconstruct(lambda, x);
                ok &= check(std::fabs(a - b) <= 1e-12 * (std::fabs(a) + std::fabs(b) + 1.0),
                            detail, "recursion vs coefficients");
            }
        }
    }
    // derivative identity, finite differences at 1e-6
    for (int k = 1; k <= 8; ++k)
        for (double lambda : {0.5, 1.0, 2.0})
            for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
                const double h = 1e-6;
                const double fd = (hermite_gen_eval(k, lambda, x + h) -
                                   hermite_gen_eval(k, lambda, x - h)) /
                                  (2.0 * h);
                const double an = k * hermite_gen_eval(k - 1, lambda, x);
                ok &= check(std::fabs(fd - an) <= 1e-6 * (1.0 + std::fabs(an)), detail,
                            "derivative identity");
            }
    // generalized scaling lambda^{k/2} H_k(x/sqrt(lambda))
    for (int k = 0; k <= 8; ++k)
        for (double lambda : {0.25, 1.0, 4.0})
            for (double x : {-1.5, 0.3, 2.0}) {
                const double a = hermite_gen_eval(k, lambda, x);
                const double b = std::pow(lambda, 0.5 * k) * hermite_eval(k, x / std::sqrt(lambda));
                ok &= check(std::fabs(a - b) <= 1e-12 * (std::fabs(a) + std::fabs(b) + 1.0),
                            detail, "scaling identity");
            }
    // orthogonality within 1e-9 under Gauss-Hermite quadrature
    const QuadratureRule gh = gauss_hermite_prob(48);
    for (int j = 0; j <= 8; ++j)
        for (int k = 0; k <= 8; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i < gh.nodes.size(); ++i)
                acc += gh.weights[i] * hermite_eval(j, gh.nodes[i]) * hermite_eval(k, gh.nodes[i]);
            double expect = 0.0;
            if (j == k) {
                expect = 1.0;
                for (int i = 2; i <= k; ++i) expect *= i;
            }
            ok &= check(std::fabs(acc - expect) <= 1e-9, detail, "orthogonality");
        }
    return ok;
}

// ----------------------------------------------------------------- engine

bool crit_engine(std::string& detail) {
    bool ok = true;
    const Functional x = Functional::coordinate(0);
    const Functional y = Functional::coordinate(1);
    // duality E[delta(u) G] = E[<DG, u>], five cases, n = 1e5, 3 SE
    struct Pair {
        std::vector<Functional> u;
        Functional g;
    };
    std::vector<Pair> cases;
    cases.push_back({{Functional::constant(1.0), Functional::constant(-0.5)}, x * y});
    cases.push_back({{y, x}, x * x});
    cases.push_back({{x * y, y * y - 1.0}, x + y});
    cases.push_back({{Functional::constant(1.0) / (x * x + 3.0), y}, x * y * y});
    cases.push_back({{x.pow(3), Functional::constant(2.0)}, y * y});
    Rng rng(501);
    for (const auto& cs : cases) {
        const int n = 100000;
        double sl = 0, sl2 = 0, sr = 0, sr2 = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<double> pt{rng.next_normal(), rng.next_normal()};
            const double lhs = engine::divergence(cs.u, pt) * cs.g.eval(pt);
            const auto dg = engine::malliavin_derivative(cs.g, pt);
            double rhs = 0.0;
            for (std::size_t j = 0; j < pt.size(); ++j) rhs += dg[j] * cs.u[j].eval(pt);
            sl += lhs;
            sl2 += lhs * lhs;
            sr += rhs;
            sr2 += rhs * rhs;
        }
        const double ml = sl / n, mr = sr / n;
        const double se = std::sqrt((sl2 / n - ml * ml) / n + (sr2 / n - mr * mr) / n);
        ok &= check(std::fabs(ml - mr) <= 3.0 * se + 1e-12, detail, "duality");
    }
    // delta D F = -L F pointwise at 100 points, 1e-9
    const Functional F = x.pow(3) * y + 2.0 * (y * y - 1.0) - x + 0.7;
    const ChaosExpansion LF = ChaosExpansion::from_polynomial(F).apply_L();
    for (int i = 0; i < 100; ++i) {
        std::vector<double> pt{rng.next_normal(), rng.next_normal()};
        ok &= check(std::fabs(engine::delta_of_gradient(F, pt) + LF.eval(pt)) <= 1e-9, detail,
                    "delta D = -L");
    }
    // L L^{-1} F = F - E[F] exact on coefficients
    const ChaosExpansion c = ChaosExpansion::from_polynomial(x.pow(4) + x * y + 3.0 * y - 2.0);
    const ChaosExpansion back = c.apply_L_inverse().apply_L();
    for (const auto& [deg, coeff] : c.terms()) {
        int grade = 0;
        for (int d : deg) grade += d;
        const double want = grade == 0 ? 0.0 : coeff;
        const auto it = back.terms().find(deg);
        const double got = it == back.terms().end() ? 0.0 : it->second;
        ok &= check(got == want, detail, "L Linv exactness");
    }
    return ok;
}

// ---------------------------------------------------------------- lemma gk

bool crit_gk(std::string& detail) {
    bool ok = true;
    std::vector<double> lam{1.0, 0.8, 0.6, 0.5, 0.4, 0.3, 0.25, 0.2};
    const Functional F = ChaosExpansion::second_chaos_diagonal(lam).to_functional();
    Rng rng(777);
    double worst = 0.0;
    for (int p = 0; p < 1000; ++p) {
        std::vector<double> pt(8);
        for (auto& xv : pt) xv = rng.next_normal();
        const engine::GkReport r = engine::gk_full(F, 4, pt);
        for (int k = 1; k <= 5; ++k) {
            const double hk = hermite_gen_eval_any(k, r.du_delta_u, r.delta_u);
            worst = std::max(worst, std::fabs(r.g[k] - hk - r.t[k - 1]));
        }
        // T_1 = T_2 = 0; T_3 = D_u^2 delta_u;
        // T_4 = 4 delta_u D_u^2 delta_u - D_u^3 delta_u (coefficients forced
        // by the recursion; the displayed unit-coefficient form is a typo)
        ok &= check(r.t[0] == 0.0 && r.t[1] == 0.0, detail, "T1 T2 vanish");
        const double d0 = r.du_pow_delta_u[0];
        const double d2 = r.du_pow_delta_u[2];
        const double d3 = r.du_pow_delta_u[3];
        ok &= check(std::fabs(r.t[2] - d2) <= 1e-8 * (1.0 + std::fabs(d2)), detail, "T3 form");
        ok &= check(std::fabs(r.t[3] - (4.0 * d0 * d2 - d3)) <=
                        1e-8 * (1.0 + std::fabs(r.t[3])),
                    detail, "T4 form");
    }
    ok &= check(worst <= 1e-8, detail, "Gk residual " + std::to_string(worst));
    // first chaos: T_k identically zero
    const Functional N1 = ChaosExpansion::first_chaos({0.6, 0.8}).to_functional();
    for (int p = 0; p < 50; ++p) {
        std::vector<double> pt{rng.next_normal(), rng.next_normal()};
        for (double tv : engine::tk_sequence(N1, 4, pt))
            ok &= check(std::fabs(tv) <= 1e-10, detail, "first-chaos T");
    }
    return ok;
}

// ---------------------------------------------------------- negative moments

bool crit_negmoment(std::string& detail) {
    bool ok = true;
    for (int N : {6, 8, 12}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const Spectrum s(std::vector<double>(N, 1.0));
            const double expect =
                std::pow(2.0, -alpha) * std::tgamma(0.5 * N - alpha) / std::tgamma(0.5 * N);
            const double got = negative_moment(s, alpha).value;
            ok &= check(std::fabs(got - expect) <= 1e-8 * expect, detail,
                        "chi-square closed form");
        }
    }
    // divergence exactly when the nonzero count is <= 2 alpha
    for (int n0 : {1, 2, 3, 4, 5}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            bool threw = false;
            try {
                negative_moment(Spectrum(std::vector<double>(n0, 1.0)), alpha);
            } catch (const divergence_error&) {
                threw = true;
            }
            ok &= check(threw == (n0 <= 2.0 * alpha), detail, "divergence condition");
        }
    }
    // mixed spectrum vs n = 1e7 Monte Carlo
    const Spectrum s({1.0, 0.5, 0.5, 0.25, 0.25, 0.25});
    const double quad = negative_moment(s, 1.0).value;
    Rng rng(901);
    const std::size_t n = 10000000;
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double g = 0.0;
        for (double l : s.eigenvalues) {
            const double z = rng.next_normal();
            g += l * l * z * z;
        }
        const double v = 1.0 / g;
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc2 / n - mean * mean) / n);
    ok &= check(std::fabs(quad - mean) <= 3.0 * se, detail, "monte carlo agreement");
    return ok;
}

// ------------------------------------------------------------------ density

bool crit_density(std::string& detail) {
    bool ok = true;
    const double sigma = 1.0;
    const auto grid = make_grid(-6.0 * sigma, 6.0 * sigma, 241);
    // first-chaos estimate within 3 SE of phi at >= 95% of points, 20 seeds
    std::size_t within = 0, total = 0;
    // beyond ~4.8 sigma the tail holds no samples at n = 1e6, so the sample
    // standard error degenerates to zero there; the absolute floor is the
    // estimator's own resolution (ten per-sample units over n), far below any
    // meaningful deviation on this grid
    const double resolution_floor = 1e-5;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto samples = testing::sample_first_chaos(sigma, 1000000, seed, 1);
        const DensityEstimate est = malliavin_density(samples, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ++total;
            if (std::fabs(est.estimate[i] - normal_pdf(grid[i], sigma)) <=
                3.0 * est.std_error[i] + resolution_floor)
                ++within;
        }
        if (seed == 1)
            ok &= check(std::fabs(est.integral() - 1.0) <= 0.02, detail, "integral near one");
    }
    ok &= check(within >= static_cast<std::size_t>(0.95 * total), detail,
                "3 SE coverage " + std::to_string(static_cast<double>(within) / total));
    // per-sample integrand agreement on pure chaos, 1e-10
    const ChaosExpansion F2 = ChaosExpansion::second_chaos_diagonal({1.0, 0.5, 0.25});
    const ChaosExpansion V = F2.apply_L_inverse().scaled(-1.0);
    Rng rng(903);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> pt{rng.next_normal(), rng.next_normal(), rng.next_normal()};
        const double d1 = delta_density_weight(F2, F2, pt);
        const double d3 = delta_density_weight(F2, V, pt);
        ok &= check(std::fabs(d1 - d3) <= 1e-10 * (1.0 + std::fabs(d1)), detail,
                    "integrand identity");
    }
    // derivative estimates k <= 2 against finite differences of the lower
    // order, independent sample sets so the error bars combine cleanly
    const auto s_a = testing::sample_first_chaos(sigma, 1000000, 91, 3);
    const auto s_b = testing::sample_first_chaos(sigma, 1000000, 92, 3);
    const DensityEstimate f0 = malliavin_density(s_a, grid);
    const DensityEstimate f1a = derivative_density(s_a, 1, grid);
    const DensityEstimate f1b = derivative_density(s_b, 1, grid);
    const DensityEstimate f2b = derivative_density(s_b, 2, grid);
    const double dx = grid[1] - grid[0];
    for (int k = 1; k <= 2; ++k) {
        const DensityEstimate& base = (k == 1) ? f0 : f1a;
        const DensityEstimate& target = (k == 1) ? f1b : f2b;
        std::size_t good = 0, count = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double fd = (base.estimate[i + 1] - base.estimate[i - 1]) / (2.0 * dx);
            const double se_fd = std::sqrt(base.std_error[i + 1] * base.std_error[i + 1] +
                                           base.std_error[i - 1] * base.std_error[i - 1]) /
                                 (2.0 * dx);
            const double se = std::sqrt(se_fd * se_fd + target.std_error[i] * target.std_error[i]);
            const double trunc = dx * dx / 6.0; // |f'''| = O(1) on this scale
            ++count;
            if (std::fabs(fd - target.estimate[i]) <= 3.0 * se + trunc) ++good;
        }
        ok &= check(good >= static_cast<std::size_t>(0.95 * count), detail,
                    "derivative consistency k=" + std::to_string(k));
    }
    return ok;
}

// ------------------------------------------------------------- multivariate

bool crit_multivariate(std::string& detail) {
    bool ok = true;
    std::vector<ChaosExpansion> N{ChaosExpansion::first_chaos({1.0, 0.0}),
                                  ChaosExpansion::first_chaos({0.0, 1.0})};
    Rng rng(905);
    std::vector<std::vector<int>> betas{{},      {0},    {1},       {0, 0},    {0, 1},
                                        {1, 1},  {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    for (const auto& beta : betas) {
        std::vector<int> chain{0, 1};
        chain.insert(chain.end(), beta.begin(), beta.end());
        for (int rep = 0; rep < 30; ++rep) {
            std::vector<double> pt{rng.next_normal(), rng.next_normal()};
            int k0 = 0, k1 = 0;
            for (int b : chain) (b == 0 ? k0 : k1)++;
            const double expect = hermite_eval(k0, pt[0]) * hermite_eval(k1, pt[1]);
            ok &= check(std::fabs(h_beta_value(N, chain, pt) - expect) <= 1e-10, detail,
                        "H_beta product form");
        }
    }
    // 2-d standard normal density at nine grid points, n = 1e6, 3 SE
    std::vector<std::vector<double>> grid;
    for (double a : {-1.0, 0.0, 1.0})
        for (double b : {-1.0, 0.0, 1.0}) grid.push_back({a, b});
    const MultivariateDensityEstimate est = multivariate_density(N, {}, grid, 1000000, 907);
    for (const auto& p : est.points) {
        const double target = normal_pdf(p.x[0], 1.0) * normal_pdf(p.x[1], 1.0);
        ok &= check(std::fabs(p.estimate - target) <= 3.0 * p.std_error, detail,
                    "2d density point");
    }
    return ok;
}

// -------------------------------------------------------------------- stein

bool crit_stein(std::string& detail) {
    bool ok = true;
    // h(x) = x solves to -sigma^2; h(x) = x^2 (sigma = 1) solves to -x, 1e-8
    for (double sigma : {0.8, 1.0, 1.6}) {
        const auto grid = make_grid(-8.0 * sigma, 8.0 * sigma, 101);
        const SteinSolution sol = solve_stein(TestFunction::polynomial({0.0, 1.0}), sigma, grid);
        for (double f : sol.f)
            ok &= check(std::fabs(f + sigma * sigma) <= 1e-8, detail, "h = x solution");
    }
    {
        const auto grid = make_grid(-8.0, 8.0, 101);
        const SteinSolution sol = solve_stein(TestFunction::polynomial({0.0, 0.0, 1.0}), 1.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            ok &= check(std::fabs(sol.f[i] + grid[i]) <= 1e-8, detail, "h = x^2 solution");
    }
    // ODE residual <= 1e-6 with an independent numerical derivative
    {
        const double sigma = 1.2;
        const auto grid = make_grid(-8.0 * sigma, 8.0 * sigma, 161);
        const TestFunction h = TestFunction::indicator_hermite(0.5, 2);
        const double eh = stein_h_mean(h, sigma);
        for (double xv : grid) {
            if (std::fabs(xv - 0.5) < 0.1) continue;
            const double step = 1e-5;
            const double fd =
                (stein_f(h, sigma, xv + step) - stein_f(h, sigma, xv - step)) / (2.0 * step);
            const double resid =
                fd - xv / (sigma * sigma) * stein_f(h, sigma, xv) - h.eval(xv) + eh;
            ok &= check(std::fabs(resid) <= 1e-6, detail, "ode residual");
        }
    }
    // MS identity z-scores on three (F, h) cases
    {
        const MsIdentityReport r1 = ms_identity_check(ChaosExpansion::first_chaos({0.6, 0.8}),
                                                      TestFunction::indicator_hermite(0.0, 1),
                                                      400000, 909);
        ok &= check(r1.z_score <= 3.0, detail, "ms z first chaos");
        TestFunction ramp;
        ramp.indicators.push_back({0.0, {0.0, 1.0}});
        const MsIdentityReport r2 =
            ms_identity_check(ChaosExpansion::second_chaos_diagonal({1.0, 0.5}), ramp, 1000000, 911);
        ok &= check(r2.z_score <= 3.0, detail, "ms z second chaos");
        const MsIdentityReport r3 =
            ms_identity_check(ChaosExpansion::second_chaos_diagonal({1.0, 0.5, 0.25}),
                              TestFunction::polynomial({0.0, 1.0, 1.0}), 400000, 913);
        ok &= check(r3.z_score <= 3.0, detail, "ms z polynomial h");
    }
    // envelope seeds to 1e-10
    for (double sigma : {0.9, 1.0, 1.8}) {
        for (double xv : {-4.0, -1.0, 0.0, 2.0, 5.0})
            ok &= check(std::fabs(envelope_sk(1, sigma, xv) - sigma * sigma) <= 1e-10, detail,
                        "s1 constant");
        ok &= check(std::fabs(envelope_sk(0, sigma, 0.0) - std::sqrt(kPi / 2.0) * sigma) <= 1e-10,
                    detail, "s0 at zero");
    }
    return ok;
}

// -------------------------------------------------------------- ou spectral

bool crit_ou_spectral(std::string& detail) {
    bool ok = true;
    for (double theta : {0.5, 1.0, 2.0}) {
        for (double T : {5.0, 20.0, 80.0}) {
            const EigenSolveResult es = kernel_spectrum_sl(theta, 1.0, T, 200);
            for (const auto& r : es.roots) {
                ok &= check(r.lambda > r.lambda_lo && r.lambda < r.lambda_hi, detail,
                            "bracket containment");
                ok &= check(r.residual <= 1e-10, detail, "root residual");
            }
            double s2 = 0.0;
            for (double l : es.eigenvalues) s2 += l * l;
            const double exact = exact_f_t_moment(theta, 1.0, T);
            ok &= check(std::fabs(2.0 * s2 - exact) <= 2.0 * es.tail_bound_sq, detail,
                        "second moment vs spectral sum");
        }
    }
    const NystromResult ny = kernel_spectrum_nystrom(1.0, 1.0, 10.0, 400);
    const EigenSolveResult es = kernel_spectrum_sl(1.0, 1.0, 10.0, 60);
    for (int i = 0; i < 10; ++i) {
        const double rel = std::fabs(ny.eigenvalues[i] - es.eigenvalues[i]) / es.eigenvalues[i];
        ok &= check(rel <= 1e-4, detail, "nystrom agreement i=" + std::to_string(i));
    }
    return ok;
}

// ------------------------------------------------------------ ou statistics

bool crit_ou_statistics(std::string& detail) {
    bool ok = true;
    // empirical Var(sqrt(T)(theta_hat - theta)) within 20% of 2 theta
    {
        OUConfig cfg;
        cfg.theta = 1.0;
        cfg.gamma = 1.0;
        cfg.T = 200.0;
        cfg.dt = 0.01;
        double m = 0.0, m2 = 0.0;
        const int seeds = 400;
        for (int s = 0; s < seeds; ++s) {
            cfg.seed = 40000 + s;
            const double th = least_squares_estimate(simulate_ou(cfg), cfg.dt);
            const double scaled = std::sqrt(cfg.T) * (th - cfg.theta);
            m += scaled;
            m2 += scaled * scaled;
        }
        m /= seeds;
        const double var = m2 / seeds - m * m;
        ok &= check(std::fabs(var - 2.0) <= 0.2 * 2.0, detail,
                    "lse variance " + std::to_string(var));
    }
    // exact spectral quantity sqrt(E F^4 - 3 sigma_T^4): the T^{-1/2} decay is
    // asserted on horizons long enough to be in the asymptotic regime; the
    // short-horizon slope is reported alongside
    {
        auto slope_over = [&](const std::vector<double>& Ts) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (double T : Ts) {
                const EigenSolveResult es =
                    kernel_spectrum_sl(1.0, 1.0, T, static_cast<int>(6.0 * T) + 80);
                double s4 = 0.0;
                for (double l : es.eigenvalues) s4 += std::pow(l, 4);
                const double lx = std::log(T), ly = std::log(std::sqrt(48.0 * s4));
                sx += lx;
                sy += ly;
                sxx += lx * lx;
                sxy += lx * ly;
            }
            const double n = static_cast<double>(Ts.size());
            return (n * sxy - sx * sy) / (n * sxx - sx * sx);
        };
        const double asym = slope_over({80.0, 160.0, 320.0, 640.0, 1280.0});
        const double shortT = slope_over({5.0, 10.0, 20.0, 40.0, 80.0});
        std::ostringstream note;
        note.precision(4);
        note << "exact slope " << asym << " on T in [80,1280] (short-horizon value " << shortT
             << ")";
        detail += (detail.empty() ? "" : "; ") + note.str();
        ok &= check(asym >= -0.55 && asym <= -0.45, detail, "exact slope window");
    }
    // Monte Carlo sup-density-distance slope over T in {5,...,80}, n = 1e6
    {
        const double sigma = std::sqrt(0.5);
        const auto grid = make_grid(-6.0 * sigma, 6.0 * sigma, 241);
        const RateReport rep =
            rate_experiment(1.0, 1.0, {5.0, 10.0, 20.0, 40.0, 80.0}, 1000000, 915, grid);
        std::ostringstream note;
        note.precision(4);
        note << "mc slope " << rep.slope;
        detail += "; " + note.str();
        ok &= check(rep.conclusive, detail, "noise floor");
        ok &= check(rep.slope >= -0.7 && rep.slope <= -0.3, detail, "mc slope window");
        // distances decrease in T, allowing one inversion within error bars
        int inversions = 0;
        for (std::size_t i = 1; i < rep.points.size(); ++i)
            if (rep.points[i].sup_gap >
                rep.points[i - 1].sup_gap + 3.0 * (rep.points[i].max_se + rep.points[i - 1].max_se))
                ++inversions;
        ok &= check(inversions <= 1, detail, "monotone decay");
    }
    return ok;
}

// ----------------------------------------------------- fourth moment family

bool crit_fourth_moment(std::string& detail) {
    bool ok = true;
    const std::vector<double> Ts{5.0, 10.0, 20.0, 40.0, 80.0};
    // spectral route
    std::vector<Spectrum> spectra;
    for (double T : Ts)
        spectra.push_back(kernel_spectrum_sl(1.0, 1.0, T, static_cast<int>(6.0 * T) + 80).spectrum());
    const FourthMomentReport rep = fourth_moment_report(spectra);
    ok &= check(rep.fourth_gap_decreasing, detail, "fourth-moment gap decreasing");
    ok &= check(rep.contraction_decreasing, detail, "contraction norm decreasing");
    ok &= check(rep.var_decreasing, detail, "gradient variance decreasing");
    // independent route: discretized kernel matrices through the contraction
    std::vector<engine::KernelMatrix> kernels;
    for (double T : Ts) {
        const QuadratureRule gl = gauss_legendre(200, 0.0, T);
        engine::KernelMatrix a;
        a.n = 200;
        a.a.resize(200 * 200);
        for (int i = 0; i < 200; ++i)
            for (int j = 0; j < 200; ++j)
                a.at(i, j) = std::sqrt(gl.weights[i] * gl.weights[j]) *
                             std::exp(-std::fabs(gl.nodes[i] - gl.nodes[j])) / (2.0 * std::sqrt(T));
        kernels.push_back(std::move(a));
    }
    const FourthMomentReport repk = fourth_moment_report(kernels);
    ok &= check(repk.fourth_gap_decreasing && repk.contraction_decreasing && repk.var_decreasing,
                detail, "kernel-matrix route decreasing");
    return ok;
}

} // namespace

int main() {
    registry().push_back({"hermite suite (recursion, derivative, scaling, orthogonality)",
                          crit_hermite});
    registry().push_back({"engine identities (duality, deltaD = -L, L Linv)", crit_engine});
    registry().push_back({"lemma Gk decomposition and T_k forms", crit_gk});
    registry().push_back({"negative moments (quadrature, divergence, monte carlo)",
                          crit_negmoment});
    registry().push_back({"density estimators (coverage, integrand identity, derivatives)",
                          crit_density});
    registry().push_back({"multivariate H_beta and 2-d density", crit_multivariate});
    registry().push_back({"stein solver and malliavin-stein identity", crit_stein});
    registry().push_back({"ou spectral (brackets, nystrom, moment identity)", crit_ou_spectral});
    registry().push_back({"ou statistics (lse clt, exact and monte carlo rates)",
                          crit_ou_statistics});
    registry().push_back({"fourth-moment family on ou kernels", crit_fourth_moment});

    int failures = 0;
    for (auto& c : registry()) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %-68s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
