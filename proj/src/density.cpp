#include "chaoslab/density.hpp"
#include "chaoslab/jacobi.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chaoslab {

double DensityEstimate::integral() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        acc += 0.5 * (estimate[i] + estimate[i - 1]) * (grid[i] - grid[i - 1]);
    return acc;
}

std::vector<double> make_grid(double a, double b, int count) {
    if (count < 2) throw std::invalid_argument("make_grid: need at least 2 points");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = a + (b - a) * static_cast<double>(i) / (count - 1);
    return g;
}

namespace {

// shared suffix-sum estimator: est(x) = sign * mean(1_{F > x} weight)
DensityEstimate indicator_weight_estimate(std::vector<std::pair<double, double>> fw,
                                          const std::vector<double>& grid, double sign,
                                          const std::string& tag, std::size_t rejected) {
    if (fw.empty()) throw std::invalid_argument("density estimate: empty sample set");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("density estimate: grid must be sorted");
    std::sort(fw.begin(), fw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t n = fw.size();
    std::vector<double> suffix1(n + 1, 0.0), suffix2(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        suffix1[i] = suffix1[i + 1] + fw[i].second;
        suffix2[i] = suffix2[i + 1] + fw[i].second * fw[i].second;
    }
    DensityEstimate out;
    out.grid = grid;
    out.n = n;
    out.rejected = rejected;
    out.estimator_tag = tag;
    out.estimate.resize(grid.size());
    out.std_error.resize(grid.size());
    const double dn = static_cast<double>(n);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double x = grid[gi];
        // first sample index with F > x
        const auto it = std::upper_bound(fw.begin(), fw.end(), x,
                                         [](double v, const auto& p) { return v < p.first; });
        const std::size_t idx = static_cast<std::size_t>(it - fw.begin());
        const double mean = suffix1[idx] / dn;
        const double mean_sq = suffix2[idx] / dn;
        const double var = std::max(0.0, mean_sq - mean * mean);
        out.estimate[gi] = sign * mean;
        out.std_error[gi] = std::sqrt(var / dn);
    }
    return out;
}

} // namespace

DensityEstimate malliavin_density(const std::vector<WeightedSample>& samples,
                                  const std::vector<double>& grid) {
    if (samples.size() < 100) throw std::invalid_argument("malliavin_density: n < 100");
    std::vector<std::pair<double, double>> fw;
    fw.reserve(samples.size());
    for (const auto& s : samples) fw.emplace_back(s.F, s.delta_u);
    return indicator_weight_estimate(std::move(fw), grid, 1.0, "malliavin-fmla1", 0);
}

DensityEstimate derivative_density(const std::vector<WeightedSample>& samples, int k,
                                   const std::vector<double>& grid) {
    if (k < 0) throw std::invalid_argument("derivative_density: k < 0");
    if (samples.empty() || static_cast<int>(samples.front().g.size()) <= k + 1)
        throw std::invalid_argument("derivative_density: samples do not carry G_{k+1}");
    std::vector<std::pair<double, double>> fw;
    fw.reserve(samples.size());
    for (const auto& s : samples) fw.emplace_back(s.F, s.g[k + 1]);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return indicator_weight_estimate(std::move(fw), grid, sign, "derivative-" + std::to_string(k), 0);
}

double delta_density_weight(const ChaosExpansion& F, const ChaosExpansion& V,
                            const std::vector<double>& point) {
    const int dim = F.dim();
    auto space = JetSpace::get(dim, 2);
    const Jet fj = F.eval_jet(point, space);
    const Jet vj = V.eval_jet(point, space);
    std::vector<double> df(dim), dv(dim);
    std::vector<Jet> dvj;
    dvj.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        dvj.push_back(vj.partial(i));
        dv[i] = dvj[i].value();
        df[i] = fj.partial(i).value();
    }
    double wbar = 0.0;
    for (int i = 0; i < dim; ++i) wbar += df[i] * dv[i];
    if (std::fabs(wbar) <= 1e-300)
        throw singular_evaluation("delta_density_weight: <DF, DV> vanishes");
    // d_i wbar = sum_l (H_F[i][l] dv[l] + df[l] H_V[i][l])
    double delta = 0.0;
    for (int i = 0; i < dim; ++i) {
        double dwbar_i = 0.0;
        const Jet dfi = fj.partial(i);
        for (int l = 0; l < dim; ++l) {
            const double hf_il = dfi.partial(l).value();
            const double hv_il = dvj[i].partial(l).value();
            dwbar_i += hf_il * dv[l] + df[l] * hv_il;
        }
        const double hv_ii = dvj[i].partial(i).value();
        const double u_i = dv[i] / wbar;
        const double du_i = hv_ii / wbar - dv[i] * dwbar_i / (wbar * wbar);
        delta += u_i * point[i] - du_i;
    }
    return delta;
}

DensityEstimate malliavin_density_general(const ChaosExpansion& F, const std::vector<double>& grid,
                                          std::size_t n, std::uint64_t seed,
                                          const GeneralDensityOptions& opts) {
    if (std::fabs(F.expectation()) > 1e-12)
        throw std::invalid_argument("malliavin_density_general: F must be centered");
    const int dim = F.dim();
    const ChaosExpansion V = F.apply_L_inverse().scaled(-1.0);
    const std::size_t chunk = std::max<std::size_t>(opts.chunk_size, 1);
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<std::vector<std::pair<double, double>>> parts(n_chunks);
    std::vector<std::size_t> rejects(n_chunks, 0);
    parallel_chunks(n_chunks, opts.threads, [&](std::size_t c) {
        Rng rng(seed, c);
        std::vector<double> x(dim);
        auto& out = parts[c];
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        out.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < dim; ++j) x[j] = rng.next_normal();
            try {
                const double d = delta_density_weight(F, V, x);
                out.emplace_back(F.eval(x), d);
            } catch (const singular_evaluation&) {
                ++rejects[c];
            }
        }
    });
    std::vector<std::pair<double, double>> fw;
    fw.reserve(n);
    std::size_t rejected = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        fw.insert(fw.end(), parts[c].begin(), parts[c].end());
        rejected += rejects[c];
    }
    if (static_cast<double>(rejected) > opts.max_rejection_rate * static_cast<double>(n))
        throw std::runtime_error("malliavin_density_general: rejection rate above threshold");
    return indicator_weight_estimate(std::move(fw), grid, 1.0, "malliavin-fmla3", rejected);
}

KdeEstimate kde_density(const std::vector<double>& values, const std::vector<double>& grid) {
    if (values.size() < 2) throw std::invalid_argument("kde_density: too few samples");
    const std::size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[n / 4], q3 = sorted[(3 * n) / 4];
    const double iqr = q3 - q1;
    const double spread = std::min(std::sqrt(var), iqr / 1.34);
    const double bw = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);

    KdeEstimate out;
    out.bandwidth = bw;
    out.estimate.grid = grid;
    out.estimate.n = n;
    out.estimate.estimator_tag = "kde";
    out.estimate.estimate.resize(grid.size());
    out.estimate.std_error.assign(grid.size(), 0.0);
    std::vector<double> est(grid.size(), 0.0);
    parallel_chunks(grid.size(), 0, [&](std::size_t gi) {
        double acc = 0.0, acc2 = 0.0;
        for (double v : values) {
            const double k = normal_pdf((grid[gi] - v) / bw) / bw;
            acc += k;
            acc2 += k * k;
        }
        const double m = acc / static_cast<double>(n);
        est[gi] = m;
        const double v2 = std::max(0.0, acc2 / static_cast<double>(n) - m * m);
        out.estimate.std_error[gi] = std::sqrt(v2 / static_cast<double>(n));
    });
    out.estimate.estimate = est;
    // curvature from the kde curve itself, central differences
    double max_f2 = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double h1 = grid[i] - grid[i - 1];
        const double f2 = (est[i + 1] - 2.0 * est[i] + est[i - 1]) / (h1 * h1);
        max_f2 = std::max(max_f2, std::fabs(f2));
    }
    out.bias_allowance = 0.5 * bw * bw * max_f2;
    return out;
}

DistanceReport uniform_distance(const DensityEstimate& est,
                                const std::function<double(double)>& target) {
    DistanceReport rep;
    std::vector<double> diff(est.grid.size());
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        diff[i] = std::fabs(est.estimate[i] - target(est.grid[i]));
        if (diff[i] > rep.sup_gap) {
            rep.sup_gap = diff[i];
            rep.argmax = est.grid[i];
        }
    }
    for (std::size_t i = 1; i < est.grid.size(); ++i) {
        const double dx = est.grid[i] - est.grid[i - 1];
        rep.l1_gap += 0.5 * (diff[i] + diff[i - 1]) * dx;
        rep.l2_gap += 0.5 * (diff[i] * diff[i] + diff[i - 1] * diff[i - 1]) * dx;
    }
    rep.l2_gap = std::sqrt(rep.l2_gap);
    return rep;
}

namespace {

// gamma matrix of jets, its inverse via adjugate (d <= 3)
std::vector<std::vector<Jet>> gamma_inverse_jets(const std::vector<std::vector<Jet>>& g) {
    const int d = static_cast<int>(g.size());
    auto sp = g[0][0].space_ptr();
    std::vector<std::vector<Jet>> inv(d, std::vector<Jet>(d, Jet::constant(sp, 0.0)));
    if (d == 1) {
        inv[0][0] = g[0][0].reciprocal();
        return inv;
    }
    if (d == 2) {
        Jet det = g[0][0].mul(g[1][1]) - g[0][1].mul(g[1][0]);
        const Jet dinv = det.reciprocal();
        inv[0][0] = g[1][1].mul(dinv);
        inv[1][1] = g[0][0].mul(dinv);
        inv[0][1] = -g[0][1].mul(dinv);
        inv[1][0] = -g[1][0].mul(dinv);
        return inv;
    }
    if (d == 3) {
        auto co = [&](int i, int j) {
            const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            return g[r0][c0].mul(g[r1][c1]) - g[r0][c1].mul(g[r1][c0]);
        };
        Jet det = g[0][0].mul(co(0, 0)) + g[0][1].mul(co(0, 1)) + g[0][2].mul(co(0, 2));
        const Jet dinv = det.reciprocal();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) inv[i][j] = co(j, i).mul(dinv);
        return inv;
    }
    throw std::invalid_argument("multivariate density: d > 3 not supported");
}

// H chain along beta (zero-based indices); returns the value of the last level
double h_beta_from_jets(const std::vector<Jet>& fjets, const std::vector<int>& beta,
                        const std::vector<double>& x) {
    const int d = static_cast<int>(fjets.size());
    const int dim = static_cast<int>(x.size());
    const int R = fjets[0].order();
    // gradient jets at order R-1
    std::vector<std::vector<Jet>> grad(d);
    for (int i = 0; i < d; ++i) {
        grad[i].reserve(dim);
        for (int l = 0; l < dim; ++l) grad[i].push_back(fjets[i].partial(l));
    }
    // gamma_{ij} = sum_l dF_i/dx_l dF_j/dx_l
    auto gsp = JetSpace::get(dim, R - 1);
    std::vector<std::vector<Jet>> gamma(d, std::vector<Jet>(d, Jet::constant(gsp, 0.0)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Jet acc = Jet::constant(gsp, 0.0);
            for (int l = 0; l < dim; ++l) acc += grad[i][l].mul(grad[j][l]);
            gamma[i][j] = acc;
            if (j != i) gamma[j][i] = acc;
        }
    const auto ginv = gamma_inverse_jets(gamma);

    Jet h = Jet::constant(JetSpace::get(dim, R - 1), 1.0);
    for (int bi : beta) {
        const int ord = h.order();
        // u_l = sum_j H (ginv)^{bi j} dF_j/dx_l, then delta(u) = sum u_l x_l - sum d_l u_l
        auto lsp = JetSpace::get(dim, ord - 1);
        Jet acc = Jet::constant(lsp, 0.0);
        for (int l = 0; l < dim; ++l) {
            Jet u_l = Jet::constant(JetSpace::get(dim, ord), 0.0);
            for (int j = 0; j < d; ++j)
                u_l += h.mul(ginv[bi][j].truncated(ord)).mul(grad[j][l].truncated(ord));
            const Jet xl = Jet::coordinate(lsp, l, x[l]);
            acc += u_l.truncated(ord - 1).mul(xl) - u_l.partial(l);
        }
        h = acc;
    }
    return h.value();
}

} // namespace

double h_beta_value(const std::vector<ChaosExpansion>& F, const std::vector<int>& beta,
                    const std::vector<double>& point) {
    const int dim = static_cast<int>(point.size());
    const int R = static_cast<int>(beta.size()) + 1;
    auto sp = JetSpace::get(dim, R);
    std::vector<Jet> fjets;
    fjets.reserve(F.size());
    for (const auto& Fi : F) fjets.push_back(Fi.eval_jet(point, sp));
    return h_beta_from_jets(fjets, beta, point);
}

MultivariateDensityEstimate multivariate_density(const std::vector<ChaosExpansion>& F,
                                                 const std::vector<int>& beta,
                                                 const std::vector<std::vector<double>>& grid,
                                                 std::size_t n, std::uint64_t seed,
                                                 const GeneralDensityOptions& opts) {
    const int d = static_cast<int>(F.size());
    if (d < 1 || d > 3) throw std::invalid_argument("multivariate_density: need 1 <= d <= 3");
    for (int b : beta)
        if (b < 0 || b >= d) throw std::invalid_argument("multivariate_density: bad beta entry");
    int dim = 1;
    for (const auto& Fi : F) dim = std::max(dim, Fi.dim());
    // full chain: components 1..d then the requested beta
    std::vector<int> chain;
    for (int i = 0; i < d; ++i) chain.push_back(i);
    chain.insert(chain.end(), beta.begin(), beta.end());

    const std::size_t chunk = std::max<std::size_t>(opts.chunk_size, 1);
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    struct Row {
        std::vector<double> sum, sum2;
        std::size_t rejected = 0;
    };
    std::vector<Row> parts(n_chunks);
    auto sp = JetSpace::get(dim, static_cast<int>(chain.size()) + 1);
    parallel_chunks(n_chunks, opts.threads, [&](std::size_t c) {
        Rng rng(seed, c);
        Row row;
        row.sum.assign(grid.size(), 0.0);
        row.sum2.assign(grid.size(), 0.0);
        std::vector<double> x(dim);
        std::vector<double> fv(d);
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < dim; ++j) x[j] = rng.next_normal();
            double hval = 0.0;
            try {
                std::vector<Jet> fjets;
                fjets.reserve(d);
                for (const auto& Fi : F) fjets.push_back(Fi.eval_jet(x, sp));
                for (int j = 0; j < d; ++j) fv[j] = fjets[j].value();
                hval = h_beta_from_jets(fjets, chain, x);
            } catch (const singular_evaluation&) {
                ++row.rejected;
                continue;
            }
            for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                bool all = true;
                for (int j = 0; j < d && all; ++j) all = fv[j] > grid[gi][j];
                if (all) {
                    row.sum[gi] += hval;
                    row.sum2[gi] += hval * hval;
                }
            }
        }
        parts[c] = std::move(row);
    });
    MultivariateDensityEstimate out;
    out.n = n;
    out.beta_order = static_cast<int>(beta.size());
    std::vector<double> sum(grid.size(), 0.0), sum2(grid.size(), 0.0);
    for (const Row& r : parts) {
        out.rejected += r.rejected;
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            if (r.sum.empty()) continue;
            sum[gi] += r.sum[gi];
            sum2[gi] += r.sum2[gi];
        }
    }
    if (static_cast<double>(out.rejected) > opts.max_rejection_rate * static_cast<double>(n))
        throw std::runtime_error("multivariate_density: rejection rate above threshold");
    const double sign = (beta.size() % 2 == 0) ? 1.0 : -1.0;
    const double dn = static_cast<double>(n);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        MultivariatePoint p;
        p.x = grid[gi];
        const double mean = sum[gi] / dn;
        p.estimate = sign * mean;
        const double var = std::max(0.0, sum2[gi] / dn - mean * mean);
        p.std_error = std::sqrt(var / dn);
        out.points.push_back(std::move(p));
    }
    return out;
}

FourthMomentReport fourth_moment_report(const std::vector<Spectrum>& spectra) {
    if (spectra.empty()) throw std::invalid_argument("fourth_moment_report: empty input");
    FourthMomentReport rep;
    for (const Spectrum& s : spectra) {
        FourthMomentRow row;
        const double s4 = s.sum_pow(4);
        row.sigma2 = 2.0 * s.sum_pow(2);
        row.fourth_gap = 48.0 * s4;
        row.contraction_norm = std::sqrt(s4);
        row.var_dfnorm = 32.0 * s4;
        rep.rows.push_back(row);
    }
    auto decreasing = [&](auto field) {
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (field(rep.rows[i]) >= field(rep.rows[i - 1])) return false;
        return true;
    };
    rep.fourth_gap_decreasing = decreasing([](const FourthMomentRow& r) { return r.fourth_gap; });
    rep.contraction_decreasing =
        decreasing([](const FourthMomentRow& r) { return r.contraction_norm; });
    rep.var_decreasing = decreasing([](const FourthMomentRow& r) { return r.var_dfnorm; });
    return rep;
}

FourthMomentReport fourth_moment_report(const std::vector<engine::KernelMatrix>& kernels) {
    if (kernels.empty()) throw std::invalid_argument("fourth_moment_report: empty input");
    FourthMomentReport rep;
    for (const auto& k : kernels) {
        FourthMomentRow row;
        const double s2 = k.trace_inner(k); // sum lambda^2 = ||A||_F^2
        const engine::KernelMatrix kk = k.multiply(k);
        const double sum4 = kk.trace_inner(kk); // sum lambda^4 = ||A A||_F^2
        row.sigma2 = 2.0 * s2;
        row.fourth_gap = 48.0 * sum4;
        row.contraction_norm = kk.frobenius_norm();
        row.var_dfnorm = 32.0 * sum4;
        rep.rows.push_back(row);
    }
    auto decreasing = [&](auto field) {
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (field(rep.rows[i]) >= field(rep.rows[i - 1])) return false;
        return true;
    };
    rep.fourth_gap_decreasing = decreasing([](const FourthMomentRow& r) { return r.fourth_gap; });
    rep.contraction_decreasing =
        decreasing([](const FourthMomentRow& r) { return r.contraction_norm; });
    rep.var_decreasing = decreasing([](const FourthMomentRow& r) { return r.var_dfnorm; });
    return rep;
}

GeneralBoundReport general_bound_report(const ChaosExpansion& F, double r, double s,
                                        std::size_t n, std::uint64_t seed, double user_constant,
                                        int threads) {
    if (!(r > 2.0) || !(s >= 8.0) || std::fabs(2.0 / r + 4.0 / s - 1.0) > 1e-12)
        throw std::invalid_argument(
            "general_bound_report: exponents must satisfy 2/r + 4/s = 1, s >= 8, r > 2");
    if (std::fabs(F.expectation()) > 1e-12)
        throw std::invalid_argument("general_bound_report: F must be centered");
    const int dim = F.dim();
    const ChaosExpansion V = F.apply_L_inverse().scaled(-1.0);
    auto space = JetSpace::get(dim, 2);

    const std::size_t chunk = 65536;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    struct Part {
        double abs_f_s = 0.0, df_s = 0.0, hess_op_s = 0.0, wbar_neg_r = 0.0;
        std::size_t rejected = 0, rci_violations = 0;
    };
    std::vector<Part> parts(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        Rng rng(seed, c);
        Part p;
        std::vector<double> x(dim);
        engine::KernelMatrix hess;
        hess.n = dim;
        hess.a.assign(dim * dim, 0.0);
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < dim; ++j) x[j] = rng.next_normal();
            const Jet fj = F.eval_jet(x, space);
            const Jet vj = V.eval_jet(x, space);
            double df2 = 0.0, wbar = 0.0;
            for (int a = 0; a < dim; ++a) {
                const Jet fa = fj.partial(a);
                const double da = fa.value();
                df2 += da * da;
                wbar += da * vj.partial(a).value();
                for (int b = 0; b < dim; ++b) hess.at(a, b) = fa.partial(b).value();
            }
            if (std::fabs(wbar) <= 1e-300) {
                ++p.rejected;
                continue;
            }
            const double op = jacobi_operator_norm(hess);
            const engine::KernelMatrix hh = hess.multiply(hess);
            const double mid = hh.frobenius_norm();
            const double fro = hess.frobenius_norm();
            if (!(std::pow(op, 4.0) <= mid * mid * (1.0 + 1e-12) &&
                  mid * mid <= std::pow(fro, 4.0) * (1.0 + 1e-12)))
                ++p.rci_violations;
            p.abs_f_s += std::pow(std::fabs(fj.value()), s);
            p.df_s += std::pow(df2, 0.5 * s);
            p.hess_op_s += std::pow(op, s);
            p.wbar_neg_r += std::pow(std::fabs(wbar), -r);
        }
        parts[c] = p;
    });
    Part tot;
    for (const Part& p : parts) {
        tot.abs_f_s += p.abs_f_s;
        tot.df_s += p.df_s;
        tot.hess_op_s += p.hess_op_s;
        tot.wbar_neg_r += p.wbar_neg_r;
        tot.rejected += p.rejected;
        tot.rci_violations += p.rci_violations;
    }
    GeneralBoundReport rep;
    rep.r = r;
    rep.s = s;
    rep.n = n;
    rep.rejected = tot.rejected;
    rep.rci_violations = tot.rci_violations;
    rep.user_constant = user_constant;
    rep.sigma2 = F.variance();
    const double dn = static_cast<double>(n - tot.rejected);
    rep.norm_f_1s = std::pow(tot.abs_f_s / dn + tot.df_s / dn, 1.0 / s);
    rep.norm_hess_op_s = std::pow(tot.hess_op_s / dn, 1.0 / s);
    rep.m_neg_r = std::pow(tot.wbar_neg_r / dn, 1.0 / r);
    rep.bound_skeleton = user_constant * rep.norm_f_1s * rep.norm_f_1s * rep.norm_hess_op_s;
    return rep;
}

} // namespace chaoslab
