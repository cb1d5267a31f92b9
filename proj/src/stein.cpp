#include "chaoslab/stein.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/special.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace chaoslab {

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
    TestFunction h;
    h.poly = std::move(coeffs);
    return h;
}

TestFunction TestFunction::indicator_hermite(double z, int k) {
    TestFunction h;
    const HermiteCoeffs hc = HermiteCoeffs::make(k);
    TestFunction::IndicatorTerm term;
    term.z = z;
    term.poly.assign(k + 1, 0.0);
    for (std::size_t i = 0; i < hc.c.size(); ++i)
        term.poly[k - 2 * static_cast<int>(i)] = static_cast<double>(hc.c[i]);
    h.indicators.push_back(std::move(term));
    return h;
}

TestFunction TestFunction::from_callable(std::function<double(double)> fn, double a, int k, double b) {
    TestFunction h;
    h.tabulated = std::move(fn);
    h.growth_a = a;
    h.growth_k = k;
    h.growth_b = b;
    return h;
}

double TestFunction::eval(double x) const {
    if (tabulated) return tabulated(x);
    double acc = 0.0;
    double xp = 1.0;
    for (double c : poly) {
        acc += c * xp;
        xp *= x;
    }
    for (const auto& ind : indicators) {
        if (x <= ind.z) continue;
        xp = 1.0;
        for (double c : ind.poly) {
            acc += c * xp;
            xp *= x;
        }
    }
    return acc;
}

std::string TestFunction::tag() const {
    if (tabulated) return "tabulated";
    if (indicators.empty()) return "polynomial";
    return poly.empty() ? "indicator-polynomial" : "polynomial+indicator";
}

double stein_h_mean(const TestFunction& h, double sigma) {
    if (h.tabulated) {
        const QuadratureRule gh = gauss_hermite_prob(64);
        double acc = 0.0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i)
            acc += gh.weights[i] * h.tabulated(sigma * gh.nodes[i]);
        return acc;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < h.poly.size(); ++j)
        acc += h.poly[j] * normal_moment(static_cast<int>(j), sigma);
    const double norm = 1.0 / (sigma * kSqrt2Pi);
    for (const auto& ind : h.indicators)
        for (std::size_t j = 0; j < ind.poly.size(); ++j)
            acc += ind.poly[j] * norm * gaussian_tail_moment(static_cast<int>(j), ind.z, sigma);
    return acc;
}

namespace {

// e^{x^2/(2s^2)} int_x^inf y^j e^{-y^2/(2s^2)} dy for x >= 0, stable
double sj(int j, double x, double sigma) { return scaled_tail_moment(j, x, sigma); }

// closed-form solution for polynomial + indicator test functions
double stein_f_closed(const TestFunction& h, double sigma, double x, double h_mean) {
    const double s2 = sigma * sigma;
    std::vector<double> c = h.poly;
    if (c.empty()) c.push_back(0.0);
    c[0] -= h_mean;
    double f = 0.0;
    if (x >= 0.0) {
        // f = -e^{x^2/2s^2} int_x^inf (h - Eh) e^{-y^2/2s^2} dy
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j] != 0.0) f -= c[j] * sj(static_cast<int>(j), x, sigma);
        for (const auto& ind : h.indicators) {
            const double m = std::max(x, ind.z);
            const double damp = std::exp((x * x - m * m) / (2.0 * s2));
            for (std::size_t j = 0; j < ind.poly.size(); ++j)
                if (ind.poly[j] != 0.0) f -= ind.poly[j] * damp * sj(static_cast<int>(j), m, sigma);
        }
        return f;
    }
    // x < 0: f = e^{x^2/2s^2} int_{-inf}^x (h - Eh) e^{-y^2/2s^2} dy, y -> -t
    const double ax = -x;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0.0) continue;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        f += sign * c[j] * sj(static_cast<int>(j), ax, sigma);
    }
    for (const auto& ind : h.indicators) {
        if (ind.z >= x) continue; // indicator inactive on (-inf, x]
        const double az = -ind.z;  // az > ax > 0
        const double damp = std::exp((x * x - ind.z * ind.z) / (2.0 * s2));
        for (std::size_t j = 0; j < ind.poly.size(); ++j) {
            if (ind.poly[j] == 0.0) continue;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            f += sign * ind.poly[j] * (sj(static_cast<int>(j), ax, sigma) -
                                       damp * sj(static_cast<int>(j), az, sigma));
        }
    }
    return f;
}

double stein_f_tabulated(const TestFunction& h, double sigma, double x, double h_mean) {
    const double s2 = sigma * sigma;
    auto hbar = [&](double y) { return h.tabulated(y) - h_mean; };
    if (x >= 0.0) {
        auto integrand = [&](double t) {
            return hbar(x + t) * std::exp(-(t * t + 2.0 * x * t) / (2.0 * s2));
        };
        return -integrate_semi_infinite(integrand, 1e-10, 1e-14).value;
    }
    auto integrand = [&](double t) {
        return hbar(x - t) * std::exp(-(t * t - 2.0 * x * t) / (2.0 * s2));
    };
    return integrate_semi_infinite(integrand, 1e-10, 1e-14).value;
}

} // namespace

double stein_f(const TestFunction& h, double sigma, double x) {
    if (sigma <= 0.0) throw std::domain_error("stein_f: sigma <= 0");
    const double h_mean = stein_h_mean(h, sigma);
    return h.closed_form() ? stein_f_closed(h, sigma, x, h_mean)
                           : stein_f_tabulated(h, sigma, x, h_mean);
}

SteinSolution solve_stein(const TestFunction& h, double sigma, const std::vector<double>& grid) {
    if (sigma <= 0.0) throw std::domain_error("solve_stein: sigma <= 0");
    if (h.tabulated) {
        // declared growth bound must hold where we evaluate
        for (double x : grid) {
            const double bound = h.growth_a * std::pow(std::fabs(x), h.growth_k) + h.growth_b;
            if (std::fabs(h.tabulated(x)) > bound + 1e-12)
                throw std::invalid_argument("solve_stein: declared growth bound violated on grid");
        }
    }
    SteinSolution sol;
    sol.h_tag = h.tag();
    sol.sigma = sigma;
    sol.h_mean = stein_h_mean(h, sigma);
    sol.grid = grid;
    sol.f.reserve(grid.size());
    sol.f_prime.reserve(grid.size());
    const double s2 = sigma * sigma;
    for (double x : grid) {
        const double fx = h.closed_form() ? stein_f_closed(h, sigma, x, sol.h_mean)
                                          : stein_f_tabulated(h, sigma, x, sol.h_mean);
        sol.f.push_back(fx);
        sol.f_prime.push_back(x / s2 * fx + h.eval(x) - sol.h_mean);
    }
    return sol;
}

double envelope_sk(int k, double sigma, double x) {
    if (k < 0) throw std::domain_error("envelope_sk: k < 0");
    return scaled_tail_moment(k, x, sigma);
}

MsIdentityReport ms_identity_check(const ChaosExpansion& F, const TestFunction& h,
                                   std::size_t n, std::uint64_t seed, int threads) {
    if (std::fabs(F.expectation()) > 1e-12)
        throw std::invalid_argument("ms_identity_check: F must be centered");
    const double sigma2 = F.variance();
    const double sigma = std::sqrt(sigma2);
    const double h_mean = stein_h_mean(h, sigma);
    const ChaosExpansion minus_linv = F.apply_L_inverse().scaled(-1.0);
    const int dim = F.dim();

    const std::size_t chunk = 65536;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    struct Part {
        double lhs = 0.0, lhs2 = 0.0, rhs = 0.0, rhs2 = 0.0, diff = 0.0, diff2 = 0.0;
    };
    std::vector<Part> parts(n_chunks);
    auto space = JetSpace::get(dim, 1);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        Rng rng(seed, c);
        std::vector<double> x(dim);
        Part p;
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < dim; ++j) x[j] = rng.next_normal();
            const Jet fj = F.eval_jet(x, space);
            const Jet gj = minus_linv.eval_jet(x, space);
            const double Fv = fj.value();
            double wbar = 0.0;
            for (int j = 0; j < dim; ++j) wbar += fj.partial(j).value() * gj.partial(j).value();
            const double fval = h.closed_form() ? stein_f_closed(h, sigma, Fv, h_mean)
                                                : stein_f_tabulated(h, sigma, Fv, h_mean);
            const double fprime = Fv / sigma2 * fval + h.eval(Fv) - h_mean;
            const double lhs = sigma2 * fprime - Fv * fval;
            const double rhs = fprime * (sigma2 - wbar);
            const double diff = fprime * wbar - Fv * fval;
            p.lhs += lhs;
            p.lhs2 += lhs * lhs;
            p.rhs += rhs;
            p.rhs2 += rhs * rhs;
            p.diff += diff;
            p.diff2 += diff * diff;
        }
        parts[c] = p;
    });
    Part tot;
    for (const Part& p : parts) {
        tot.lhs += p.lhs;
        tot.lhs2 += p.lhs2;
        tot.rhs += p.rhs;
        tot.rhs2 += p.rhs2;
        tot.diff += p.diff;
        tot.diff2 += p.diff2;
    }
    MsIdentityReport rep;
    rep.n = n;
    rep.sigma2 = sigma2;
    const double dn = static_cast<double>(n);
    auto finish = [&](double s, double s2, double& mean, double& se) {
        mean = s / dn;
        const double var = std::max(0.0, s2 / dn - mean * mean);
        se = std::sqrt(var / dn);
    };
    finish(tot.lhs, tot.lhs2, rep.lhs_mean, rep.lhs_se);
    finish(tot.rhs, tot.rhs2, rep.rhs_mean, rep.rhs_se);
    finish(tot.diff, tot.diff2, rep.diff_mean, rep.diff_se);
    rep.z_score = rep.diff_se > 0.0 ? std::fabs(rep.diff_mean) / rep.diff_se : 0.0;
    return rep;
}

} // namespace chaoslab
