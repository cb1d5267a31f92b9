#include "chaoslab/chaos2.hpp"
#include "chaoslab/hermite.hpp"
#include "chaoslab/parallel.hpp"
#include "chaoslab/quadrature.hpp"
#include "chaoslab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace chaoslab {

Spectrum::Spectrum(std::vector<double> lam) : eigenvalues(std::move(lam)) {
    std::stable_sort(eigenvalues.begin(), eigenvalues.end(),
                     [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    if (nonzero_count() == 0) throw std::invalid_argument("Spectrum: all eigenvalues are zero");
}

int Spectrum::nonzero_count() const {
    int c = 0;
    for (double l : eigenvalues)
        if (l != 0.0) ++c;
    return c;
}

double Spectrum::sum_pow(int p) const {
    double acc = 0.0;
    for (double l : eigenvalues) acc += std::pow(l, p);
    return acc;
}

ExactMoments exact_moments(const Spectrum& s) {
    ExactMoments m;
    double s2 = 0.0, s4 = 0.0;
    for (double l : s.eigenvalues) {
        const double l2 = l * l;
        s2 += l2;
        s4 += l2 * l2;
    }
    m.sigma2 = 2.0 * s2;
    m.var_dfnorm = 32.0 * s4;
    m.excess_kurtosis = 48.0 * s4;
    return m;
}

namespace {

// DuJet of the quadratic power sum P_m = sum_i lambda_i^m x_i^2 under the
// derivation D_u, which acts by D_u P_m = P_{m+1} / P_2 and D_u F = 1.
struct PowerSumJets {
    // p[m] = numeric P_m for m = 2 .. m_max
    std::vector<double> p;
    int m_max = 0;

    DuJet pjet(int m, int depth) const {
        DuJet j(depth, p[m]);
        if (depth == 0) return j;
        const DuJet tail = pjet(m + 1, depth - 1) / pjet(2, depth - 1);
        std::vector<double> v(depth + 1);
        v[0] = p[m];
        for (int k = 1; k <= depth; ++k) v[k] = tail.deriv(k - 1);
        return DuJet::from_values(std::move(v));
    }
};

} // namespace

ClosedFormWeights closed_form_weights(const Spectrum& s, const std::vector<double>& x, int max_gk) {
    const int K = std::max(max_gk, 1);
    const int depth = K + 1;
    const auto& lam = s.eigenvalues;
    if (x.size() != lam.size())
        throw std::invalid_argument("closed_form_weights: point dimension mismatch");

    PowerSumJets ps;
    ps.m_max = depth + 4;
    ps.p.assign(ps.m_max + 1, 0.0);
    double F = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double xi2 = x[i] * x[i];
        F += lam[i] * (xi2 - 1.0);
        double lp = lam[i] * lam[i];
        for (int m = 2; m <= ps.m_max; ++m) {
            ps.p[m] += lp * xi2;
            lp *= lam[i];
        }
    }
    const double w = 4.0 * ps.p[2];
    if (w <= 0.0) throw singular_evaluation("closed_form_weights: ||DF||^2 vanishes");

    // F-jet: D_u F = 1
    std::vector<double> fv(depth + 1, 0.0);
    fv[0] = F;
    fv[1] = 1.0;
    const DuJet fj = DuJet::from_values(std::move(fv));
    const DuJet p2 = ps.pjet(2, depth);
    const DuJet p3 = ps.pjet(3, depth);
    // delta_u = F / (2 P2) + P3 / P2^2  (= 2F/w + 16 w^{-2} sum lambda^3 x^2)
    const DuJet delta = fj / (p2 * 2.0) + p3 / (p2 * p2);

    ClosedFormWeights out;
    out.F = F;
    out.w = w;
    out.delta_u = delta.value();
    out.du_delta_u = delta.deriv(1);
    for (int j = 0; j <= K; ++j)
        out.du_pow_delta.push_back(j <= delta.depth() ? delta.deriv(j) : 0.0);

    // G recursion
    out.g.assign(K + 1, 0.0);
    out.g[0] = 1.0;
    DuJet gk(depth, 1.0);
    for (int k = 1; k <= K; ++k) {
        gk = gk * delta - gk.shifted();
        out.g[k] = gk.value();
    }
    // T recursion
    out.t.assign(K, 0.0); // T_1..T_K
    if (K >= 3) {
        DuJet tk(depth - 1, 0.0); // T_2 = 0
        const DuJet dud = delta.shifted();
        const DuJet dud2 = dud.shifted();
        for (int k = 2; k < K; ++k) {
            const int d = tk.depth();
            const HermiteCoeffs hc = HermiteCoeffs::make(k);
            DuJet dh(d - 1, 0.0);
            const DuJet xs = delta.truncated(d - 1);
            const DuJet ls = dud.truncated(d - 1);
            for (std::size_t i = 1; i < hc.c.size(); ++i) {
                DuJet term(d - 1, static_cast<double>(i) * static_cast<double>(hc.c[i]));
                term = term * xs.pow(k - 2 * static_cast<int>(i));
                term = term * ls.pow(static_cast<int>(i) - 1);
                dh = dh + term;
            }
            tk = delta.truncated(d) * tk - tk.shifted() - dh * dud2.truncated(d - 1);
            out.t[k] = tk.value(); // T_{k+1} stored at index k (T_1 at 0)
        }
    }
    return out;
}

std::vector<WeightedSample> sample(const Spectrum& s, std::size_t n, std::uint64_t seed,
                                   const SampleOptions& opts) {
    if (n < 1) throw std::invalid_argument("sample: n < 1");
    if (s.nonzero_count() == 0) throw std::invalid_argument("sample: all-zero spectrum");
    const std::size_t chunk = std::max<std::size_t>(opts.chunk_size, 1);
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<WeightedSample> out(n);
    const int N = s.size();
    parallel_chunks(n_chunks, opts.threads, [&](std::size_t c) {
        Rng rng(seed, c);
        std::vector<double> x(N);
        const std::size_t lo = c * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < N; ++j) x[j] = rng.next_normal();
            ClosedFormWeights wts = closed_form_weights(s, x, opts.max_gk_order);
            WeightedSample& ws = out[i];
            ws.F = wts.F;
            ws.w = wts.w;
            ws.delta_u = wts.delta_u;
            ws.du_delta_u = wts.du_delta_u;
            ws.g = std::move(wts.g);
            if (opts.store_points) ws.point = x;
        }
    });
    return out;
}

NegativeMomentResult negative_moment(const Spectrum& s, double alpha, double c_alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("negative_moment: alpha <= 0");
    const int n0 = s.nonzero_count();
    if (static_cast<double>(n0) <= 2.0 * alpha)
        throw divergence_error("negative_moment: E[G^{-2 alpha}] is infinite "
                               "(nonzero eigenvalue count <= 2 alpha)");
    std::vector<double> l2;
    for (double l : s.eigenvalues)
        if (l != 0.0) l2.push_back(l * l);

    // 1/Gamma(alpha) int_0^inf y^{alpha-1} prod (1 + 2 l^2 y)^{-1/2} dy,
    // after y = v^{1/alpha} the integrand is bounded at the origin
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double y = std::pow(v, 1.0 / alpha);
        double logprod = 0.0;
        for (double z : l2) logprod += std::log1p(2.0 * z * y);
        return std::exp(-0.5 * logprod);
    };
    const QuadResult q = integrate_semi_infinite(integrand, 1e-10, 1e-15);
    NegativeMomentResult out;
    out.value = q.value / (alpha * std::tgamma(alpha));
    out.quad_abs_error = q.abs_error / (alpha * std::tgamma(alpha));
    out.bound_index = n0;
    const double lam_n = std::fabs(s.eigenvalues[n0 - 1]);
    out.bound_factor = std::pow(static_cast<double>(n0), -alpha) * std::pow(lam_n, -2.0 * alpha);
    out.bound_with_calpha = c_alpha * out.bound_factor;
    out.bound_holds = out.value <= out.bound_with_calpha;
    return out;
}

double m_beta(const Spectrum& s, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("m_beta: beta <= 0");
    const NegativeMomentResult nm = negative_moment(s, 0.5 * beta);
    return 0.5 * std::pow(nm.value, 1.0 / beta);
}

BoundReport certificate_qrate(const Spectrum& s, double cq) {
    BoundReport r;
    r.user_cq = cq;
    const ExactMoments em = exact_moments(s);
    r.sigma2 = em.sigma2;
    r.fourth_moment_gap = em.excess_kurtosis;
    r.sqrt_gap = std::sqrt(em.excess_kurtosis);
    try {
        r.m6 = m_beta(s, 6.0);
    } catch (const divergence_error&) {
        throw certificate_unavailable(
            "certificate_qrate: M_6(F) is infinite; the spectrum needs more than 6 "
            "nonzero eigenvalues");
    }
    const double sigma = std::sqrt(r.sigma2);
    r.constant = cq * (r.m6 * r.m6 / sigma + r.m6 * r.m6 * r.m6 + 1.0 / (sigma * sigma * sigma));
    r.bound = r.constant * r.sqrt_gap;
    return r;
}

I2ConditionReport check_i2th_conditions(const std::vector<Spectrum>& spectra, int m,
                                        const I2ThresholdChecks& thresholds) {
    if (spectra.empty()) throw std::invalid_argument("check_i2th_conditions: empty sequence");
    if (m < 0) throw std::invalid_argument("check_i2th_conditions: m < 0");
    I2ConditionReport rep;
    rep.m = m;
    rep.tail_index = 6 * m + 6 * std::max(m / 2, 1);
    double inf_sup = std::numeric_limits<double>::infinity();
    for (const Spectrum& s : spectra) {
        I2ConditionRow row;
        row.two_sum_sq = 2.0 * s.sum_pow(2);
        row.sum_fourth = s.sum_pow(4);
        double sup = 0.0;
        for (int i = rep.tail_index + 1; i <= s.size(); ++i)
            sup = std::max(sup, std::fabs(s.eigenvalues[i - 1]) * std::sqrt(static_cast<double>(i)));
        row.sup_tail = sup;
        inf_sup = std::min(inf_sup, sup);
        rep.rows.push_back(row);
    }
    rep.inf_sup_tail = inf_sup;
    rep.cond_i = rep.rows.back().two_sum_sq > thresholds.sigma2_lower;
    bool decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].sum_fourth >= rep.rows[i - 1].sum_fourth) decreasing = false;
    rep.cond_ii = decreasing && rep.rows.back().sum_fourth <=
                                    std::max(thresholds.sum4_limit, 0.5 * rep.rows.front().sum_fourth);
    rep.cond_iii = inf_sup > thresholds.inf_positive;
    return rep;
}

} // namespace chaoslab
