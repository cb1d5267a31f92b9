#include "chaoslab/hermite.hpp"
#include "chaoslab/special.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoslab {

namespace {
void check_order(int k) {
    if (k < 0) throw std::domain_error("hermite: negative order");
    if (k > kMaxHermiteOrder) throw std::domain_error("hermite: order exceeds cap 16");
}
} // namespace

double hermite_eval(int k, double x) {
    check_order(k);
    if (k == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int q = 1; q < k; ++q) {
        const double next = x * h - static_cast<double>(q) * hm;
        hm = h;
        h = next;
    }
    return h;
}

double hermite_gen_eval(int k, double lambda, double x) {
    if (lambda < 0.0) throw std::domain_error("hermite_gen_eval: lambda < 0");
    return hermite_gen_eval_any(k, lambda, x);
}

double hermite_gen_eval_any(int k, double lambda, double x) {
    check_order(k);
    if (k == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int q = 1; q < k; ++q) {
        const double next = x * h - static_cast<double>(q) * lambda * hm;
        hm = h;
        h = next;
    }
    return h;
}

double hermite_gen_deriv_x(int k, double lambda, double x) {
    check_order(k);
    if (k == 0) return 0.0;
    return static_cast<double>(k) * hermite_gen_eval(k - 1, lambda, x);
}

double hermite_gen_deriv_lambda(int k, double lambda, double x) {
    check_order(k);
    const HermiteCoeffs hc = HermiteCoeffs::make(k);
    double acc = 0.0;
    for (std::size_t i = 1; i < hc.c.size(); ++i) {
        acc += static_cast<double>(i) * static_cast<double>(hc.c[i]) *
               std::pow(x, k - 2 * static_cast<int>(i)) *
               std::pow(lambda, static_cast<int>(i) - 1);
    }
    return acc;
}

HermiteCoeffs HermiteCoeffs::make(int k) {
    check_order(k);
    // dense coefficient vectors over x^0..x^k, recursion kept in exact integers
    std::vector<std::int64_t> prev{1};    // H_0
    std::vector<std::int64_t> cur{0, 1};  // H_1
    if (k == 0) cur = prev;
    for (int q = 1; q < k; ++q) {
        std::vector<std::int64_t> next(q + 2, 0);
        for (int d = 0; d <= q; ++d) next[d + 1] += cur[d];
        for (int d = 0; d < static_cast<int>(prev.size()); ++d)
            next[d] -= static_cast<std::int64_t>(q) * prev[d];
        prev = std::move(cur);
        cur = std::move(next);
    }
    HermiteCoeffs out;
    out.order = k;
    for (int i = 0; 2 * i <= k; ++i) out.c.push_back(cur[k - 2 * i]);
    return out;
}

double HermiteCoeffs::reconstruct(double lambda, double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += static_cast<double>(c[i]) *
               std::pow(x, order - 2 * static_cast<int>(i)) *
               std::pow(lambda, static_cast<double>(i));
    }
    return acc;
}

std::vector<std::int64_t> monomial_in_hermite_basis(int k) {
    check_order(k);
    // x^k = sum_j b_j H_j; recursion b^{(k)}_j = b^{(k-1)}_{j-1} + (j+1) b^{(k-1)}_{j+1}
    std::vector<std::int64_t> b{1}; // x^0 = H_0
    for (int m = 1; m <= k; ++m) {
        std::vector<std::int64_t> nb(m + 1, 0);
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
            if (b[j] == 0) continue;
            nb[j + 1] += b[j];
            if (j >= 1) nb[j - 1] += static_cast<std::int64_t>(j) * b[j];
        }
        b = std::move(nb);
    }
    return b;
}

double normal_density_derivative(int k, double sigma, double x) {
    check_order(k);
    if (sigma <= 0.0) throw std::domain_error("normal_density_derivative: sigma <= 0");
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(sigma, -k) * hermite_eval(k, x / sigma) * normal_pdf(x, sigma);
}

} // namespace chaoslab
