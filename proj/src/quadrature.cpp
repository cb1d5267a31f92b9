#include "chaoslab/quadrature.hpp"
#include "chaoslab/special.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace chaoslab {

namespace {

// G7-K15 nodes on [0,1] half-interval: {abscissa, gauss weight, kronrod weight}
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

double gk15(const std::function<double(double)>& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g7 = kNW[0][1] * y0;
    double k15 = kNW[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNW[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kNW[i][1] * yi;
        k15 += kNW[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    const double d = 200.0 * std::fabs(g7 - k15);
    err = d * std::sqrt(d);
    return k15;
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol) {
    constexpr int kMaxIntervals = 4000;
    std::vector<std::pair<double, double>> stack;
    stack.reserve(64);
    stack.emplace_back(a, b);
    QuadResult out;
    double sum = 0.0, err_sum = 0.0;
    int processed = 0;
    // first pass for the global scale used by the relative criterion
    double coarse_err = 0.0;
    const double coarse = gk15(f, a, b, coarse_err);
    const double scale = std::fabs(coarse) + abs_tol;
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double s = gk15(f, lo, hi, err);
        ++processed;
        if (err < rel_tol * scale || err < abs_tol ||
            processed + static_cast<int>(stack.size()) >= kMaxIntervals ||
            hi - lo < 1e-300) {
            sum += s;
            err_sum += err;
            continue;
        }
        const double mid = 0.5 * (lo + hi);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    out.value = sum;
    out.abs_error = err_sum;
    out.intervals = processed;
    out.converged = err_sum <= rel_tol * (std::fabs(sum) + abs_tol) * 16.0 + abs_tol;
    return out;
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double rel_tol, double abs_tol) {
    auto g = [&f](double t) {
        const double om = 1.0 - t;
        const double y = t / om;
        const double v = f(y);
        // integrable tails: f vanishing at +inf dominates the Jacobian blowup
        return v == 0.0 ? 0.0 : v / (om * om);
    };
    return integrate(g, 0.0, 1.0, rel_tol, abs_tol);
}

namespace {

// evaluate monic-family value of Legendre P_n (not monic, standard normalization)
double legendre_value(int n, double x) {
    double pm = 1.0, p = x;
    if (n == 0) return 1.0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * x * p - k * pm) / (k + 1.0);
        pm = p;
        p = next;
    }
    return p;
}

double legendre_deriv(int n, double x) {
    // (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
    const double p = legendre_value(n, x);
    const double pm = legendre_value(n - 1, x);
    return n * (pm - x * p) / (1.0 - x * x);
}

} // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::domain_error("gauss_legendre: n < 1");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // symmetric roots via Newton from Chebyshev-like initial guesses
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const double dx = legendre_value(n, x) / legendre_deriv(n, x);
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double d = legendre_deriv(n, x);
        const double w = 2.0 / ((1.0 - x * x) * d * d);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    // map [-1,1] -> [a,b]
    const double c1 = 0.5 * (b - a), c0 = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = c0 + c1 * r.nodes[i];
        r.weights[i] *= c1;
    }
    return r;
}

namespace {

double hermite_he(int n, double x) {
    if (n == 0) return 1.0;
    double hm = 1.0, h = x;
    for (int q = 1; q < n; ++q) {
        const double next = x * h - static_cast<double>(q) * hm;
        hm = h;
        h = next;
    }
    return h;
}

} // namespace

QuadratureRule gauss_hermite_prob(int n) {
    if (n < 1) throw std::domain_error("gauss_hermite_prob: n < 1");
    // roots of He_n by interlacing bisection: roots of He_k separate roots of He_{k+1}
    std::vector<double> roots{0.0}; // He_1
    for (int k = 2; k <= n; ++k) {
        std::vector<double> nr(k);
        // outer bound: |root| <= sqrt(4k+2) comfortably
        const double bound = std::sqrt(4.0 * k + 2.0);
        std::vector<double> brackets;
        brackets.push_back(-bound);
        for (double r0 : roots) brackets.push_back(r0);
        brackets.push_back(bound);
        for (int i = 0; i < k; ++i) {
            double lo = brackets[i], hi = brackets[i + 1];
            double flo = hermite_he(k, lo);
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = hermite_he(k, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            nr[i] = 0.5 * (lo + hi);
        }
        roots = std::move(nr);
    }
    QuadratureRule r;
    r.nodes = roots;
    r.weights.resize(n);
    // w_i = (n-1)! / (n * He_{n-1}(x_i)^2), normalized so sum w_i = 1
    double fact = 1.0;
    for (int j = 2; j <= n - 1; ++j) fact *= j;
    for (int i = 0; i < n; ++i) {
        const double hnm1 = hermite_he(n - 1, r.nodes[i]);
        r.weights[i] = fact / (static_cast<double>(n) * hnm1 * hnm1);
    }
    return r;
}

} // namespace chaoslab
