#include "chaoslab/chaos.hpp"
#include "chaoslab/hermite.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chaoslab {

void ChaosExpansion::set_term(const std::vector<int>& degrees, double coeff) {
    if (static_cast<int>(degrees.size()) != dim_)
        throw std::invalid_argument("ChaosExpansion::set_term: degree vector size");
    if (coeff == 0.0)
        terms_.erase(degrees);
    else
        terms_[degrees] = coeff;
}

ChaosExpansion ChaosExpansion::from_polynomial(const Functional& p) {
    if (!p.is_polynomial())
        throw std::invalid_argument("ChaosExpansion::from_polynomial: expression has division");
    const int dim = std::max(p.min_dimension(), 1);
    const int deg = p.polynomial_degree();
    if (deg > kMaxHermiteOrder)
        throw std::invalid_argument("ChaosExpansion::from_polynomial: degree exceeds cap");
    // Taylor coefficients at the origin are exactly the monomial coefficients.
    const Jet j = p.eval_jet(std::vector<double>(dim, 0.0), JetSpace::get(dim, deg));
    const JetSpace& sp = j.space();

    // per-variable change of basis x^k = sum_j b_{k,j} He_j(x)
    std::vector<std::vector<std::int64_t>> basis(deg + 1);
    for (int k = 0; k <= deg; ++k) basis[k] = monomial_in_hermite_basis(k);

    ChaosExpansion out(dim);
    std::vector<int> hdeg(dim, 0);
    // expand each monomial recursively over variables
    for (std::size_t t = 0; t < sp.size(); ++t) {
        const double c = j.coefficients()[t];
        if (c == 0.0) continue;
        const std::vector<int>& alpha = sp.multi_index(t);
        // tensor product of the hermite expansions of each x_i^{alpha_i}
        std::vector<int> vars;
        for (int v = 0; v < dim; ++v)
            if (alpha[v] > 0) vars.push_back(v);
        // recursive lambda
        auto rec = [&](auto&& self, std::size_t vi, double acc) -> void {
            if (acc == 0.0) return;
            if (vi == vars.size()) {
                auto key = hdeg;
                auto it = out.terms_.find(key);
                if (it == out.terms_.end())
                    out.terms_[key] = acc;
                else
                    it->second += acc;
                return;
            }
            const int v = vars[vi];
            const auto& b = basis[alpha[v]];
            for (int jj = alpha[v] % 2; jj < static_cast<int>(b.size()); jj += 2) {
                if (b[jj] == 0) continue;
                hdeg[v] = jj;
                self(self, vi + 1, acc * static_cast<double>(b[jj]));
            }
            hdeg[v] = 0;
        };
        rec(rec, 0, c);
    }
    // clean up exact zeros produced by cancellation
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
        if (it->second == 0.0)
            it = out.terms_.erase(it);
        else
            ++it;
    }
    return out;
}

ChaosExpansion ChaosExpansion::second_chaos_diagonal(const std::vector<double>& lambda) {
    ChaosExpansion out(static_cast<int>(lambda.size()));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] == 0.0) continue;
        std::vector<int> key(lambda.size(), 0);
        key[i] = 2;
        out.terms_[key] = lambda[i];
    }
    return out;
}

ChaosExpansion ChaosExpansion::first_chaos(const std::vector<double>& h) {
    ChaosExpansion out(static_cast<int>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0.0) continue;
        std::vector<int> key(h.size(), 0);
        key[i] = 1;
        out.terms_[key] = h[i];
    }
    return out;
}

double ChaosExpansion::expectation() const {
    const std::vector<int> zero(dim_, 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? 0.0 : it->second;
}

double ChaosExpansion::second_moment() const {
    double acc = 0.0;
    for (const auto& [deg, c] : terms_) {
        double norm = 1.0;
        for (int a : deg)
            for (int i = 2; i <= a; ++i) norm *= i;
        acc += c * c * norm;
    }
    return acc;
}

double ChaosExpansion::variance() const {
    const double m = expectation();
    return second_moment() - m * m;
}

int ChaosExpansion::max_grade() const {
    int g = 0;
    for (const auto& [deg, c] : terms_)
        g = std::max(g, std::accumulate(deg.begin(), deg.end(), 0));
    return g;
}

ChaosExpansion ChaosExpansion::grade_part(int q) const {
    ChaosExpansion out(dim_);
    for (const auto& [deg, c] : terms_)
        if (std::accumulate(deg.begin(), deg.end(), 0) == q) out.terms_[deg] = c;
    return out;
}

std::map<int, double> ChaosExpansion::grade_norms() const {
    std::map<int, double> out;
    for (const auto& [deg, c] : terms_) {
        double norm = 1.0;
        for (int a : deg)
            for (int i = 2; i <= a; ++i) norm *= i;
        out[std::accumulate(deg.begin(), deg.end(), 0)] += c * c * norm;
    }
    return out;
}

ChaosExpansion ChaosExpansion::apply_L() const {
    ChaosExpansion out(dim_);
    for (const auto& [deg, c] : terms_) {
        const int q = std::accumulate(deg.begin(), deg.end(), 0);
        if (q == 0) continue;
        out.terms_[deg] = -static_cast<double>(q) * c;
    }
    return out;
}

ChaosExpansion ChaosExpansion::apply_L_inverse() const {
    ChaosExpansion out(dim_);
    for (const auto& [deg, c] : terms_) {
        const int q = std::accumulate(deg.begin(), deg.end(), 0);
        if (q == 0) continue;
        out.terms_[deg] = -c / static_cast<double>(q);
    }
    return out;
}

ChaosExpansion ChaosExpansion::operator+(const ChaosExpansion& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("ChaosExpansion: dimension mismatch in +");
    ChaosExpansion out = *this;
    for (const auto& [deg, c] : o.terms_) out.terms_[deg] += c;
    return out;
}

ChaosExpansion ChaosExpansion::operator-(const ChaosExpansion& o) const {
    return *this + o.scaled(-1.0);
}

ChaosExpansion ChaosExpansion::scaled(double s) const {
    ChaosExpansion out(dim_);
    for (const auto& [deg, c] : terms_) out.terms_[deg] = s * c;
    return out;
}

double ChaosExpansion::eval(const std::vector<double>& x) const {
    double acc = 0.0;
    for (const auto& [deg, c] : terms_) {
        double t = c;
        for (int i = 0; i < dim_; ++i)
            if (deg[i] > 0) t *= hermite_eval(deg[i], x[i]);
        acc += t;
    }
    return acc;
}

Jet ChaosExpansion::eval_jet(const std::vector<double>& x,
                             std::shared_ptr<const JetSpace> space) const {
    if (space->dim() != dim_)
        throw std::invalid_argument("ChaosExpansion::eval_jet: dimension mismatch");
    const JetSpace& sp = *space;
    const int R = sp.order();
    // per-variable univariate Taylor rows of He_k at x_i:
    // coefficient j of He_a(X_i) at x_i is C(a, j) He_{a-j}(x_i)
    std::vector<double> coeffs(sp.size(), 0.0);
    for (const auto& [deg, c] : terms_) {
        // rows[i][j]
        std::vector<std::vector<double>> rows(dim_);
        for (int i = 0; i < dim_; ++i) {
            const int a = deg[i];
            rows[i].assign(R + 1, 0.0);
            double binom = 1.0;
            for (int j = 0; j <= std::min(a, R); ++j) {
                rows[i][j] = binom * hermite_eval(a - j, x[i]);
                binom = binom * (a - j) / (j + 1);
            }
            if (a == 0) {
                rows[i].assign(R + 1, 0.0);
                rows[i][0] = 1.0;
            }
        }
        for (std::size_t t = 0; t < sp.size(); ++t) {
            const auto& beta = sp.multi_index(t);
            double prod = c;
            for (int i = 0; i < dim_ && prod != 0.0; ++i) prod *= rows[i][beta[i]];
            coeffs[t] += prod;
        }
    }
    return Jet::from_coefficients(space, std::move(coeffs));
}

Functional ChaosExpansion::to_functional() const {
    // build sum of products of univariate Hermite polynomials in coordinates
    Functional acc = Functional::constant(0.0);
    for (const auto& [deg, c] : terms_) {
        Functional term = Functional::constant(c);
        for (int i = 0; i < dim_; ++i) {
            if (deg[i] == 0) continue;
            // He_k(x) with exact integer coefficients
            const HermiteCoeffs hc = HermiteCoeffs::make(deg[i]);
            Functional xi = Functional::coordinate(i);
            Functional he = Functional::constant(0.0);
            for (std::size_t idx = 0; idx < hc.c.size(); ++idx) {
                const int power = deg[i] - 2 * static_cast<int>(idx);
                he = he + Functional::constant(static_cast<double>(hc.c[idx])) * xi.pow(power);
            }
            term = term * he;
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace chaoslab
