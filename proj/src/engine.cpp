#include "chaoslab/engine.hpp"
#include "chaoslab/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoslab {
namespace engine {

std::vector<double> malliavin_derivative(const Functional& f, const std::vector<double>& point) {
    const Jet j = f.eval_jet(point, 1);
    const int n = static_cast<int>(point.size());
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = j.partial(i).value();
    return g;
}

double grad_norm_squared(const Functional& f, const std::vector<double>& point) {
    double acc = 0.0;
    for (double gi : malliavin_derivative(f, point)) acc += gi * gi;
    return acc;
}

double divergence(const std::vector<Functional>& u, const std::vector<double>& point) {
    if (u.size() != point.size())
        throw std::invalid_argument("divergence: component/point size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Jet j = u[i].eval_jet(point, 1);
        acc += j.value() * point[i] - j.partial(static_cast<int>(i)).value();
    }
    return acc;
}

double delta_of_gradient(const Functional& f, const std::vector<double>& point) {
    const Jet j = f.eval_jet(point, 2);
    double acc = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const Jet di = j.partial(static_cast<int>(i));
        acc += di.value() * point[i] - di.partial(static_cast<int>(i)).value();
    }
    return acc;
}

namespace {

// jet-valued contraction <D g, u> where g and u_i live in the same space;
// the result sits one order lower
Jet directional_jet(const Jet& g, const std::vector<Jet>& u) {
    const int lower = g.order() - 1;
    Jet acc = Jet::constant(JetSpace::get(g.dim(), lower), 0.0);
    for (int i = 0; i < g.dim(); ++i)
        acc += g.partial(i).mul(u[i].truncated(lower));
    return acc;
}

// delta(u) as a jet one order below the components of u
Jet divergence_jet(const std::vector<Jet>& u, const std::vector<double>& point) {
    const int dim = static_cast<int>(point.size());
    const int lower = u[0].order() - 1;
    auto lsp = JetSpace::get(dim, lower);
    Jet acc = Jet::constant(lsp, 0.0);
    for (int i = 0; i < dim; ++i) {
        const Jet xi = Jet::coordinate(lsp, i, point[i]);
        acc += u[i].truncated(lower).mul(xi) - u[i].partial(i);
    }
    return acc;
}

// u = DF / ||DF||^2 as jets of order (order of F jet) - 1
std::vector<Jet> weight_field(const Jet& fjet) {
    const int dim = fjet.dim();
    std::vector<Jet> df;
    df.reserve(dim);
    for (int i = 0; i < dim; ++i) df.push_back(fjet.partial(i));
    Jet w = df[0].mul(df[0]);
    for (int i = 1; i < dim; ++i) w += df[i].mul(df[i]);
    const Jet winv = w.reciprocal();
    std::vector<Jet> u;
    u.reserve(dim);
    for (int i = 0; i < dim; ++i) u.push_back(df[i].mul(winv));
    return u;
}

} // namespace

double iterated_directional(const Functional& g, const std::vector<Functional>& u, int k,
                            const std::vector<double>& point) {
    if (k < 0) throw std::invalid_argument("iterated_directional: k < 0");
    const int dim = static_cast<int>(point.size());
    Jet gj = g.eval_jet(point, k);
    if (k == 0) return gj.value();
    for (int step = 0; step < k; ++step) {
        const int ord = gj.order();
        std::vector<Jet> uj;
        uj.reserve(dim);
        for (int i = 0; i < dim; ++i) uj.push_back(u[i].eval_jet(point, ord));
        gj = directional_jet(gj, uj);
    }
    return gj.value();
}

GkReport gk_full(const Functional& F, int m, const std::vector<double>& point) {
    if (m < 0) throw std::invalid_argument("gk_full: m < 0");
    const int dim = static_cast<int>(point.size());
    const int R = m + 3; // T_{m+1} consumes one more order than G_{m+1}
    const Jet fjet = F.eval_jet(point, JetSpace::get(dim, R));
    std::vector<Jet> u = weight_field(fjet); // order R-1

    // delta_u and its directional derivatives as jets
    Jet delta = divergence_jet(u, point); // order R-2
    GkReport rep;
    rep.delta_u = delta.value();

    // D_u^j delta_u jets, j = 0..m+1 (each one order lower)
    std::vector<Jet> dj;
    dj.push_back(delta);
    for (int j = 1; j <= m + 1 && dj.back().order() >= 1; ++j) {
        const int ord = dj.back().order();
        std::vector<Jet> ut;
        ut.reserve(dim);
        for (int i = 0; i < dim; ++i) ut.push_back(u[i].truncated(ord));
        dj.push_back(directional_jet(dj.back(), ut));
    }
    rep.du_delta_u = dj.size() > 1 ? dj[1].value() : 0.0;
    for (int j = 0; j <= m && j < static_cast<int>(dj.size()); ++j)
        rep.du_pow_delta_u.push_back(dj[j].value());

    // G recursion on jets
    std::vector<double> g{1.0};
    Jet gk = Jet::constant(JetSpace::get(dim, delta.order()), 1.0);
    for (int k = 0; k <= m; ++k) {
        const int ord = gk.order();
        std::vector<Jet> ut;
        ut.reserve(dim);
        for (int i = 0; i < dim; ++i) ut.push_back(u[i].truncated(ord));
        const Jet prod = gk.mul(delta.truncated(ord)).truncated(ord - 1);
        gk = prod - directional_jet(gk, ut);
        g.push_back(gk.value());
    }
    rep.g = std::move(g);

    // T recursion on jets: T_1 = T_2 = 0
    std::vector<double> t;
    if (m + 1 >= 1) t.push_back(0.0);
    if (m + 1 >= 2) t.push_back(0.0);
    if (m + 1 >= 3) {
        Jet tk = Jet::constant(JetSpace::get(dim, delta.order() - 1), 0.0); // T_2
        for (int k = 2; k <= m; ++k) {
            // T_{k+1} = delta_u T_k - D_u T_k - dH_k/dlambda(D_u delta, delta) D_u^2 delta
            const int ord = tk.order();
            std::vector<Jet> ut;
            ut.reserve(dim);
            for (int i = 0; i < dim; ++i) ut.push_back(u[i].truncated(ord));
            Jet next = delta.truncated(ord).mul(tk).truncated(ord - 1) - directional_jet(tk, ut);
            // polynomial dH_k/dlambda = sum_{i>=1} i c_{k,i} x^{k-2i} lambda^{i-1}
            const HermiteCoeffs hc = HermiteCoeffs::make(k);
            auto nsp = JetSpace::get(dim, ord - 1);
            Jet dh = Jet::constant(nsp, 0.0);
            const Jet xs = delta.truncated(ord - 1);
            const Jet ls = dj[1].truncated(ord - 1);
            for (std::size_t i = 1; i < hc.c.size(); ++i) {
                Jet term = Jet::constant(nsp, static_cast<double>(i) * static_cast<double>(hc.c[i]));
                term = term.mul(xs.pow(k - 2 * static_cast<int>(i)));
                term = term.mul(ls.pow(static_cast<int>(i) - 1));
                dh += term;
            }
            next -= dh.mul(dj[2].truncated(ord - 1));
            tk = next;
            t.push_back(tk.value());
        }
    }
    rep.t = std::move(t);
    return rep;
}

std::vector<double> gk_sequence(const Functional& F, int m, const std::vector<double>& point) {
    return gk_full(F, m, point).g;
}

std::vector<double> tk_sequence(const Functional& F, int m, const std::vector<double>& point) {
    return gk_full(F, m, point).t;
}

KernelMatrix KernelMatrix::diagonal(const std::vector<double>& d) {
    KernelMatrix m;
    m.n = static_cast<int>(d.size());
    m.a.assign(m.n * m.n, 0.0);
    for (int i = 0; i < m.n; ++i) m.at(i, i) = d[i];
    return m;
}

double KernelMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : a) acc += x * x;
    return std::sqrt(acc);
}

KernelMatrix KernelMatrix::multiply(const KernelMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("KernelMatrix::multiply: size mismatch");
    KernelMatrix r;
    r.n = n;
    r.a.assign(n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

double KernelMatrix::trace_inner(const KernelMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("KernelMatrix::trace_inner: size mismatch");
    double acc = 0.0;
    for (int i = 0; i < n * n; ++i) acc += a[i] * o.a[i];
    return acc;
}

Kernel contract(const Kernel& f, const Kernel& g, int r) {
    if (std::holds_alternative<KernelVector>(f) && std::holds_alternative<KernelVector>(g)) {
        const auto& a = std::get<KernelVector>(f).v;
        const auto& b = std::get<KernelVector>(g).v;
        if (a.size() != b.size()) throw std::invalid_argument("contract: vector size mismatch");
        if (r == 1) {
            double acc = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
            return acc;
        }
        if (r == 0) {
            KernelMatrix m;
            m.n = static_cast<int>(a.size());
            m.a.resize(m.n * m.n);
            for (int i = 0; i < m.n; ++i)
                for (int j = 0; j < m.n; ++j) m.at(i, j) = a[i] * b[j];
            return m;
        }
        throw std::invalid_argument("contract: r out of range for vectors");
    }
    if (std::holds_alternative<KernelMatrix>(f) && std::holds_alternative<KernelMatrix>(g)) {
        const auto& a = std::get<KernelMatrix>(f);
        const auto& b = std::get<KernelMatrix>(g);
        if (r == 1) return a.multiply(b);
        if (r == 2) return a.trace_inner(b);
        throw std::invalid_argument("contract: r = 0 on two matrices leaves order <= 2 range");
    }
    // matrix (x)_1 vector -> vector
    if (std::holds_alternative<KernelMatrix>(f) && std::holds_alternative<KernelVector>(g)) {
        const auto& a = std::get<KernelMatrix>(f);
        const auto& b = std::get<KernelVector>(g).v;
        if (r != 1) throw std::invalid_argument("contract: matrix-vector supports r = 1 only");
        if (a.n != static_cast<int>(b.size()))
            throw std::invalid_argument("contract: matrix-vector size mismatch");
        KernelVector out;
        out.v.assign(a.n, 0.0);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) out.v[i] += a.at(i, j) * b[j];
        return out;
    }
    if (std::holds_alternative<KernelVector>(f) && std::holds_alternative<KernelMatrix>(g))
        return contract(g, f, r);
    throw std::invalid_argument("contract: unsupported kernel ranks");
}

} // namespace engine
} // namespace chaoslab
