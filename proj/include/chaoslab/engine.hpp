#pragma once

#include "chaoslab/chaos.hpp"
#include "chaoslab/functional.hpp"
#include "chaoslab/jet.hpp"

#include <variant>
#include <vector>

namespace chaoslab {

// Finite-dimensional Malliavin calculus under the standard Gaussian on R^N.
// All operations are pointwise: D is the gradient against the coordinate
// basis and delta(u) = sum_i u_i x_i - sum_i du_i/dx_i.
namespace engine {

// gradient of f at the point; needs jets of order >= 1
std::vector<double> malliavin_derivative(const Functional& f, const std::vector<double>& point);

double grad_norm_squared(const Functional& f, const std::vector<double>& point);

double divergence(const std::vector<Functional>& u, const std::vector<double>& point);

// delta(DF) at the point, from one order-2 jet of F
double delta_of_gradient(const Functional& f, const std::vector<double>& point);

// D_u^k g at the point via nested jet contractions
double iterated_directional(const Functional& g, const std::vector<Functional>& u, int k,
                            const std::vector<double>& point);

// G_0..G_{m+1} with G_{k+1} = delta(G_k u), u = DF / ||DF||^2, evaluated
// through the factor-out rule G_{k+1} = G_k delta_u - D_u G_k
std::vector<double> gk_sequence(const Functional& F, int m, const std::vector<double>& point);

// T_1..T_{m+1} from T_{k+1} = delta_u T_k - D_u T_k
//                            - dH_k/dlambda(D_u delta_u, delta_u) D_u^2 delta_u
std::vector<double> tk_sequence(const Functional& F, int m, const std::vector<double>& point);

// both sequences from one jet evaluation, plus the ingredients of the
// H_k(D_u delta_u, delta_u) comparison
struct GkReport {
    std::vector<double> g;        // G_0..G_{m+1}
    std::vector<double> t;        // T_1..T_{m+1} (t[0] = T_1)
    double delta_u = 0.0;
    double du_delta_u = 0.0;
    std::vector<double> du_pow_delta_u; // D_u^j delta_u for j = 0..m
};
GkReport gk_full(const Functional& F, int m, const std::vector<double>& point);

// Symmetric kernels of order one (vector) and two (matrix), the carriers of
// first- and second-chaos integrands.
struct KernelVector {
    std::vector<double> v;
};
struct KernelMatrix {
    int n = 0;
    std::vector<double> a; // row-major n*n, symmetric

    double& at(int i, int j) { return a[i * n + j]; }
    double at(int i, int j) const { return a[i * n + j]; }
    static KernelMatrix diagonal(const std::vector<double>& d);
    double frobenius_norm() const;
    KernelMatrix multiply(const KernelMatrix& o) const;
    double trace_inner(const KernelMatrix& o) const;
};

using Kernel = std::variant<double, KernelVector, KernelMatrix>;

// contraction f (x)_r g for kernels of order <= 2; r = 0 tensor product
// (only when the output order stays <= 2), r = 1 matrix/vector product,
// r = 2 trace inner product
Kernel contract(const Kernel& f, const Kernel& g, int r);

} // namespace engine

} // namespace chaoslab
