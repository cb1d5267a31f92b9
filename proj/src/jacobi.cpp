#include "chaoslab/jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace chaoslab {

JacobiResult jacobi_eigenvalues(const engine::KernelMatrix& input, double off_tol, int max_sweeps) {
    const int n = input.n;
    std::vector<double> a = input.a;         // working copy, row-major
    std::vector<double> v(n * n, 0.0);       // accumulated rotations
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    auto A = [&](int i, int j) -> double& { return a[i * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[i * n + j]; };

    JacobiResult out;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(A(i, j)));
        out.sweeps = sweep;
        if (off <= off_tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::fabs(apq) <= off_tol * 1e-3) continue;
                const double theta = 0.5 * (A(q, q) - A(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    out.eigenvalues.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        out.eigenvalues[i] = A(i, i);
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return out.eigenvalues[i] > out.eigenvalues[j]; });
    std::vector<double> sorted(n);
    for (int i = 0; i < n; ++i) sorted[i] = out.eigenvalues[order[i]];
    out.eigenvalues = std::move(sorted);

    // residual against the original matrix with the accumulated eigenvectors
    double max_res = 0.0;
    for (int col = 0; col < n; ++col) {
        const int oc = order[col];
        const double lam = out.eigenvalues[col];
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += input.at(i, k) * V(k, oc);
            max_res = std::max(max_res, std::fabs(acc - lam * V(i, oc)));
        }
    }
    out.max_residual = max_res;
    return out;
}

double jacobi_operator_norm(const engine::KernelMatrix& a) {
    if (a.n == 1) return std::fabs(a.a[0]);
    const JacobiResult r = jacobi_eigenvalues(a, 1e-12, 64);
    double m = 0.0;
    for (double ev : r.eigenvalues) m = std::max(m, std::fabs(ev));
    return m;
}

} // namespace chaoslab
