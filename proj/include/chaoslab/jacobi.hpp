#pragma once

#include "chaoslab/engine.hpp"

#include <vector>

namespace chaoslab {

struct JacobiResult {
    std::vector<double> eigenvalues; // sorted descending
    double max_residual = 0.0;       // max_i ||A v_i - lambda_i v_i||_inf
    int sweeps = 0;
};

// Cyclic Jacobi sweeps on a symmetric matrix until every off-diagonal entry
// is below the tolerance. Deterministic rotation order.
JacobiResult jacobi_eigenvalues(const engine::KernelMatrix& a, double off_tol = 1e-12,
                                int max_sweeps = 64);

// spectral norm (largest |eigenvalue|) of a symmetric matrix
double jacobi_operator_norm(const engine::KernelMatrix& a);

} // namespace chaoslab
