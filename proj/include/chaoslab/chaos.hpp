#pragma once

#include "chaoslab/functional.hpp"
#include "chaoslab/jet.hpp"

#include <map>
#include <vector>

namespace chaoslab {

// Polynomial functional of (X_1..X_N) stored in the tensor-Hermite basis:
// F = sum_a coeff[a] * prod_i He_{a_i}(X_i), graded by q = sum_i a_i.
class ChaosExpansion {
public:
    ChaosExpansion() = default;
    explicit ChaosExpansion(int dim) : dim_(dim) {}

    static ChaosExpansion from_polynomial(const Functional& p);
    // pure second chaos from a diagonal spectrum: sum_i lambda_i He_2(X_i)
    static ChaosExpansion second_chaos_diagonal(const std::vector<double>& lambda);
    // first chaos I_1(h) = sum h_i X_i
    static ChaosExpansion first_chaos(const std::vector<double>& h);

    int dim() const { return dim_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }
    void set_term(const std::vector<int>& degrees, double coeff);

    double expectation() const;       // grade-0 coefficient
    double second_moment() const;     // E[F^2], exact from coefficients
    double variance() const;
    int max_grade() const;
    // coefficients with grade != q dropped
    ChaosExpansion grade_part(int q) const;
    // grade -> squared norm contribution
    std::map<int, double> grade_norms() const;

    ChaosExpansion apply_L() const;          // grade q scaled by -q
    ChaosExpansion apply_L_inverse() const;  // grade q >= 1 scaled by -1/q, constants dropped

    ChaosExpansion operator+(const ChaosExpansion& o) const;
    ChaosExpansion operator-(const ChaosExpansion& o) const;
    ChaosExpansion scaled(double s) const;

    double eval(const std::vector<double>& x) const;
    Jet eval_jet(const std::vector<double>& x, std::shared_ptr<const JetSpace> space) const;

    Functional to_functional() const;

private:
    int dim_ = 0;
    std::map<std::vector<int>, double> terms_;
};

} // namespace chaoslab
