#pragma once

#include <cmath>
#include <stdexcept>

namespace chaoslab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;

// density of N(0, sigma^2)
inline double normal_pdf(double x, double sigma = 1.0) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi);
}

inline double normal_cdf(double x, double sigma = 1.0) {
    return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
}

// scaled complementary error function erfcx(t) = e^{t^2} erfc(t), t >= 0.
// Continued-fraction / series hybrid good to ~1e-15 relative.
inline double erfcx(double t) {
    if (t < 0.0) throw std::domain_error("erfcx: negative argument");
    if (t < 1.5) return std::exp(t * t) * std::erfc(t);
    // Lentz continued fraction for large t
    const double inv_sqrt_pi = 0.56418958354775628694807945156077;
    double num = 1.0, den = t;
    double frac = num / den;
    // erfcx(t) = 1/sqrt(pi) * 1/(t + 1/(2t + 2/(t + 3/(2t + ...))))
    // evaluate backwards with enough terms
    double cf = 0.0;
    for (int k = 60; k >= 1; --k) {
        const double a = 0.5 * k;
        cf = a / (t + cf);
    }
    frac = 1.0 / (t + cf);
    return inv_sqrt_pi * frac;
}

// E[|N|^k-style helper: double factorial (k-1)!! for even moments
inline double double_factorial(int k) {
    double r = 1.0;
    for (int i = k; i > 1; i -= 2) r *= static_cast<double>(i);
    return r;
}

// E[Y^k] for Y ~ N(0, sigma^2)
inline double normal_moment(int k, double sigma) {
    if (k < 0) throw std::domain_error("normal_moment: negative order");
    if (k % 2 == 1) return 0.0;
    return std::pow(sigma, k) * double_factorial(k - 1);
}

// Incomplete Gaussian moment I_k(a) = int_a^inf y^k e^{-y^2/(2 sigma^2)} dy.
// Recursion I_k = sigma^2 [a^{k-1} e^{-a^2/(2s^2)} + (k-1) I_{k-2}].
inline double gaussian_tail_moment(int k, double a, double sigma) {
    if (k < 0) throw std::domain_error("gaussian_tail_moment: negative order");
    const double s2 = sigma * sigma;
    const double e = std::exp(-0.5 * a * a / s2);
    // I_0 = sigma*sqrt(pi/2)*erfc(a/(sigma*sqrt(2)))
    double i0 = sigma * std::sqrt(kPi / 2.0) * std::erfc(a / (sigma * std::sqrt(2.0)));
    double i1 = s2 * e;
    if (k == 0) return i0;
    if (k == 1) return i1;
    double im2 = (k % 2 == 0) ? i0 : i1;
    double next = 0.0;
    for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
        next = s2 * (std::pow(a, j - 1) * e + (j - 1) * im2);
        im2 = next;
    }
    return im2;
}

// J_k(x) = e^{x^2/(2 sigma^2)} int_{|x|}^inf y^k e^{-y^2/(2 sigma^2)} dy,
// computed without overflow (the exponential factors cancel analytically).
inline double scaled_tail_moment(int k, double x, double sigma) {
    const double a = std::fabs(x);
    const double s2 = sigma * sigma;
    // J_0 = sigma*sqrt(pi/2)*erfcx(a/(sigma*sqrt2)), J_1 = sigma^2
    double j0 = sigma * std::sqrt(kPi / 2.0) * erfcx(a / (sigma * std::sqrt(2.0)));
    double j1 = s2;
    if (k == 0) return j0;
    if (k == 1) return j1;
    double jm2 = (k % 2 == 0) ? j0 : j1;
    double next = 0.0;
    for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
        next = s2 * (std::pow(a, j - 1) + (j - 1) * jm2);
        jm2 = next;
    }
    return jm2;
}

} // namespace chaoslab
