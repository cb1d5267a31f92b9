#include "chaoslab/dujet.hpp"
#include "chaoslab/jet.hpp"

#include <algorithm>
#include <cmath>

namespace chaoslab {

namespace {
// binomial coefficients up to the small depths used here
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
} // namespace

DuJet DuJet::operator-() const {
    DuJet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

DuJet DuJet::operator+(const DuJet& o) const {
    const int d = std::min(depth(), o.depth());
    DuJet r(d);
    for (int i = 0; i <= d; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

DuJet DuJet::operator-(const DuJet& o) const {
    const int d = std::min(depth(), o.depth());
    DuJet r(d);
    for (int i = 0; i <= d; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

DuJet DuJet::operator*(const DuJet& o) const {
    const int d = std::min(depth(), o.depth());
    DuJet r(d);
    for (int k = 0; k <= d; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) acc += binom(k, i) * c_[i] * o.c_[k - i];
        r.c_[k] = acc;
    }
    return r;
}

DuJet DuJet::operator*(double s) const {
    DuJet r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

DuJet DuJet::operator+(double s) const {
    DuJet r = *this;
    r.c_[0] += s;
    return r;
}

DuJet DuJet::reciprocal() const {
    if (std::fabs(c_[0]) <= 1e-300)
        throw singular_evaluation("DuJet::reciprocal: value part is zero");
    const int d = depth();
    DuJet r(d);
    r.c_[0] = 1.0 / c_[0];
    // solve (a * r)[k] = 0 for k >= 1
    for (int k = 1; k <= d; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += binom(k, i) * c_[i] * r.c_[k - i];
        r.c_[k] = -acc / c_[0];
    }
    return r;
}

DuJet DuJet::pow(int k) const {
    DuJet acc(depth(), 1.0);
    DuJet base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

} // namespace chaoslab
