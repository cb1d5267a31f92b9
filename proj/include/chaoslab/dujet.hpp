#pragma once

#include <vector>

namespace chaoslab {

// Sequence (g, D g, D^2 g, ..., D^R g) of iterated values of a first-order
// derivation D applied to a scalar quantity. Products follow the binomial
// Leibniz convolution, so these compose exactly like one-dimensional jets.
class DuJet {
public:
    DuJet() = default;
    explicit DuJet(int depth, double value = 0.0) : c_(depth + 1, 0.0) { c_[0] = value; }
    static DuJet from_values(std::vector<double> values) {
        DuJet j;
        j.c_ = std::move(values);
        return j;
    }

    int depth() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }
    double deriv(int k) const { return c_[k]; }
    const std::vector<double>& values() const { return c_; }

    // D applied once: drop the head
    DuJet shifted() const {
        std::vector<double> v(c_.begin() + 1, c_.end());
        return from_values(std::move(v));
    }
    DuJet truncated(int depth) const {
        std::vector<double> v(c_.begin(), c_.begin() + depth + 1);
        return from_values(std::move(v));
    }

    DuJet operator-() const;
    DuJet operator+(const DuJet& o) const;
    DuJet operator-(const DuJet& o) const;
    DuJet operator*(const DuJet& o) const; // truncated to min depth
    DuJet operator*(double s) const;
    DuJet operator+(double s) const;
    DuJet reciprocal() const;
    DuJet operator/(const DuJet& o) const { return *this * o.reciprocal(); }
    DuJet pow(int k) const;

private:
    std::vector<double> c_;
};

} // namespace chaoslab
