#pragma once

#include "chaoslab/jet.hpp"

#include <memory>
#include <string>
#include <vector>

namespace chaoslab {

// Immutable expression over coordinates X_1..X_N: constants, coordinates,
// +, -, *, /, integer powers. Shared subtrees are cheap to copy.
class Functional {
public:
    Functional() = default;

    static Functional constant(double v);
    static Functional coordinate(int index); // zero-based

    friend Functional operator+(const Functional& a, const Functional& b);
    friend Functional operator-(const Functional& a, const Functional& b);
    friend Functional operator*(const Functional& a, const Functional& b);
    friend Functional operator/(const Functional& a, const Functional& b);
    Functional pow(int k) const; // k >= 0
    friend Functional operator+(const Functional& a, double s) { return a + constant(s); }
    friend Functional operator-(const Functional& a, double s) { return a - constant(s); }
    friend Functional operator*(const Functional& a, double s) { return a * constant(s); }
    friend Functional operator*(double s, const Functional& a) { return constant(s) * a; }
    friend Functional operator-(const Functional& a);

    // smallest coordinate count covering every variable in the expression
    int min_dimension() const;
    bool is_polynomial() const;
    // total degree for polynomial expressions; throws otherwise
    int polynomial_degree() const;

    double eval(const std::vector<double>& point) const;
    // all mixed partials up to the given order; division by a jet whose value
    // part vanishes raises singular_evaluation
    Jet eval_jet(const std::vector<double>& point, int order) const;
    Jet eval_jet(const std::vector<double>& point, std::shared_ptr<const JetSpace> space) const;

    bool empty() const { return node_ == nullptr; }

    struct Node; // expression node, defined in the implementation

private:
    explicit Functional(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace chaoslab
