#include "chaoslab/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaoslab {

struct Functional::Node {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow } kind;
    double value = 0.0;       // Const
    int var = -1;             // Var
    int exponent = 0;         // Pow
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {
using Node = Functional::Node;

std::shared_ptr<const Node> make_binary(Node::Kind k, std::shared_ptr<const Node> a,
                                        std::shared_ptr<const Node> b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

} // namespace

Functional Functional::constant(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->value = v;
    return Functional(n);
}

Functional Functional::coordinate(int index) {
    if (index < 0) throw std::invalid_argument("Functional::coordinate: negative index");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Var;
    n->var = index;
    return Functional(n);
}

Functional operator+(const Functional& a, const Functional& b) {
    return Functional(make_binary(Node::Kind::Add, a.node_, b.node_));
}
Functional operator-(const Functional& a, const Functional& b) {
    return Functional(make_binary(Node::Kind::Sub, a.node_, b.node_));
}
Functional operator*(const Functional& a, const Functional& b) {
    return Functional(make_binary(Node::Kind::Mul, a.node_, b.node_));
}
Functional operator/(const Functional& a, const Functional& b) {
    return Functional(make_binary(Node::Kind::Div, a.node_, b.node_));
}
Functional operator-(const Functional& a) {
    return Functional::constant(0.0) - a;
}

Functional Functional::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Functional::pow: negative exponent");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Pow;
    n->exponent = k;
    n->lhs = node_;
    return Functional(n);
}

namespace {

int min_dim_rec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Const: return 0;
        case Node::Kind::Var: return n.var + 1;
        case Node::Kind::Pow: return min_dim_rec(*n.lhs);
        default: return std::max(min_dim_rec(*n.lhs), min_dim_rec(*n.rhs));
    }
}

bool poly_rec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Const:
        case Node::Kind::Var: return true;
        case Node::Kind::Pow: return poly_rec(*n.lhs);
        case Node::Kind::Div: return false;
        default: return poly_rec(*n.lhs) && poly_rec(*n.rhs);
    }
}

int degree_rec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::Const: return 0;
        case Node::Kind::Var: return 1;
        case Node::Kind::Pow: return n.exponent * degree_rec(*n.lhs);
        case Node::Kind::Mul: return degree_rec(*n.lhs) + degree_rec(*n.rhs);
        case Node::Kind::Div: throw std::logic_error("polynomial_degree: expression has division");
        default: return std::max(degree_rec(*n.lhs), degree_rec(*n.rhs));
    }
}

double eval_rec(const Node& n, const std::vector<double>& x) {
    switch (n.kind) {
        case Node::Kind::Const: return n.value;
        case Node::Kind::Var:
            if (n.var >= static_cast<int>(x.size()))
                throw std::invalid_argument("Functional::eval: point dimension too small");
            return x[n.var];
        case Node::Kind::Add: return eval_rec(*n.lhs, x) + eval_rec(*n.rhs, x);
        case Node::Kind::Sub: return eval_rec(*n.lhs, x) - eval_rec(*n.rhs, x);
        case Node::Kind::Mul: return eval_rec(*n.lhs, x) * eval_rec(*n.rhs, x);
        case Node::Kind::Div: {
            const double d = eval_rec(*n.rhs, x);
            if (std::fabs(d) <= 1e-300) throw singular_evaluation("Functional::eval: division by zero");
            return eval_rec(*n.lhs, x) / d;
        }
        case Node::Kind::Pow: return std::pow(eval_rec(*n.lhs, x), n.exponent);
    }
    throw std::logic_error("unreachable");
}

Jet jet_rec(const Node& n, const std::vector<double>& x,
            const std::shared_ptr<const JetSpace>& sp) {
    switch (n.kind) {
        case Node::Kind::Const: return Jet::constant(sp, n.value);
        case Node::Kind::Var:
            if (n.var >= sp->dim())
                throw std::invalid_argument("Functional::eval_jet: point dimension too small");
            return Jet::coordinate(sp, n.var, x[n.var]);
        case Node::Kind::Add: return jet_rec(*n.lhs, x, sp) + jet_rec(*n.rhs, x, sp);
        case Node::Kind::Sub: return jet_rec(*n.lhs, x, sp) - jet_rec(*n.rhs, x, sp);
        case Node::Kind::Mul: return jet_rec(*n.lhs, x, sp).mul(jet_rec(*n.rhs, x, sp));
        case Node::Kind::Div: return jet_rec(*n.lhs, x, sp).mul(jet_rec(*n.rhs, x, sp).reciprocal());
        case Node::Kind::Pow: return jet_rec(*n.lhs, x, sp).pow(n.exponent);
    }
    throw std::logic_error("unreachable");
}

} // namespace

int Functional::min_dimension() const { return node_ ? min_dim_rec(*node_) : 0; }
bool Functional::is_polynomial() const { return node_ ? poly_rec(*node_) : true; }
int Functional::polynomial_degree() const {
    if (!node_) return 0;
    if (!is_polynomial()) throw std::logic_error("polynomial_degree: not a polynomial");
    return degree_rec(*node_);
}

double Functional::eval(const std::vector<double>& point) const {
    if (!node_) throw std::logic_error("Functional::eval: empty expression");
    return eval_rec(*node_, point);
}

Jet Functional::eval_jet(const std::vector<double>& point, int order) const {
    if (order > JetConfig::max_user_order)
        throw std::invalid_argument("Functional::eval_jet: order exceeds configured max");
    return eval_jet(point, JetSpace::get(static_cast<int>(point.size()), order));
}

Jet Functional::eval_jet(const std::vector<double>& point,
                         std::shared_ptr<const JetSpace> space) const {
    if (!node_) throw std::logic_error("Functional::eval_jet: empty expression");
    if (static_cast<int>(point.size()) != space->dim())
        throw std::invalid_argument("Functional::eval_jet: point/space dimension mismatch");
    return jet_rec(*node_, point, space);
}

} // namespace chaoslab
